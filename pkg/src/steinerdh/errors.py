"""Exception types shared across the package."""


class SteinerError(Exception):
    """Base class for all package-specific errors."""


class MalformedInput(SteinerError):
    """Input document could not be parsed at all."""


class NotATree(SteinerError):
    """Edge list parsed fine but does not describe a tree on 1..n."""


class EmptySet(SteinerError):
    """A Steiner distance query needs at least one vertex."""


class TooLarge(SteinerError):
    """Brute-force oracle refused: vertex count above its hard cap."""


class BudgetExceeded(SteinerError):
    """Hypermatrix construction would allocate more entries than allowed."""


class ConductorMismatch(SteinerError):
    """Cyclotomic operands live in fields with different moduli."""


class WrongShape(SteinerError):
    """Hypermatrix has the wrong order/dimension for the requested formula."""


class TooSmall(SteinerError):
    """Construction needs more vertices than the tree has."""


class EvenOrder(SteinerError):
    """Construction is only defined for odd hypermatrix order."""


class ZeroVector(SteinerError):
    """The zero vector can never serve as a nullvector certificate."""


class NotDegenerateZeroed(SteinerError):
    """Hypermatrix still carries a nonzero degenerate entry."""


class OrderTooLow(SteinerError):
    """Order-2 degenerate-zeroed matrices admit no unit nullvector."""
