"""Exact scalar kernels: rationals, cyclotomic field elements, high-precision complex.

Rationals are ``fractions.Fraction`` (arbitrary precision, always in lowest
terms, positive denominator).  Cyclotomic numbers live in Q(zeta_m) and are
stored in the power basis 1, zeta, ..., zeta^(phi(m)-1) modulo the m-th
cyclotomic polynomial, so equality and ``is_zero`` are exact field-element
tests.  ``CFloat`` is a finite complex number with an mpmath mantissa of at
least 64 bits (default 128), used only on the numeric side of the package.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

import mpmath

from .errors import ConductorMismatch

Rat = Fraction

RatLike = Union[int, Fraction]


def euler_phi(m: int) -> int:
    """Euler totient of m >= 1."""
    if m < 1:
        raise ValueError("totient needs m >= 1")
    result = m
    p = 2
    mm = m
    while p * p <= mm:
        if mm % p == 0:
            while mm % p == 0:
                mm //= p
            result -= result // p
        p += 1
    if mm > 1:
        result -= result // mm
    return result


# ---------------------------------------------------------------------------
# integer polynomial helpers (ascending coefficient lists)
# ---------------------------------------------------------------------------

def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_divmod_monic(num: Sequence[int], den: Sequence[int]) -> tuple[list[int], list[int]]:
    """Divide by a monic integer polynomial; quotient and remainder are integral."""
    num = list(num)
    dd = len(den) - 1
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    quot = [0] * max(len(num) - dd, 0)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            quot[i - dd] = c
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
    rem = num[:dd]
    while rem and rem[-1] == 0:
        rem.pop()
    return quot, rem


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients of Phi_m, ascending order, monic, degree phi(m).

    Computed by dividing x^m - 1 by Phi_d for every proper divisor d of m;
    the recursion bottoms out at Phi_1 = x - 1.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if m == 1:
        return (-1, 1)
    num = [0] * (m + 1)
    num[0] = -1
    num[m] = 1
    for d in range(1, m):
        if m % d == 0:
            num, rem = _poly_divmod_monic(num, cyclotomic_polynomial(d))
            if rem:
                raise AssertionError(f"x^{m}-1 not divisible by Phi_{d}")
    assert len(num) - 1 == euler_phi(m)
    return tuple(num)


@lru_cache(maxsize=None)
def _reduction_table(m: int) -> tuple[tuple[int, ...], ...]:
    """x^j mod Phi_m for every j up to max(m - 1, 2*phi(m) - 2).

    Phi_m is monic integral, so the rows are integer vectors of length phi(m).
    Row j >= phi(m) is what a product/power reduction folds back into the basis.
    """
    phi = euler_phi(m)
    phim = cyclotomic_polynomial(m)
    top = max(m - 1, 2 * phi - 2)
    rows: list[tuple[int, ...]] = []
    current = [0] * phi
    if phi > 0:
        current[0] = 1
    for j in range(top + 1):
        rows.append(tuple(current))
        # multiply by x, fold the overflow coefficient through Phi_m
        overflow = current[phi - 1]
        current = [0] + current[:-1]
        if overflow:
            for i in range(phi):
                current[i] -= overflow * phim[i]
    return tuple(rows)


def _reduce_coeffs(m: int, coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    phi = euler_phi(m)
    table = _reduction_table(m)
    if len(coeffs) > len(table):
        # degrees beyond the cached table: long-divide by Phi_m directly
        phim = [Fraction(c) for c in cyclotomic_polynomial(m)]
        _, rem = _rpoly_divmod(list(coeffs), phim)
        rem += [Fraction(0)] * (phi - len(rem))
        return tuple(rem)
    out = list(coeffs[:phi]) + [Fraction(0)] * max(0, phi - len(coeffs))
    for j in range(phi, len(coeffs)):
        c = coeffs[j]
        if c:
            row = table[j]
            for i in range(phi):
                if row[i]:
                    out[i] += c * row[i]
    return tuple(out)


# ---------------------------------------------------------------------------
# rational polynomial xgcd, for field inversion
# ---------------------------------------------------------------------------

def _rpoly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _rpoly_divmod(num: list[Fraction], den: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    num = num[:]
    dd = len(den) - 1
    lead = den[-1]
    quot = [Fraction(0)] * max(len(num) - dd, 0)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i] / lead
        if c:
            quot[i - dd] = c
            for j in range(dd + 1):
                num[i - dd + j] -= c * den[j]
    return quot, _rpoly_trim(num[:dd])


def _rpoly_xgcd(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    """Return (g, s) with s*a = g mod b and g the (nonzero, constant here) gcd."""
    r0, r1 = a[:], b[:]
    s0, s1 = [Fraction(1)], []
    while _rpoly_trim(r1[:]):
        q, r = _rpoly_divmod(r0, r1)
        r0, r1 = r1, r
        prod = _rpoly_trim(_poly_mul_frac(q, s1)) if s1 else []
        s0, s1 = s1, _rpoly_sub(s0, prod)
    return _rpoly_trim(r0), s0


def _poly_mul_frac(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _rpoly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, v in enumerate(a):
        out[i] += v
    for i, v in enumerate(b):
        out[i] -= v
    return _rpoly_trim(out)


# ---------------------------------------------------------------------------
# CycNum
# ---------------------------------------------------------------------------

class CycNum:
    """An exact element of Q(zeta_m), in the power basis modulo Phi_m.

    Immutable.  Arithmetic between two CycNum values requires the same
    modulus m (raise ConductorMismatch otherwise); ints and Fractions coerce
    into any modulus.  Use :meth:`lift` to move into a larger field whose
    modulus is a multiple of m.
    """

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs: Iterable[RatLike]):
        if m < 1:
            raise ValueError("modulus must be >= 1")
        object.__setattr__(self, "m", m)
        raw = [Fraction(c) for c in coeffs]
        phi = euler_phi(m)
        if len(raw) > phi:
            reduced = _reduce_coeffs(m, raw)
        else:
            reduced = tuple(raw) + (Fraction(0),) * (phi - len(raw))
        object.__setattr__(self, "coeffs", reduced)

    def __setattr__(self, *_):  # pragma: no cover - immutability guard
        raise AttributeError("CycNum is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, m: int = 1) -> "CycNum":
        return cls(m, [])

    @classmethod
    def one(cls, m: int = 1) -> "CycNum":
        return cls(m, [1])

    @classmethod
    def from_rational(cls, value: RatLike, m: int = 1) -> "CycNum":
        return cls(m, [Fraction(value)])

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coeffs[0]

    # -- coercion ----------------------------------------------------------

    def _coerce(self, other) -> "CycNum":
        if isinstance(other, CycNum):
            if other.m != self.m:
                raise ConductorMismatch(
                    f"cannot mix Q(zeta_{self.m}) with Q(zeta_{other.m}); lift first"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return CycNum.from_rational(other, self.m)
        return NotImplemented  # type: ignore[return-value]

    def lift(self, big_m: int) -> "CycNum":
        """Re-express this element inside Q(zeta_{big_m}) where m | big_m."""
        if big_m % self.m != 0:
            raise ConductorMismatch(f"{self.m} does not divide {big_m}")
        if big_m == self.m:
            return self
        step = big_m // self.m
        acc = CycNum.zero(big_m)
        for j, c in enumerate(self.coeffs):
            if c:
                acc = acc + root_of_unity(big_m, j * step) * c
        return acc

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return CycNum(self.m, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.m, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return CycNum(self.m, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        phi = len(self.coeffs)
        conv = [Fraction(0)] * (2 * phi - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        conv[i + j] += a * b
        return CycNum(self.m, conv)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "CycNum":
        if e < 0:
            return (self ** (-e)).inverse()
        result = CycNum.one(self.m)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "CycNum":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        a = _rpoly_trim([c for c in self.coeffs])
        phim = [Fraction(c) for c in cyclotomic_polynomial(self.m)]
        g, s = _rpoly_xgcd(a, phim)
        if len(g) != 1:
            raise AssertionError("cyclotomic polynomial is irreducible; gcd must be constant")
        inv = [c / g[0] for c in s]
        return CycNum(self.m, inv)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    # -- equality / hashing -------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if isinstance(other, CycNum):
            if other.m == self.m:
                return self.coeffs == other.coeffs
            if self.is_rational() and other.is_rational():
                return self.coeffs[0] == other.coeffs[0]
            return NotImplemented
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.m, self.coeffs))

    # -- embedding ----------------------------------------------------------

    def embed(self, precision_bits: int = 128) -> "CFloat":
        """Numeric value under zeta_m -> exp(2*pi*i/m)."""
        if precision_bits < 53:
            raise ValueError("need at least 53 mantissa bits")
        with mpmath.workprec(precision_bits + 16):
            total = mpmath.mpc(0)
            for j, c in enumerate(self.coeffs):
                if c:
                    w = mpmath.expjpi(mpmath.mpf(2 * j) / self.m)
                    total += mpmath.mpf(c.numerator) / c.denominator * w
        return CFloat(total.real, total.imag, prec=precision_bits)

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "coeffs": [[str(c.numerator), str(c.denominator)] for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CycNum":
        return cls(int(obj["m"]), [Fraction(int(n), int(d)) for n, d in obj["coeffs"]])

    def __repr__(self):
        return f"CycNum(m={self.m}, {list(self.coeffs)!r})"

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if j == 0:
                parts.append(str(c))
            elif j == 1:
                parts.append(f"{c}*z{self.m}")
            else:
                parts.append(f"{c}*z{self.m}^{j}")
        return " + ".join(parts)


def root_of_unity(m: int, power: int = 1) -> CycNum:
    """zeta_m^power, reduced into the power basis of Q(zeta_m)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    j = power % m
    row = _reduction_table(m)[j]
    return CycNum(m, row)


def cyc_pow(x: CycNum, e: int) -> CycNum:
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    return x ** e


def cyc_embed(x: CycNum, precision_bits: int = 128) -> "CFloat":
    return x.embed(precision_bits)


def unify_conductor(values: Sequence) -> tuple[list[CycNum], int]:
    """Lift a mixed list of CycNum/int/Fraction into one common field.

    The common modulus is the lcm of the CycNum moduli present (1 if none).
    """
    m = 1
    for v in values:
        if isinstance(v, CycNum):
            m = math.lcm(m, v.m)
    out = []
    for v in values:
        if isinstance(v, CycNum):
            out.append(v.lift(m))
        elif isinstance(v, (int, Fraction)):
            out.append(CycNum.from_rational(v, m))
        else:
            raise TypeError(f"cannot place {type(v).__name__} in a cyclotomic field")
    return out, m


# ---------------------------------------------------------------------------
# CFloat
# ---------------------------------------------------------------------------

class CFloat:
    """Finite complex number with an mpmath mantissa of >= 64 bits.

    Any operation producing a NaN or infinity raises immediately, so
    non-finite values never escape.  Default precision is 128 bits.
    """

    __slots__ = ("real", "imag", "prec")

    DEFAULT_PREC = 128

    def __init__(self, real=0, imag=0, prec: int = DEFAULT_PREC):
        if prec < 64:
            raise ValueError("CFloat needs a mantissa of at least 64 bits")
        with mpmath.workprec(prec):
            re = real if isinstance(real, mpmath.mpf) else mpmath.mpf(mpmath.mpmathify(real))
            im = imag if isinstance(imag, mpmath.mpf) else mpmath.mpf(mpmath.mpmathify(imag))
        if not (mpmath.isfinite(re) and mpmath.isfinite(im)):
            raise ValueError("CFloat must be finite")
        object.__setattr__(self, "real", re)
        object.__setattr__(self, "imag", im)
        object.__setattr__(self, "prec", prec)

    def __setattr__(self, *_):  # pragma: no cover - immutability guard
        raise AttributeError("CFloat is immutable")

    @classmethod
    def from_mpc(cls, z, prec: int = DEFAULT_PREC) -> "CFloat":
        return cls(mpmath.mpf(z.real), mpmath.mpf(z.imag), prec=prec)

    def to_mpc(self):
        return mpmath.mpc(self.real, self.imag)

    def _binary(self, other, op):
        prec = self.prec
        if isinstance(other, CFloat):
            prec = max(prec, other.prec)
            oz = other.to_mpc()
        elif isinstance(other, (int, float, Fraction, mpmath.mpf, mpmath.mpc)):
            oz = mpmath.mpmathify(other)
        else:
            return NotImplemented
        with mpmath.workprec(prec):
            return CFloat.from_mpc(op(self.to_mpc(), oz), prec=prec)

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binary(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binary(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binary(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        return self._binary(other, lambda a, b: b / a)

    def __neg__(self):
        return CFloat(-self.real, -self.imag, prec=self.prec)

    def abs_value(self) -> mpmath.mpf:
        with mpmath.workprec(self.prec):
            return mpmath.hypot(self.real, self.imag)

    def __abs__(self):
        return self.abs_value()

    def __eq__(self, other):
        if isinstance(other, CFloat):
            return self.real == other.real and self.imag == other.imag
        return NotImplemented

    def __repr__(self):
        return f"CFloat({self.real!r}, {self.imag!r}, prec={self.prec})"

    def to_json(self) -> list[str]:
        return [mpmath.nstr(self.real, 40), mpmath.nstr(self.imag, 40)]
