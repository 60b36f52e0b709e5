"""Order-k Steiner distance hypermatrices: construction, degenerate zeroing, I/O.

Entries are a dense int64 numpy array of shape (n,)*k in C (row-major) order.
Construction walks the C(n+k-1, k) distinct index multisets once, queries the
Steiner distance per multiset, and broadcasts the value to every permutation,
so the array is super-symmetric by construction.
"""

from __future__ import annotations

import json
import os
from itertools import combinations_with_replacement, permutations
from typing import Iterable

import numpy as np

from .errors import BudgetExceeded, MalformedInput, WrongShape
from .trees import Tree

DEFAULT_ENTRY_BUDGET = 10 ** 8
BUDGET_ENV_VAR = "STEINER_MEM_BUDGET"


def entry_budget() -> int:
    raw = os.environ.get(BUDGET_ENV_VAR)
    if raw is None:
        return DEFAULT_ENTRY_BUDGET
    try:
        value = int(raw)
    except ValueError as exc:
        raise MalformedInput(f"{BUDGET_ENV_VAR} must be an integer, got {raw!r}") from exc
    if value < 1:
        raise MalformedInput(f"{BUDGET_ENV_VAR} must be positive")
    return value


class Hypermatrix:
    """Immutable dense cubical hypermatrix of integers."""

    __slots__ = ("k", "n", "entries")

    def __init__(self, k: int, n: int, entries: np.ndarray):
        if k < 2:
            raise WrongShape("order must be >= 2")
        if n < 1:
            raise WrongShape("dimension must be >= 1")
        arr = np.ascontiguousarray(entries, dtype=np.int64)
        if arr.shape != (n,) * k:
            raise WrongShape(f"entries must have shape {(n,) * k}, got {arr.shape}")
        arr.flags.writeable = False
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "entries", arr)

    def __setattr__(self, *_):  # pragma: no cover - immutability guard
        raise AttributeError("Hypermatrix is immutable")

    def entry(self, index: Iterable[int]) -> int:
        """Entry at a 1-based index tuple."""
        idx = tuple(i - 1 for i in index)
        return int(self.entries[idx])

    def flat(self) -> list[int]:
        return [int(x) for x in self.entries.reshape(-1)]

    def __eq__(self, other):
        if isinstance(other, Hypermatrix):
            return (self.k == other.k and self.n == other.n
                    and bool(np.array_equal(self.entries, other.entries)))
        return NotImplemented

    def __repr__(self):
        return f"Hypermatrix(k={self.k}, n={self.n})"


def build_steiner(t: Tree, k: int, budget: int | None = None) -> Hypermatrix:
    """The order-k Steiner distance hypermatrix of a tree."""
    if k < 2:
        raise WrongShape("order must be >= 2")
    n = t.n
    limit = entry_budget() if budget is None else budget
    if n ** k > limit:
        raise BudgetExceeded(f"{n}^{k} entries exceed the budget of {limit}")
    arr = np.zeros((n,) * k, dtype=np.int64)
    for combo in combinations_with_replacement(range(1, n + 1), k):
        value = t.steiner(combo)
        if value:
            zero_based = tuple(v - 1 for v in combo)
            for perm in set(permutations(zero_based)):
                arr[perm] = value
    return Hypermatrix(k, n, arr)


def zero_degenerate(h: Hypermatrix) -> Hypermatrix:
    """Copy with every entry whose index tuple repeats a label set to 0."""
    idx = np.indices((h.n,) * h.k)
    repeated = np.zeros((h.n,) * h.k, dtype=bool)
    for a in range(h.k):
        for b in range(a + 1, h.k):
            repeated |= idx[a] == idx[b]
    arr = np.where(repeated, 0, h.entries)
    return Hypermatrix(h.k, h.n, arr)


def has_nonzero_degenerate(h: Hypermatrix) -> bool:
    idx = np.indices((h.n,) * h.k)
    repeated = np.zeros((h.n,) * h.k, dtype=bool)
    for a in range(h.k):
        for b in range(a + 1, h.k):
            repeated |= idx[a] == idx[b]
    return bool(np.any(h.entries[repeated] != 0))


# ---------------------------------------------------------------------------
# export / import
# ---------------------------------------------------------------------------

def export_json(h: Hypermatrix) -> str:
    return json.dumps({"k": h.k, "n": h.n, "entries": h.flat()})


def import_json(text: str) -> Hypermatrix:
    try:
        obj = json.loads(text)
        k, n, entries = int(obj["k"]), int(obj["n"]), obj["entries"]
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise MalformedInput(f"bad hypermatrix JSON: {exc}") from exc
    if len(entries) != n ** k:
        raise MalformedInput(f"expected {n ** k} entries, got {len(entries)}")
    arr = np.array([int(x) for x in entries], dtype=np.int64).reshape((n,) * k)
    return Hypermatrix(k, n, arr)


def export_text(h: Hypermatrix) -> str:
    lines = [f"{h.k} {h.n}"]
    lines.extend(str(x) for x in h.flat())
    return "\n".join(lines) + "\n"


def import_text(text: str) -> Hypermatrix:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise MalformedInput("empty hypermatrix document")
    head = lines[0].split()
    if len(head) != 2:
        raise MalformedInput(f"header must be 'k n', got {lines[0]!r}")
    try:
        k, n = int(head[0]), int(head[1])
        entries = [int(x) for x in lines[1:]]
    except ValueError as exc:
        raise MalformedInput(f"non-integer token: {exc}") from exc
    if len(entries) != n ** k:
        raise MalformedInput(f"expected {n ** k} entries, got {len(entries)}")
    arr = np.array(entries, dtype=np.int64).reshape((n,) * k)
    return Hypermatrix(k, n, arr)
