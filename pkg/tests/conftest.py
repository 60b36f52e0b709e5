"""Shared fixtures: small named trees and seeded random corpora."""

from __future__ import annotations

import pytest

from steinerdh import Tree, path_tree, prufer_decode, random_tree, star_tree


@pytest.fixture
def k2() -> Tree:
    return prufer_decode(2, [])


@pytest.fixture
def path3() -> Tree:
    return path_tree(3)


@pytest.fixture
def star4() -> Tree:
    return star_tree(4)


def tree_corpus(count: int, n_lo: int, n_hi: int, seed0: int = 0) -> list[Tree]:
    """Deterministic corpus: vertex counts cycle through [n_lo, n_hi]."""
    out = []
    span = n_hi - n_lo + 1
    for i in range(count):
        out.append(random_tree(n_lo + i % span, seed0 + i))
    return out
