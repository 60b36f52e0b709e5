"""Hypermatrix construction, degenerate zeroing, and I/O round trips."""

from itertools import product

import numpy as np
import pytest

from steinerdh import (BudgetExceeded, MalformedInput, WrongShape,
                       build_steiner, export_json, export_text, import_json,
                       import_text, random_tree, steiner_distance_bruteforce,
                       zero_degenerate)
from steinerdh.hypermatrix import BUDGET_ENV_VAR, entry_budget


def test_build_examples(k2, path3):
    h = build_steiner(k2, 3)
    for idx in product((1, 2), repeat=3):
        expected = 0 if len(set(idx)) == 1 else 1
        assert h.entry(idx) == expected
    h2 = build_steiner(path3, 2)
    assert h2.flat() == [0, 1, 2, 1, 0, 1, 2, 1, 0]
    assert build_steiner(path3, 3).entry((1, 2, 3)) == 2


def test_build_rejects_low_order(path3):
    with pytest.raises(WrongShape):
        build_steiner(path3, 1)


def test_supersymmetry():
    rng = np.random.default_rng(5)
    for seed in range(4):
        t = random_tree(5, seed)
        h = build_steiner(t, 4)
        for _ in range(50):
            idx = tuple(rng.integers(1, 6, size=4))
            perm = tuple(idx[j] for j in rng.permutation(4))
            assert h.entry(idx) == h.entry(perm)


def test_entries_match_bruteforce():
    for seed in range(6):
        t = random_tree(5, seed + 20)
        for k in (3, 4):
            h = build_steiner(t, k)
            for idx in product(range(1, 6), repeat=k):
                if len(set(idx)) == 1:
                    assert h.entry(idx) == 0
                else:
                    assert h.entry(idx) == steiner_distance_bruteforce(t, idx)


def test_zero_degenerate(k2, path3):
    hz = zero_degenerate(build_steiner(k2, 3))
    assert hz.flat() == [0] * 8
    h2 = build_steiner(path3, 2)
    assert zero_degenerate(h2) == h2  # diagonal already zero
    hz3 = zero_degenerate(build_steiner(path3, 3))
    assert hz3.entry((1, 1, 2)) == 0
    assert hz3.entry((1, 2, 3)) == 2
    assert zero_degenerate(hz3) == hz3


def test_export_json_examples(k2, path3):
    import json
    h = build_steiner(k2, 2)
    assert json.loads(export_json(h))["entries"] == [0, 1, 1, 0]
    single = build_steiner(random_tree(1, 0), 3)
    assert json.loads(export_json(single))["entries"] == [0]
    text = export_text(build_steiner(path3, 2))
    lines = text.strip().splitlines()
    assert lines[0] == "2 3"
    assert [int(x) for x in lines[1:]] == [0, 1, 2, 1, 0, 1, 2, 1, 0]


def test_round_trips_bit_exact():
    for seed in range(3):
        t = random_tree(4, seed)
        for k in (2, 3, 4):
            h = build_steiner(t, k)
            assert import_json(export_json(h)) == h
            assert import_text(export_text(h)) == h


def test_import_rejects_garbage():
    with pytest.raises(MalformedInput):
        import_json("{not json")
    with pytest.raises(MalformedInput):
        import_json('{"k": 2, "n": 2, "entries": [1, 2, 3]}')
    with pytest.raises(MalformedInput):
        import_text("2 2\n1\n2\n3")
    with pytest.raises(MalformedInput):
        import_text("")


def test_budget(monkeypatch, path3):
    with pytest.raises(BudgetExceeded):
        build_steiner(path3, 3, budget=10)
    monkeypatch.setenv(BUDGET_ENV_VAR, "10")
    assert entry_budget() == 10
    with pytest.raises(BudgetExceeded):
        build_steiner(path3, 3)
    monkeypatch.setenv(BUDGET_ENV_VAR, "junk")
    with pytest.raises(MalformedInput):
        entry_budget()


def test_hypermatrix_is_immutable(path3):
    h = build_steiner(path3, 2)
    with pytest.raises(ValueError):
        h.entries[0, 0] = 5
    with pytest.raises(AttributeError):
        h.k = 4
