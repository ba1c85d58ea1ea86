import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ramsey_forge.errors import IntractableError
from ramsey_forge.extremal import verify_free
from ramsey_forge.graphs import EdgeColoring, Graph, find_mono_copy, make_path, make_star
from ramsey_forge.oracle import (ExceedsCeiling, RamseyQuery, exact_ramsey, gg_formula, tree_lower_bounds,
                                 witness_coloring)
from strategies import graphs


def test_formula_values():
    assert [gg_formula(n) for n in (2, 4, 5)] == [2, 5, 6]
    with pytest.raises(ValueError):
        gg_formula(1)


def test_lower_bound_values():
    assert tree_lower_bounds(2, 2) == (5, 6)
    assert tree_lower_bounds(1, 2) == (3, 5)
    assert tree_lower_bounds(3, 3) == (8, 10)


def test_path_ramsey_numbers():
    q = RamseyQuery((make_path(4), make_path(4)))
    assert exact_ramsey(q) == 5
    w = witness_coloring(q, 4)
    assert w is not None and verify_free(w, make_path(4)).free
    assert witness_coloring(q, 5) is None
    assert exact_ramsey(RamseyQuery((make_path(3), make_path(3)))) == 3


def test_vacuous_witness():
    w = witness_coloring(RamseyQuery((make_path(2), make_path(2))), 1)
    assert w is not None and w.n == 1


def test_three_color_values():
    assert exact_ramsey(RamseyQuery((make_path(3),) * 3)) == 5
    assert exact_ramsey(RamseyQuery((make_star(3), make_star(3)))) == 6


def test_guard_and_ceiling(monkeypatch):
    q = RamseyQuery((make_path(5), make_path(5)))
    with pytest.raises(IntractableError):
        witness_coloring(q, 8)
    small = RamseyQuery((make_path(5), make_path(5)), n_max=4)
    assert exact_ramsey(small) == ExceedsCeiling(4)
    assert str(ExceedsCeiling(4)) == ">4"
    monkeypatch.setenv("RAMSEY_FORGE_CAP", "3")
    with pytest.raises(IntractableError):
        witness_coloring(q, 4)


def brute_avoider(targets, n):
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
    r = len(targets)
    for colors in itertools.product(range(1, r + 1), repeat=len(edges)):
        mat = np.zeros((n, n), dtype=np.int8)
        for (u, v), s in zip(edges, colors):
            mat[u, v] = mat[v, u] = s
        c = EdgeColoring(mat, r)
        if all(find_mono_copy(c, t, s + 1) is None for s, t in enumerate(targets)):
            return True
    return False


@settings(max_examples=40)
@given(graphs(min_n=2, max_n=4), graphs(min_n=2, max_n=4), st.integers(2, 5))
def test_search_agrees_with_brute_force(g1, g2, n):
    q = RamseyQuery((g1, g2))
    w = witness_coloring(q, n)
    assert (w is not None) == brute_avoider((g1, g2), n)
    if w is not None:
        assert find_mono_copy(w, g1, 1) is None and find_mono_copy(w, g2, 2) is None


@settings(max_examples=15)
@given(graphs(min_n=2, max_n=4), st.integers(2, 6))
def test_symmetry_breaking_does_not_change_existence(g, n):
    q = RamseyQuery((g, g))
    assert (witness_coloring(q, n) is None) == (witness_coloring(q, n, symmetry=False) is None)


def test_parallel_search_agrees():
    q = RamseyQuery((make_path(5), make_path(5)))
    assert witness_coloring(q, 5, jobs=2) == witness_coloring(q, 5, jobs=2)
    assert (witness_coloring(q, 5, jobs=2) is None) == (witness_coloring(q, 5) is None)
    assert witness_coloring(q, 6, jobs=2) is None


def test_query_validation():
    with pytest.raises(ValueError):
        RamseyQuery((make_path(3),))
    assert RamseyQuery((make_path(3), make_path(3))).identical
    assert not RamseyQuery((make_path(3), Graph(3, [(0, 1)]))).identical
