import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from ramsey_forge.errors import DegenerateError
from ramsey_forge.extremal import (three_color_construction, two_color_construction_A,
                                   two_color_construction_B, verify_free)
from ramsey_forge.graphs import EdgeColoring, Graph, bipartition, make_path, random_tree, verify_embedding
from ramsey_forge.oracle import tree_lower_bounds


def class_sizes(c):
    """Sizes of the color-1 cliques (components of color 1)."""
    return sorted(len(comp) for comp in c.color_class(1).components())


def test_construction_a_examples():
    c = two_color_construction_A(2, 2)
    assert c.n == 4 and class_sizes(c) == [1, 3]
    assert c.color_class(1).num_edges == 3 and c.color_class(2).num_edges == 3
    assert two_color_construction_A(1, 1).n == 1
    assert class_sizes(two_color_construction_A(2, 3)) == [1, 4]


def test_construction_b_examples():
    assert class_sizes(two_color_construction_B(3)) == [2, 2]
    b2 = two_color_construction_B(2)
    assert b2.n == 2 and b2.color(0, 1) == 2
    b4 = two_color_construction_B(4)
    assert b4.n == 6 and b4.color_class(2).num_edges == 9
    with pytest.raises(DegenerateError):
        two_color_construction_B(1)


def test_three_color_examples():
    c = three_color_construction(2, 3)
    assert c.n == 8
    # the special class sits first; classes 1..3 are pairs carrying their own color
    assert [c.color(2, 3), c.color(4, 5), c.color(6, 7)] == [1, 2, 3]
    assert c.color(0, 6) == 3 and c.color(2, 4) == 3 and c.color(4, 6) == 1
    assert three_color_construction(1, 2).n == 4
    assert three_color_construction(2, 2).n == 5


def test_verify_free_examples():
    assert verify_free(two_color_construction_A(2, 2), make_path(4)).free
    assert verify_free(three_color_construction(2, 3), make_path(5)).verdict == "free"
    cert = verify_free(EdgeColoring.monochromatic(5, 2), make_path(4))
    assert cert.verdict == "copy-found" and cert.witness_color == 1
    assert verify_embedding(EdgeColoring.monochromatic(5, 2).color_class(1), make_path(4), cert.witness)


@settings(max_examples=40)
@given(st.integers(2, 9), st.integers(0, 10_000))
def test_constructions_avoid_random_trees(n, seed):
    tree = random_tree(n, seed)
    t1, t2 = bipartition(tree).sizes
    two, three = tree_lower_bounds(t1, t2)
    a = two_color_construction_A(t1, t2)
    assert a.n == 2 * t1 + t2 - 2 and verify_free(a, tree).free
    if t2 >= 2:
        b = two_color_construction_B(t2)
        assert max(a.n, b.n) == two - 1 and verify_free(b, tree).free
        c3 = three_color_construction(t1, t2)
        assert c3.n == three - 1 and verify_free(c3, tree).free


def test_certificate_serializes():
    d = verify_free(two_color_construction_A(2, 2), make_path(4)).to_dict()
    assert d["verdict"] == "free" and d["witness"] is None


def test_constructions_avoid_every_nine_vertex_tree():
    for t in nx.nonisomorphic_trees(9):
        tree = Graph(9, list(t.edges()))
        t1, t2 = bipartition(tree).sizes
        assert verify_free(two_color_construction_A(t1, t2), tree).free
        assert verify_free(two_color_construction_B(t2), tree).free
        assert verify_free(three_color_construction(t1, t2), tree).free
