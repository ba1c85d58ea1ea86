"""Shared hypothesis strategies."""

from hypothesis import strategies as st

from ramsey_forge.graphs import Graph, random_tree


@st.composite
def graphs(draw, min_n=1, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, edges)


@st.composite
def trees(draw, min_n=1, max_n=30):
    n = draw(st.integers(min_n, max_n))
    return random_tree(n, seed=draw(st.integers(0, 10_000)))


def permutations(n):
    return st.permutations(list(range(n)))
