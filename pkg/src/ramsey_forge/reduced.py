"""Colored reduced graphs, connected monochromatic matchings and the
tree-with-matching labeling used to steer the embedding."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import networkx as nx
import numpy as np

from .errors import NoEdgesError, NotATreeError
from .graphs import EdgeColoring, Graph, bipartition
from .regularity import BipartitePair, ClusterPartition, _regularity

Pair = tuple[int, int]


def _key(i: int, j: int) -> Pair:
    return (i, j) if i < j else (j, i)


@dataclass
class ReducedGraph:
    """Cluster-level graph; ``color[(i, j)]`` is the majority cross color."""

    k: int
    r: int
    color: dict[Pair, int]
    densities: dict[Pair, tuple[Fraction, ...]] = field(default_factory=dict)
    stats: dict = field(default_factory=dict)

    @property
    def edges(self) -> list[Pair]:
        return sorted(self.color)

    def color_graph(self, s: int) -> Graph:
        return Graph(self.k, (e for e, c in self.color.items() if c == s))

    @classmethod
    def from_colored_edges(cls, k: int, r: int, colored: dict) -> "ReducedGraph":
        return cls(k, r, {_key(*e): int(c) for e, c in colored.items()})

    @classmethod
    def random_complete(cls, k: int, r: int = 3, seed: int = 0) -> "ReducedGraph":
        """Complete reduced graph with uniformly random edge colors."""
        rng = np.random.default_rng(seed)
        pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
        colors = rng.integers(1, r + 1, size=len(pairs))
        return cls(k, r, {p: int(c) for p, c in zip(pairs, colors)})


def cross_counts(c: EdgeColoring, vi: Sequence[int], vj: Sequence[int]) -> tuple[int, ...]:
    """Number of cross edges of each color ``1..r``."""
    block = c.matrix[np.ix_(list(vi), list(vj))]
    return tuple(int((block == s).sum()) for s in range(1, c.r + 1))


def majority_from_counts(counts: Sequence[int]) -> int:
    """Largest color index attaining the maximum count (colors are 1-based)."""
    best = max(counts)
    return max(s + 1 for s, x in enumerate(counts) if x == best)


def majority_color(c: EdgeColoring, vi: Sequence[int], vj: Sequence[int]) -> int:
    if not vi or not vj or set(vi) & set(vj):
        raise ValueError("clusters must be nonempty and disjoint")
    return majority_from_counts(cross_counts(c, vi, vj))


def build_reduced(cp: ClusterPartition, c: EdgeColoring, eps, method: str = "auto",
                  trials: int = 2_000, seed: int = 0) -> ReducedGraph:
    """Edge ``ij`` iff ``(V_i, V_j)`` is eps-regular in every color graph."""
    colors: dict[Pair, int] = {}
    dens: dict[Pair, tuple[Fraction, ...]] = {}
    stats: dict = {}
    for i in range(cp.k):
        for j in range(i + 1, cp.k):
            vi, vj = cp.clusters[i], cp.clusters[j]
            block = c.matrix[np.ix_(list(vi), list(vj))]
            per_color = []
            regular = True
            for s in range(1, c.r + 1):
                pair = BipartitePair(tuple(vi), tuple(vj), block == s)
                st = _regularity(pair, eps, method, trials, seed)
                per_color.append(st)
                regular = regular and st.regular
                if not regular:
                    break
            stats[(i, j)] = per_color
            counts = [int((block == s).sum()) for s in range(1, c.r + 1)]
            dens[(i, j)] = tuple(Fraction(x, len(vi) * len(vj)) for x in counts)
            if regular:
                colors[(i, j)] = majority_from_counts(counts)
    return ReducedGraph(cp.k, c.r, colors, dens, stats)


# --------------------------------------------------------------------------
# matchings


@dataclass(frozen=True)
class MonoMatching:
    color: int
    component: tuple[int, ...]
    matching: tuple[Pair, ...]

    @property
    def size(self) -> int:
        return len(self.matching)


def maximum_matching(vertices: Sequence[int], edges: Sequence[Pair]) -> list[Pair]:
    """Maximum-cardinality matching of a general graph (blossom algorithm)."""
    g = nx.Graph()
    g.add_nodes_from(vertices)
    g.add_edges_from(edges)
    return sorted(_key(u, v) for u, v in nx.max_weight_matching(g, maxcardinality=True))


def brute_force_matching_size(vertices: Sequence[int], edges: Sequence[Pair]) -> int:
    """Exhaustive maximum matching size; for cross-checking small components."""
    index = {v: i for i, v in enumerate(vertices)}
    nbr = [0] * len(vertices)
    for u, v in edges:
        nbr[index[u]] |= 1 << index[v]
        nbr[index[v]] |= 1 << index[u]
    memo: dict[int, int] = {}

    def best(free: int) -> int:
        if free in memo:
            return memo[free]
        if free == 0:
            return 0
        low = (free & -free).bit_length() - 1
        rest = free & ~(1 << low)
        out = best(rest)  # leave ``low`` unmatched
        cand = nbr[low] & rest
        while cand:
            bit = cand & -cand
            out = max(out, 1 + best(rest & ~bit))
            cand ^= bit
        memo[free] = out
        return out

    return best((1 << len(vertices)) - 1)


def max_connected_mono_matching(R: ReducedGraph) -> MonoMatching:
    """Largest matching lying inside one monochromatic component of ``R``.

    Ties prefer the lower color, then the component with the lower least
    vertex.
    """
    if not R.color:
        raise NoEdgesError("reduced graph has no edges")
    best: Optional[MonoMatching] = None
    for s in range(1, R.r + 1):
        g = R.color_graph(s)
        for comp in g.components():
            if len(comp) < 2:
                continue
            comp_set = set(comp)
            edges = [e for e in g.edges if e[0] in comp_set]
            m = maximum_matching(comp, edges)
            if best is None or len(m) > best.size:
                best = MonoMatching(s, tuple(comp), tuple(m))
    return best


def spanning_tree_with_matching(component: Sequence[int], edges: Sequence[Pair],
                                matching: Sequence[Pair]) -> Graph:
    """Spanning tree of the component containing every matching edge.

    Vertex ``i`` of the returned graph is ``component[i]``. Matching edges
    are taken first, the remaining vertices attached breadth-first.
    """
    index = {v: i for i, v in enumerate(component)}
    parent = list(range(len(component)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree: list[Pair] = []

    def take(u, v):
        a, b = find(u), find(v)
        if a == b:
            return False
        parent[a] = b
        tree.append(_key(u, v))
        return True

    for u, v in matching:
        if u not in index or v not in index:
            raise ValueError(f"matching edge ({u}, {v}) leaves the component")
        if not take(index[u], index[v]):
            raise ValueError("matching edges must be disjoint")
    local = Graph(len(component), ((index[u], index[v]) for u, v in edges))
    for u, v in matching:
        if not local.has_edge(index[u], index[v]):
            raise ValueError(f"matching edge ({u}, {v}) is not a component edge")
    # breadth-first from the least vertex, keeping edges that join new parts
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for u in frontier:
            for w in sorted(local.adj[u]):
                take(u, w)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    if len(tree) != len(component) - 1:
        raise ValueError("component is not connected")
    return Graph(len(component), tree)


@dataclass(frozen=True)
class TreeWithMatching:
    """Tree whose matched edges are ``x_i y_i`` with every ``x_i`` in class 1.

    ``xs[i]``, ``ys[i]`` are tree vertices; ``cluster_of[v]`` maps a tree
    vertex to its cluster index in the host partition.
    """

    tree: Graph
    xs: tuple[int, ...]
    ys: tuple[int, ...]
    zs: tuple[int, ...]
    classes: tuple[int, ...]
    color: Optional[int] = None
    cluster_of: tuple[int, ...] = ()

    @property
    def ell(self) -> int:
        return len(self.xs)

    @property
    def matching_edges(self) -> list[Pair]:
        return list(zip(self.xs, self.ys))

    def label(self, v: int) -> str:
        for name, seq in (("x", self.xs), ("y", self.ys), ("z", self.zs)):
            if v in seq:
                return f"{name}{seq.index(v) + 1}"
        raise KeyError(v)

    def cluster_path(self, u: int, v: int) -> list[int]:
        return [self.cluster_of[w] for w in self.tree.path_between(u, v)]


def even_distance_labeling(tree: Graph, matching: Sequence[Pair], color: Optional[int] = None,
                           cluster_of: Optional[Sequence[int]] = None) -> TreeWithMatching:
    """Label matched endpoints in the least vertex's class ``x_i``, partners ``y_i``.

    Every ``x`` lies in one class of the proper 2-coloring, so all ``x``-``x``
    tree distances are even. Matching edges are numbered by their ``x``.
    """
    if not tree.is_tree():
        raise NotATreeError("labeling needs a connected acyclic graph")
    chi = bipartition(tree).classes
    pairs = []
    covered = set()
    for u, v in matching:
        if not tree.has_edge(u, v):
            raise ValueError(f"matching edge ({u}, {v}) is not a tree edge")
        if u in covered or v in covered:
            raise ValueError("matching edges must be disjoint")
        covered |= {u, v}
        pairs.append((u, v) if chi[u] == 1 else (v, u))
    pairs.sort()
    zs = tuple(v for v in range(tree.n) if v not in covered)
    clusters = tuple(cluster_of) if cluster_of is not None else tuple(range(tree.n))
    return TreeWithMatching(tree, tuple(p[0] for p in pairs), tuple(p[1] for p in pairs), zs,
                            tuple(chi), color, clusters)


def tree_with_matching(R: ReducedGraph) -> TreeWithMatching:
    """Maximum connected monochromatic matching, grown to a labeled tree."""
    mm = max_connected_mono_matching(R)
    comp = set(mm.component)
    edges = [e for e, c in R.color.items() if c == mm.color and e[0] in comp]
    tree = spanning_tree_with_matching(mm.component, edges, mm.matching)
    index = {v: i for i, v in enumerate(mm.component)}
    local = [(index[u], index[v]) for u, v in mm.matching]
    return even_distance_labeling(tree, local, mm.color, mm.component)


def random_maximal_matching(g: Graph, rng) -> list[Pair]:
    """Greedy maximal matching over a random edge order."""
    edges = list(g.edges)
    rng.shuffle(edges)
    used: set = set()
    out = []
    for u, v in edges:
        if u not in used and v not in used:
            used |= {u, v}
            out.append((u, v))
    return sorted(out)
