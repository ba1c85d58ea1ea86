"""Graphs, edge colorings and monochromatic subgraph search.

Vertices are always the dense integers ``0..n-1``. Generators document their
vertex order because bandwidth depends on it (grids are row-major).
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

import numpy as np

from .errors import DegenerateError, OddCycleError

Edge = tuple[int, int]
#: pattern vertex -> host vertex
Embedding = dict[int, int]


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable undirected simple graph on ``0..n-1``."""

    __slots__ = ("n", "adj", "__dict__")

    def __init__(self, n: int, edges: Iterable[Edge] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        adj = [set() for _ in range(n)]
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.adj = tuple(frozenset(s) for s in adj)

    @classmethod
    def from_adjacency_matrix(cls, mat) -> "Graph":
        mat = np.asarray(mat, dtype=bool)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError("adjacency matrix must be square")
        if np.any(np.diag(mat)) or not np.array_equal(mat, mat.T):
            raise ValueError("adjacency matrix must be symmetric with empty diagonal")
        g = cls.__new__(cls)
        g.n = mat.shape[0]
        g.adj = tuple(frozenset(np.flatnonzero(row).tolist()) for row in mat)
        return g

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(sorted((u, v) for u in range(self.n) for v in self.adj[u] if u < v))

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by least vertex."""
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp, queue = [s], deque([s])
            while queue:
                u = queue.popleft()
                for w in self.adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def is_tree(self) -> bool:
        return self.n >= 1 and self.num_edges == self.n - 1 and self.is_connected()

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph relabelled to ``0..k-1`` plus the old labels."""
        old = sorted(set(vertices))
        index = {v: i for i, v in enumerate(old)}
        edges = [(index[u], index[v]) for u in old for v in self.adj[u] if v in index and u < v]
        return Graph(len(old), edges), old

    def relabel(self, perm: list[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return Graph(self.n, ((perm[u], perm[v]) for u, v in self.edges))

    def with_isolated(self, extra: int) -> "Graph":
        return Graph(self.n + extra, self.edges)

    def distances_from(self, s: int) -> list[int]:
        dist = [-1] * self.n
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in self.adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def path_between(self, s: int, t: int) -> list[int]:
        """A shortest path from ``s`` to ``t`` (the unique one in a tree)."""
        parent = {s: None}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if u == t:
                break
            for w in sorted(self.adj[u]):
                if w not in parent:
                    parent[w] = u
                    queue.append(w)
        if t not in parent:
            raise ValueError(f"no path between {s} and {t}")
        path = [t]
        while path[-1] != s:
            path.append(parent[path[-1]])
        return path[::-1]

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.num_edges})"


class EdgeColoring:
    """Total coloring of the edges of ``K_n`` with colors ``1..r``.

    Stored as a symmetric ``int8`` matrix with a zero diagonal.
    """

    __slots__ = ("n", "r", "matrix")

    def __init__(self, matrix, r: int):
        mat = np.array(matrix, dtype=np.int8)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError("coloring matrix must be square")
        n = mat.shape[0]
        if not np.array_equal(mat, mat.T):
            raise ValueError("coloring matrix must be symmetric")
        if np.any(np.diag(mat) != 0):
            raise ValueError("diagonal must be 0")
        off = mat[~np.eye(n, dtype=bool)]
        if off.size and (off.min() < 1 or off.max() > r):
            raise ValueError(f"every edge needs a color in 1..{r}")
        mat.setflags(write=False)
        self.n, self.r, self.matrix = n, r, mat

    @classmethod
    def from_function(cls, n: int, r: int, fn) -> "EdgeColoring":
        mat = np.zeros((n, n), dtype=np.int8)
        for u in range(n):
            for v in range(u + 1, n):
                mat[u, v] = mat[v, u] = fn(u, v)
        return cls(mat, r)

    @classmethod
    def monochromatic(cls, n: int, r: int, color: int = 1) -> "EdgeColoring":
        mat = np.full((n, n), color, dtype=np.int8)
        np.fill_diagonal(mat, 0)
        return cls(mat, r)

    @classmethod
    def random(cls, n: int, r: int, seed: int = 0) -> "EdgeColoring":
        rng = np.random.default_rng(seed)
        upper = np.triu(rng.integers(1, r + 1, size=(n, n), dtype=np.int8), 1)
        return cls(upper + upper.T, r)

    def color(self, u: int, v: int) -> int:
        if u == v:
            raise ValueError("no edge at a single vertex")
        return int(self.matrix[u, v])

    def color_class(self, s: int) -> Graph:
        return Graph.from_adjacency_matrix(self.matrix == s)

    def items(self):
        for u in range(self.n):
            for v in range(u + 1, self.n):
                yield (u, v), int(self.matrix[u, v])

    def __eq__(self, other):
        return (isinstance(other, EdgeColoring) and self.r == other.r
                and np.array_equal(self.matrix, other.matrix))

    def __repr__(self):
        return f"EdgeColoring(n={self.n}, r={self.r})"


@dataclass(frozen=True)
class VertexTwoColoring:
    """Vertex map into ``{1, 2}``; ``classes[v]`` is the class of ``v``."""

    classes: tuple[int, ...]

    def __post_init__(self):
        if any(c not in (1, 2) for c in self.classes):
            raise ValueError("classes must be 1 or 2")

    @property
    def counts(self) -> tuple[int, int]:
        c1 = sum(1 for c in self.classes if c == 1)
        return c1, len(self.classes) - c1

    @property
    def sizes(self) -> tuple[int, int]:
        """Class sizes ``(t1, t2)`` sorted so that ``t1 <= t2``."""
        return tuple(sorted(self.counts))

    def is_proper(self, g: Graph) -> bool:
        return all(self.classes[u] != self.classes[v] for u, v in g.edges)

    def swapped(self) -> "VertexTwoColoring":
        return VertexTwoColoring(tuple(3 - c for c in self.classes))

    def oriented(self) -> "VertexTwoColoring":
        """Relabelled copy with ``|class 1| <= |class 2|``."""
        c1, c2 = self.counts
        return self if c1 <= c2 else self.swapped()


# --------------------------------------------------------------------------
# generators


def make_path(n: int) -> Graph:
    if n < 1:
        raise DegenerateError("path needs n >= 1")
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def make_cycle(n: int) -> Graph:
    if n < 3:
        raise DegenerateError("cycle needs n >= 3")
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def make_complete(n: int) -> Graph:
    return Graph(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def make_star(leaves: int) -> Graph:
    """``K_{1,leaves}`` with center 0."""
    return Graph(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def make_grid(a: int, b: int) -> Graph:
    """Grid on ``[a] x [b]``; vertex ``(i, j)`` is ``i * b + j`` (row-major)."""
    if a < 1 or b < 1:
        raise DegenerateError("grid sides must be positive")
    edges = []
    for i in range(a):
        for j in range(b):
            v = i * b + j
            if j + 1 < b:
                edges.append((v, v + 1))
            if i + 1 < a:
                edges.append((v, v + b))
    return Graph(a * b, edges)


def make_perfect_matching(pairs: int) -> Graph:
    return Graph(2 * pairs, ((2 * i, 2 * i + 1) for i in range(pairs)))


def random_graph(n: int, p: float, seed: int = 0) -> Graph:
    rng = random.Random(seed)
    return Graph(n, ((u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p))


def random_tree(n: int, seed: int = 0) -> Graph:
    """Uniform labelled tree via a Pruefer sequence."""
    if n < 1:
        raise DegenerateError("tree needs n >= 1")
    if n <= 2:
        return make_path(n)
    rng = random.Random(seed)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [w for w in range(n) if degree[w] == 1]
    edges.append((u, v))
    return Graph(n, edges)


# --------------------------------------------------------------------------
# bipartition


def bipartition(g: Graph) -> VertexTwoColoring:
    """Proper 2-coloring; on each component the least vertex gets class 1.

    Raises :class:`OddCycleError` with an explicit odd cycle otherwise.
    Use ``.sizes`` for the sorted class sizes and ``.oriented()`` for the
    relabelled coloring with the smaller class first.
    """
    side = [0] * g.n
    parent = [-1] * g.n
    depth = [0] * g.n
    for s in range(g.n):
        if side[s]:
            continue
        side[s] = 1
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in sorted(g.adj[u]):
                if not side[w]:
                    side[w] = 3 - side[u]
                    parent[w], depth[w] = u, depth[u] + 1
                    queue.append(w)
                elif side[w] == side[u]:
                    raise OddCycleError(_odd_cycle(u, w, parent, depth))
    return VertexTwoColoring(tuple(side))


def _odd_cycle(u, w, parent, depth):
    left, right = [u], [w]
    while depth[left[-1]] > depth[right[-1]]:
        left.append(parent[left[-1]])
    while depth[right[-1]] > depth[left[-1]]:
        right.append(parent[right[-1]])
    while left[-1] != right[-1]:
        left.append(parent[left[-1]])
        right.append(parent[right[-1]])
    return left + right[-2::-1]


# --------------------------------------------------------------------------
# subgraph search


def _search_order(pattern: Graph) -> list[int]:
    """Connectivity-first order; isolated vertices go last."""
    comps = sorted(pattern.components(), key=lambda c: (-len(c), c[0]))
    order = []
    isolated = []
    for comp in comps:
        if len(comp) == 1:
            isolated.append(comp[0])
            continue
        placed = set()
        root = max(comp, key=lambda v: (pattern.degree(v), -v))
        order.append(root)
        placed.add(root)
        rest = set(comp) - placed
        while rest:
            nxt = max(rest, key=lambda v: (len(pattern.adj[v] & placed), pattern.degree(v), -v))
            order.append(nxt)
            placed.add(nxt)
            rest.remove(nxt)
    return order + isolated


def find_embedding(pattern: Graph, host: Graph) -> Optional[Embedding]:
    """Exhaustive backtracking search for a (not necessarily induced) copy.

    ``None`` is a certificate that no copy exists.
    """
    if pattern.n > host.n:
        return None
    if pattern.n == 0:
        return {}
    order = _search_order(pattern)
    if pattern.max_degree > host.max_degree:
        return None
    comp_size = {}
    for comp in host.components():
        for v in comp:
            comp_size[v] = len(comp)
    pcomp_size = {}
    for comp in pattern.components():
        for v in comp:
            pcomp_size[v] = len(comp)

    pos = {v: i for i, v in enumerate(order)}
    back = [[w for w in pattern.adj[v] if pos[w] < pos[v]] for v in order]
    deg = [pattern.degree(v) for v in order]
    host_all = [v for v in range(host.n)]
    image: dict[int, int] = {}
    used: set[int] = set()

    def candidates(i):
        v = order[i]
        nb = back[i]
        if nb:
            cand = set(host.adj[image[nb[0]]])
            for w in nb[1:]:
                cand &= host.adj[image[w]]
            cand -= used
            return sorted(c for c in cand if host.degree(c) >= deg[i])
        need = pcomp_size[v]
        return [c for c in host_all
                if c not in used and host.degree(c) >= deg[i] and comp_size[c] >= need]

    def extend(i):
        if i == len(order):
            return True
        v = order[i]
        for c in candidates(i):
            image[v] = c
            used.add(c)
            if extend(i + 1):
                return True
            used.discard(c)
            del image[v]
        return False

    if extend(0):
        return dict(sorted(image.items()))
    return None


def find_mono_copy(c: EdgeColoring, h: Graph, color: int) -> Optional[Embedding]:
    """Copy of ``h`` inside the color-``color`` graph of ``c``, or ``None``."""
    if h.n > c.n:
        return None
    return find_embedding(h, c.color_class(color))


def verify_embedding(host: Graph, pattern: Graph, e: Embedding) -> bool:
    """True iff ``e`` is an injective, edge-preserving map of all of ``pattern``."""
    if set(e) != set(range(pattern.n)):
        return False
    values = list(e.values())
    if len(set(values)) != len(values):
        return False
    if any(not (0 <= x < host.n) for x in values):
        return False
    return all(host.has_edge(e[u], e[v]) for u, v in pattern.edges)
