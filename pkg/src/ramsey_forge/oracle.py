"""Exact Ramsey numbers of tiny targets by exhaustive edge-coloring search.

The search colors the edges of ``K_n`` in order of their larger endpoint.
After each assignment it looks only for copies that use the newest edge,
so a branch dies the moment a monochromatic target copy is completed.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Optional, Sequence

import numpy as np

from .errors import IntractableError
from .graphs import EdgeColoring, Graph

#: largest host size searched without an override, per color count
GUARDS = {2: 7, 3: 6}


@dataclass(frozen=True)
class RamseyQuery:
    targets: tuple[Graph, ...]
    n_max: int = 12

    def __post_init__(self):
        if len(self.targets) not in (2, 3):
            raise ValueError("only 2 or 3 colors are supported")
        object.__setattr__(self, "targets", tuple(self.targets))

    @property
    def r(self) -> int:
        return len(self.targets)

    @property
    def identical(self) -> bool:
        first = self.targets[0]
        return all(t == first for t in self.targets[1:])


@dataclass(frozen=True)
class ExceedsCeiling:
    n_max: int

    def __str__(self):
        return f">{self.n_max}"


def gg_formula(n: int) -> int:
    """Two-color Ramsey number of the path on ``n`` vertices."""
    if n < 2:
        raise ValueError("need n >= 2")
    return (3 * n - 2) // 2


def tree_lower_bounds(t1: int, t2: int) -> tuple[int, int]:
    """Two- and three-color lower bounds for a tree with classes ``t1 <= t2``."""
    if not 1 <= t1 <= t2:
        raise ValueError("need 1 <= t1 <= t2")
    return max(2 * t1 + t2, 2 * t2) - 1, t1 + 3 * t2 - 2


def _guard(r: int, n: int) -> int:
    override = os.environ.get("RAMSEY_FORGE_CAP")
    return int(override) if override else GUARDS[r]


class _Pattern:
    """Search plans for finding a pattern copy through a given host edge."""

    def __init__(self, g: Graph):
        self.n = g.n
        self.edges = g.edges
        self.plans = []
        # one plan per orientation of each pattern edge
        for a, b in g.edges:
            for u, v in ((a, b), (b, a)):
                order = [u, v]
                placed = {u, v}
                while len(order) < g.n:
                    nxt = next((w for x in order for w in sorted(g.adj[x]) if w not in placed), None)
                    if nxt is None:
                        nxt = min(w for w in range(g.n) if w not in placed)
                    order.append(nxt)
                    placed.add(nxt)
                pos = {w: i for i, w in enumerate(order)}
                back = [tuple(pos[x] for x in g.adj[w] if pos[x] < i) for i, w in enumerate(order)]
                self.plans.append(back)

    def through(self, adj: list[int], n: int, u: int, v: int) -> bool:
        """Is there a copy in the host (bitmask adjacency) mapping some edge to ``uv``?"""
        full = (1 << n) - 1
        k = self.n
        for back in self.plans:
            img = [0] * k
            img[0], img[1] = u, v
            if self._extend(adj, full, back, img, 2, (1 << u) | (1 << v), k):
                return True
        return False

    def _extend(self, adj, full, back, img, i, used, k):
        if i == k:
            return True
        cand = full & ~used
        for j in back[i]:
            cand &= adj[img[j]]
        while cand:
            bit = cand & -cand
            cand ^= bit
            img[i] = bit.bit_length() - 1
            if self._extend(adj, full, back, img, i + 1, used | bit, k):
                return True
        return False


def _edge_order(n: int) -> list[tuple[int, int]]:
    return [(u, v) for v in range(1, n) for u in range(v)]


def _contains_trivially(q: RamseyQuery, n: int) -> bool:
    # an edgeless target sits in every coloring once the host is big enough
    return any(t.num_edges == 0 and t.n <= n for t in q.targets)


def _search(q: RamseyQuery, n: int, prefix: Sequence[int] = (), symmetry: bool = True):
    """First avoiding coloring of ``K_n`` extending ``prefix`` (as color list), or None."""
    if _contains_trivially(q, n):
        return None
    r = q.r
    patterns = [_Pattern(t) for t in q.targets]
    small = [t.n > n for t in q.targets]  # a target bigger than the host never appears
    edges = _edge_order(n)
    m = len(edges)
    adj = [[0] * n for _ in range(r)]
    colors = [0] * m
    fix_first = symmetry and q.identical

    def assign(i, s):
        u, v = edges[i]
        adj[s][u] |= 1 << v
        adj[s][v] |= 1 << u
        colors[i] = s
        return small[s] or not patterns[s].through(adj[s], n, u, v)

    def unassign(i, s):
        u, v = edges[i]
        adj[s][u] &= ~(1 << v)
        adj[s][v] &= ~(1 << u)

    for i, s in enumerate(prefix):
        if fix_first and i == 0 and s != 0:
            return None
        if not assign(i, s):
            return None

    def rec(i):
        if i == m:
            return True
        choices = (0,) if fix_first and i == 0 else range(r)
        for s in choices:
            if assign(i, s) and rec(i + 1):
                return True
            unassign(i, s)
        return False

    if not rec(len(prefix)):
        return None
    mat = np.zeros((n, n), dtype=np.int8)
    for (u, v), s in zip(edges, colors):
        mat[u, v] = mat[v, u] = s + 1
    return EdgeColoring(mat, r)


def _job(args):
    q, n, prefix, symmetry = args
    return _search(q, n, prefix, symmetry)


def witness_coloring(q: RamseyQuery, n: int, jobs: int = 1, symmetry: bool = True,
                     check_guard: bool = True) -> Optional[EdgeColoring]:
    """A coloring of ``K_n`` with no target copy in its color, or None."""
    if check_guard and n > _guard(q.r, n):
        raise IntractableError(f"{q.r}-color search on K_{n} exceeds the guard "
                               f"{_guard(q.r, n)} (set RAMSEY_FORGE_CAP to override)")
    if n <= 1:
        return None if _contains_trivially(q, n) else EdgeColoring(np.zeros((n, n), dtype=np.int8), q.r)
    if jobs <= 1:
        return _search(q, n, (), symmetry)
    m = len(_edge_order(n))
    depth = min(m, 1)
    while q.r ** depth < 4 * jobs and depth < m:
        depth += 1
    prefixes = list(product(range(q.r), repeat=depth))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        # results come back in prefix order, so the reduction is deterministic
        for found in pool.map(_job, [(q, n, p, symmetry) for p in prefixes]):
            if found is not None:
                return found
    return None


def exact_ramsey(q: RamseyQuery, jobs: int = 1, symmetry: bool = True):
    """Least ``n`` with no avoiding coloring of ``K_n``; ``ExceedsCeiling`` past ``n_max``."""
    for n in range(1, q.n_max + 1):
        if witness_coloring(q, n, jobs=jobs, symmetry=symmetry) is None:
            return n
    return ExceedsCeiling(q.n_max)
