"""Bandwidth of vertex orderings, exact minimum bandwidth for small graphs,
a Cuthill-McKee style heuristic, and cutting an ordering into intervals."""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .errors import TooLargeError
from .graphs import Graph

DEFAULT_CAP = 16


@dataclass(frozen=True)
class Ordering:
    """``sequence[p]`` is the vertex at position ``p``."""

    sequence: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.sequence) != list(range(len(self.sequence))):
            raise ValueError("ordering must be a permutation of 0..n-1")

    @classmethod
    def identity(cls, n: int) -> "Ordering":
        return cls(tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.sequence)

    @property
    def position(self) -> tuple[int, ...]:
        pos = [0] * len(self.sequence)
        for p, v in enumerate(self.sequence):
            pos[v] = p
        return tuple(pos)

    def reversed(self) -> "Ordering":
        return Ordering(self.sequence[::-1])

    def extended(self, extra: int) -> "Ordering":
        """Append ``extra`` new vertices ``n..n+extra-1`` at the end."""
        n = len(self.sequence)
        return Ordering(self.sequence + tuple(range(n, n + extra)))


@dataclass(frozen=True)
class IntervalDecomposition:
    ordering: Ordering
    boundaries: tuple[int, ...]

    @property
    def lhat(self) -> int:
        return len(self.boundaries) - 1

    @property
    def intervals(self) -> tuple[tuple[int, ...], ...]:
        seq = self.ordering.sequence
        b = self.boundaries
        return tuple(seq[b[i]:b[i + 1]] for i in range(self.lhat))

    @property
    def sizes(self) -> tuple[int, ...]:
        b = self.boundaries
        return tuple(b[i + 1] - b[i] for i in range(self.lhat))


def bandwidth_of_ordering(g: Graph, o: Ordering) -> int:
    if o.n != g.n:
        raise ValueError("ordering size does not match graph")
    pos = o.position
    return max((abs(pos[u] - pos[v]) for u, v in g.edges), default=0)


def _cap_from_env(cap: int) -> int:
    override = os.environ.get("RAMSEY_FORGE_CAP")
    return int(override) if override else cap


def exact_bandwidth(g: Graph, cap: int = DEFAULT_CAP) -> tuple[int, Ordering]:
    """Minimum bandwidth and a witnessing ordering.

    Components are solved independently and concatenated. Each component is
    decided for increasing ``b`` by a left-to-right placement search that
    memoises failed (placed set, active window) states.
    """
    cap = _cap_from_env(cap)
    if g.n > cap:
        raise TooLargeError(f"exact bandwidth capped at n={cap}, got n={g.n}")
    best = 0
    sequence: list[int] = []
    for comp in g.components():
        if len(comp) == 1:
            sequence.extend(comp)
            continue
        sub, labels = g.induced(comp)
        b, order = _component_bandwidth(sub)
        best = max(best, b)
        sequence.extend(labels[v] for v in order)
    return best, Ordering(tuple(sequence))


def _component_bandwidth(g: Graph) -> tuple[int, list[int]]:
    upper_order = heuristic_ordering(g)
    upper = bandwidth_of_ordering(g, upper_order)
    diam = max(max(g.distances_from(v)) for v in range(g.n))
    lower = max((g.max_degree + 1) // 2, -(-(g.n - 1) // diam))
    for b in range(lower, upper):
        order = _decide(g, b)
        if order is not None:
            return b, order
    return upper, list(upper_order.sequence)


def _decide(g: Graph, b: int):
    n = g.n
    nbr = [0] * n
    for v in range(n):
        for w in g.adj[v]:
            nbr[v] |= 1 << w
    full = (1 << n) - 1
    failed: set = set()
    order: list[int] = []

    def feasible_window(window, placed, p):
        # vertex at position q needs its unplaced neighbours at positions <= q + b
        start = p - len(window) + 1
        demand = 0
        for k, v in enumerate(window):
            demand |= nbr[v] & ~placed
            if bin(demand).count("1") > start + k + b - p:
                return False
        return True

    def rec(placed, window):
        if placed == full:
            return True
        key = (placed, window)
        if key in failed:
            return False
        p = len(order)
        win_mask = 0
        for v in window:
            win_mask |= 1 << v
        urgent = None
        if len(window) == b and nbr[window[0]] & ~placed:
            urgent = nbr[window[0]] & ~placed
        for v in range(n):
            bit = 1 << v
            if placed & bit:
                continue
            if urgent is not None and not urgent & bit:
                continue
            if nbr[v] & placed & ~win_mask:
                continue
            new_placed = placed | bit
            new_window = (window + (v,))[-b:]
            if len(window) == b and nbr[window[0]] & ~new_placed:
                continue
            if not feasible_window(new_window, new_placed, p):
                continue
            order.append(v)
            if rec(new_placed, new_window):
                return True
            order.pop()
        failed.add(key)
        return False

    if rec(0, ()):
        return list(order)
    return None


def heuristic_ordering(g: Graph) -> Ordering:
    """Deterministic Cuthill-McKee ordering.

    Each component is traversed breadth-first from a lowest-degree root,
    visiting neighbours by increasing degree. Every lowest-degree root is
    tried and the narrowest result kept; the reversed ordering is taken only
    when it is strictly narrower.
    """
    if g.num_edges == 0:
        return Ordering.identity(g.n)
    sequence: list[int] = []
    for comp in g.components():
        if len(comp) == 1:
            sequence.extend(comp)
            continue
        min_deg = min(g.degree(v) for v in comp)
        roots = [v for v in comp if g.degree(v) == min_deg]
        best = None
        for root in roots:
            run = _cuthill_mckee(g, root)
            width = _run_width(g, run)
            if best is None or width < best[0]:
                best = (width, run)
        sequence.extend(best[1])
    o = Ordering(tuple(sequence))
    rev = o.reversed()
    if bandwidth_of_ordering(g, rev) < bandwidth_of_ordering(g, o):
        return rev
    return o


def _cuthill_mckee(g: Graph, root: int) -> list[int]:
    seen = {root}
    run = [root]
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in sorted(g.adj[u], key=lambda x: (g.degree(x), x)):
            if w not in seen:
                seen.add(w)
                run.append(w)
                queue.append(w)
    return run


def _run_width(g: Graph, run: Sequence[int]) -> int:
    pos = {v: i for i, v in enumerate(run)}
    return max((abs(pos[u] - pos[w]) for u in run for w in g.adj[u]), default=0)


def interval_partition(o: Ordering, lhat: int) -> IntervalDecomposition:
    """Cut ``o`` into ``lhat`` contiguous runs, smaller runs first."""
    n = o.n
    if not 1 <= lhat <= n:
        raise ValueError(f"need 1 <= lhat <= n, got lhat={lhat}, n={n}")
    q, rem = divmod(n, lhat)
    sizes = [q] * (lhat - rem) + [q + 1] * rem
    bounds = [0]
    for s in sizes:
        bounds.append(bounds[-1] + s)
    return IntervalDecomposition(o, tuple(bounds))
