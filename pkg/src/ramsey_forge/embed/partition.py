"""Cutting a bandwidth-ordered graph into clusters that follow a tree.

Intervals of the ordering are permuted into balanced blocks, one block per
matching edge ``x_i y_i``; block ``i``'s kernels go to ``X_i``/``Y_i`` by
vertex class. Where consecutive intervals sit in different blocks, the tail
of the earlier interval is cut into pieces that walk along the tree path
between the two matching edges, so every edge of ``H`` lands on a tree edge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from ..balance import BalanceProfile, BalancedPermutation, balanced_permutation, check_window_bounds
from ..bandwidth import IntervalDecomposition, Ordering, interval_partition
from ..errors import LinkOverflowError, NoCandidateError, ParityViolationError
from ..graphs import Graph, VertexTwoColoring
from ..reduced import TreeWithMatching
from ..regularity import ClusterPartition


@dataclass(frozen=True)
class Link:
    """Tail of interval ``interval`` bridging block ``r`` to block ``s``."""

    interval: int
    r: int
    s: int
    #: tree vertices ``u_0, u_1, .., u_{t+1}``
    walk: tuple[int, ...]
    pieces: tuple[tuple[int, ...], ...]

    @property
    def internal_length(self) -> int:
        return len(self.walk) - 2


def link_walk(twm: TreeWithMatching, r: int, s: int) -> tuple[int, ...]:
    """``u_0 .. u_{t+1}``: the tree path from ``x_r`` to ``x_s`` with the
    matching edges at both ends stripped down to one endpoint each."""
    path = twm.tree.path_between(twm.xs[r], twm.xs[s])
    start = 2 if len(path) > 2 and path[1] == twm.ys[r] else 1
    end = len(path) - 2 if len(path) > 2 and path[-2] == twm.ys[s] else len(path) - 1
    return tuple(path[start - 1:end + 1])


def max_walk_pieces(twm: TreeWithMatching) -> int:
    """Most pieces any block transition can need."""
    best = 0
    for r in range(twm.ell):
        for s in range(twm.ell):
            if r != s:
                best = max(best, len(link_walk(twm, r, s)) - 1)
    return best


@dataclass
class HPartition:
    h: Graph
    n: int
    padding: int
    ordering: Ordering
    chi: VertexTwoColoring
    lhat: int
    piece_size: int
    decomposition: IntervalDecomposition
    profile: BalanceProfile
    permutation: BalancedPermutation
    blocks: tuple[tuple[int, ...], ...]
    links: dict[int, Link]
    kernels: tuple[tuple[int, ...], ...]
    #: H vertex -> tree vertex
    assignment: tuple[int, ...]
    clusters: dict[int, tuple[int, ...]]
    U: dict[int, frozenset]
    Uprime: dict[int, frozenset]
    xi: float
    dmin: Optional[int] = None
    ledger: dict = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    @property
    def sigma(self) -> tuple[int, ...]:
        return self.permutation.sigma

    def to_dict(self, twm: Optional[TreeWithMatching] = None):
        def name(v):
            return twm.label(v) if twm is not None else str(v)

        return {
            "n": self.n, "padding": self.padding, "lhat": self.lhat,
            "piece_size": self.piece_size, "xi": self.xi,
            "sigma": list(self.sigma),
            "blocks": [list(b) for b in self.blocks],
            "links": [{"interval": l.interval, "from_block": l.r, "to_block": l.s,
                       "walk": [name(v) for v in l.walk], "pieces": len(l.pieces)}
                      for l in self.links.values()],
            "cluster_sizes": {name(v): len(c) for v, c in sorted(self.clusters.items())},
            "U_sizes": {name(v): len(u) for v, u in sorted(self.U.items())},
            "Uprime_sizes": {name(v): len(u) for v, u in sorted(self.Uprime.items())},
            "dmin": self.dmin,
            "ledger": self.ledger,
            "warnings": self.warnings,
        }


def _diffs(profile: BalanceProfile, sigma) -> tuple[int, ...]:
    out, lead = [], 0
    for r in sigma:
        lead += profile.per_interval[r][0] - profile.per_interval[r][1]
        out.append(abs(lead))
    return tuple(out)


def _pad_coloring(chi: VertexTwoColoring, extra: int) -> VertexTwoColoring:
    # padding vertices join whichever class is currently smaller
    classes = list(chi.classes)
    c1, c2 = chi.counts
    for _ in range(extra):
        if c1 <= c2:
            classes.append(1)
            c1 += 1
        else:
            classes.append(2)
            c2 += 1
    return VertexTwoColoring(tuple(classes))


def build_h_partition(h: Graph, ordering: Ordering, chi: VertexTwoColoring, twm: TreeWithMatching,
                      lhat: int, piece_size: int, padding: int = 0, beta=None, xi: float = 1.0,
                      dmin: Optional[int] = None) -> HPartition:
    """Route every vertex of ``h`` to a tree vertex of ``twm``.

    ``padding`` isolated vertices are appended to ``h``, the ordering and
    ``chi`` first. ``piece_size`` must be at least the bandwidth of the
    ordering. Raises :class:`LinkOverflowError` when an interval cannot hold
    its link pieces plus a kernel of at least one piece, and
    :class:`ParityViolationError` if an edge ends up inside a cluster or
    between clusters that are not tree-adjacent.
    """
    if not chi.is_proper(h):
        raise ValueError("vertex coloring is not proper")
    ell = twm.ell
    if ell < 1 or lhat % ell:
        raise ValueError("lhat must be a positive multiple of the matching size")
    n = h.n
    hp_graph = h.with_isolated(padding) if padding else h
    order = ordering.extended(padding) if padding else ordering
    chi = _pad_coloring(chi, padding)
    total = n + padding
    if total % lhat:
        raise ValueError("lhat must divide n + padding")
    decomp = interval_partition(order, lhat)
    profile = BalanceProfile.from_intervals(decomp, chi)
    beta_value = beta if beta is not None else Fraction(2, lhat)
    try:
        perm = balanced_permutation(profile, beta_value)
    except NoCandidateError as exc:
        # routing stays valid in any order; the size ledger reports the imbalance
        identity = tuple(range(lhat))
        perm = BalancedPermutation(identity, _diffs(profile, identity),
                                   (f"balancing failed, identity order used: {exc}",))
    per_block = lhat // ell
    blocks = tuple(tuple(perm.sigma[i * per_block:(i + 1) * per_block]) for i in range(ell))
    block_of = {}
    for b, members in enumerate(blocks):
        for interval in members:
            block_of[interval] = b

    intervals = decomp.intervals
    assignment = [-1] * total
    links: dict[int, Link] = {}
    kernels = []
    for i, interval in enumerate(intervals):
        r = block_of[i]
        kernel = interval
        if i + 1 < lhat and block_of[i + 1] != r:
            s = block_of[i + 1]
            walk = link_walk(twm, r, s)
            count = len(walk) - 1
            if (count + 1) * piece_size > len(interval):
                raise LinkOverflowError(
                    f"interval {i} has {len(interval)} vertices but its link needs {count} pieces "
                    f"of {piece_size} plus a kernel of {piece_size}")
            cut = len(interval) - count * piece_size
            kernel = interval[:cut]
            pieces = tuple(interval[cut + j * piece_size: cut + (j + 1) * piece_size] for j in range(count))
            for j, piece in enumerate(pieces):
                a, b = walk[j], walk[j + 1]
                x_side, y_side = (a, b) if twm.classes[a] == 1 else (b, a)
                for w in piece:
                    assignment[w] = x_side if chi.classes[w] == 1 else y_side
            links[i] = Link(i, r, s, walk, pieces)
        kernels.append(tuple(kernel))
        for w in kernel:
            assignment[w] = twm.xs[r] if chi.classes[w] == 1 else twm.ys[r]

    clusters: dict[int, list[int]] = {v: [] for v in range(twm.tree.n)}
    for w, v in enumerate(assignment):
        clusters[v].append(w)
    for u, w in hp_graph.edges:
        cu, cw = assignment[u], assignment[w]
        if cu == cw:
            raise ParityViolationError(f"edge ({u}, {w}) lies inside cluster {twm.label(cu)}")
        if not twm.tree.has_edge(cu, cw):
            raise ParityViolationError(
                f"edge ({u}, {w}) joins {twm.label(cu)} and {twm.label(cw)}, not a tree edge")

    matched = {frozenset(e) for e in twm.matching_edges}
    U: dict[int, set] = {v: set() for v in clusters}
    for u, w in hp_graph.edges:
        cu, cw = assignment[u], assignment[w]
        if frozenset((cu, cw)) not in matched:
            U[cu].add(u)
            U[cw].add(w)
    all_u = set().union(*U.values()) if U else set()
    Uprime: dict[int, set] = {v: set() for v in clusters}
    for w in all_u:
        for x in hp_graph.adj[w]:
            if x not in all_u:
                Uprime[assignment[x]].add(x)

    hp = HPartition(
        h=hp_graph, n=n, padding=padding, ordering=order, chi=chi, lhat=lhat,
        piece_size=piece_size, decomposition=decomp, profile=profile, permutation=perm,
        blocks=blocks, links=links, kernels=tuple(kernels), assignment=tuple(assignment),
        clusters={v: tuple(c) for v, c in clusters.items()},
        U={v: frozenset(s) for v, s in U.items()},
        Uprime={v: frozenset(s) for v, s in Uprime.items()},
        xi=xi, dmin=dmin, warnings=list(perm.warnings))
    hp.ledger = _size_ledger(hp, twm)
    return hp


def _size_ledger(hp: HPartition, twm: TreeWithMatching) -> dict:
    """Cluster sizes against their structural bounds, plus block balance."""
    total = hp.n + hp.padding
    ell = twm.ell
    pieces_cap = 2 * hp.lhat * hp.piece_size
    xy_bound = (1 + hp.xi) * total / (2 * ell) + pieces_cap
    xy = [len(hp.clusters[v]) for v in twm.xs + twm.ys]
    z = [len(hp.clusters[v]) for v in twm.zs]
    window = check_window_bounds(hp.permutation, hp.profile, hp.xi)
    block_margins = []
    for members in hp.blocks:
        c1 = sum(hp.profile.per_interval[i][0] for i in members)
        c2 = sum(hp.profile.per_interval[i][1] for i in members)
        block_margins.append(hp.xi * c2 - abs(c1 - c2))
    covered = sum(len(c) for c in hp.clusters.values())
    return {
        "covered": covered,
        "covered_ok": covered == total,
        "xy_bound": xy_bound,
        "xy_max": max(xy, default=0),
        "xy_ok": all(s <= xy_bound for s in xy),
        "z_bound": pieces_cap,
        "z_max": max(z, default=0),
        "z_ok": all(s <= pieces_cap for s in z),
        "block_balance_margins": block_margins,
        "block_balance_ok": all(m >= 0 for m in block_margins),
        "prefix_violations": len(window.prefix_violations),
        "window_violations": len(window.window_violations),
        "class_purity_ok": all(
            hp.chi.classes[w] == (1 if twm.classes[v] == 1 else 2)
            for v, members in hp.clusters.items() for w in members),
    }


@dataclass
class ConditionResult:
    name: str
    ok: bool
    index: Optional[int] = None
    margin: Optional[float] = None
    detail: str = ""

    def to_dict(self):
        return {"condition": self.name, "ok": self.ok, "index": self.index,
                "margin": self.margin, "detail": self.detail}


@dataclass
class CompatibilityReport:
    conditions: list[ConditionResult]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.conditions)

    def __getitem__(self, name: str) -> ConditionResult:
        return next(c for c in self.conditions if c.name == name)

    def to_dict(self):
        return {"ok": self.ok, "conditions": [c.to_dict() for c in self.conditions]}


def _worst(items):
    """(index, margin) of the smallest margin, or (None, None)."""
    if not items:
        return None, None
    return min(items, key=lambda t: t[1])


def check_compatibility(hp: HPartition, cp: ClusterPartition, eps, twm: TreeWithMatching,
                        sizes: Optional[dict[int, int]] = None) -> CompatibilityReport:
    """Conditions I-IV between the clusters of ``hp`` and host clusters.

    Tree vertex ``v`` corresponds to host cluster ``cp.clusters[twm.cluster_of[v]]``;
    ``sizes`` may override the host cluster sizes per tree vertex. Condition IV
    is checked on matching edges and, vacuously, on uncovered tree vertices.
    """
    eps = float(eps)
    host_size = {v: len(cp.clusters[twm.cluster_of[v]]) for v in range(twm.tree.n)}
    if sizes:
        host_size.update(sizes)
    bad_edges = [(u, w) for u, w in hp.h.edges
                 if not twm.tree.has_edge(hp.assignment[u], hp.assignment[w])]
    c1 = ConditionResult("I", not bad_edges, margin=-len(bad_edges),
                         detail=f"first bad edge {bad_edges[0]}" if bad_edges else "")
    if bad_edges:
        c1.index = hp.assignment[bad_edges[0][0]]

    def size_condition(name, values, bound_of):
        margins = [(v, bound_of(v) - values[v]) for v in sorted(values)]
        index, margin = _worst(margins)
        ok = all(m >= 0 for _, m in margins)
        return ConditionResult(name, ok, index if not ok or margin is not None else None, margin)

    c2 = size_condition("II", {v: len(c) for v, c in hp.clusters.items()}, lambda v: host_size[v])
    c3 = size_condition("III", {v: len(u) for v, u in hp.U.items()}, lambda v: eps * host_size[v])
    iv_bound = {}
    for x, y in twm.matching_edges:
        bound = eps * min(host_size[x], host_size[y])
        iv_bound[x] = iv_bound[y] = bound
    for z in twm.zs:
        iv_bound[z] = eps * host_size[z]
    c4 = size_condition("IV", {v: len(hp.Uprime[v]) for v in iv_bound}, lambda v: iv_bound[v])
    return CompatibilityReport([c1, c2, c3, c4])
