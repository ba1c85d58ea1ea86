"""Densities, epsilon-regularity and super-regularity of bipartite pairs.

Two regularity checkers are provided. :func:`is_eps_regular_exact`
enumerates every qualifying pair of subsets. :func:`is_eps_regular_sampled`
samples ``X`` and completes it with the densest and sparsest ``Y`` of every
admissible size; it is one-sided (it can only certify irregularity) unless
the trial budget covers every qualifying ``X``, in which case it enumerates
them and its verdict is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np

from ._exact import as_fraction
from .errors import AlphaTooSmallError, EmptySideError, TooLargeError, TooManyRemovalsError
from .graphs import Graph

EXACT_CAP = 12


@dataclass(frozen=True, eq=False)
class BipartitePair:
    """Pair ``(A, B)`` with ``adj[i, j]`` true iff ``side_a[i] ~ side_b[j]``."""

    side_a: tuple[int, ...]
    side_b: tuple[int, ...]
    adj: np.ndarray

    def __post_init__(self):
        adj = np.asarray(self.adj, dtype=bool)
        if adj.shape != (len(self.side_a), len(self.side_b)):
            raise ValueError("adjacency shape must be |A| x |B|")
        if set(self.side_a) & set(self.side_b):
            raise ValueError("sides must be disjoint")
        adj.setflags(write=False)
        object.__setattr__(self, "adj", adj)

    @classmethod
    def from_matrix(cls, adj) -> "BipartitePair":
        adj = np.asarray(adj, dtype=bool)
        a, b = adj.shape
        return cls(tuple(range(a)), tuple(range(a, a + b)), adj)

    @classmethod
    def from_edges(cls, side_a: Sequence[int], side_b: Sequence[int], edges: Iterable[tuple[int, int]]) -> "BipartitePair":
        ia = {v: i for i, v in enumerate(side_a)}
        ib = {v: i for i, v in enumerate(side_b)}
        adj = np.zeros((len(side_a), len(side_b)), dtype=bool)
        for u, v in edges:
            if u in ia and v in ib:
                adj[ia[u], ib[v]] = True
            elif v in ia and u in ib:
                adj[ia[v], ib[u]] = True
            else:
                raise ValueError(f"edge ({u}, {v}) does not cross the pair")
        return cls(tuple(side_a), tuple(side_b), adj)

    @classmethod
    def from_host(cls, host, side_a: Sequence[int], side_b: Sequence[int]) -> "BipartitePair":
        """Pair induced by two vertex sets of a host adjacency matrix or Graph."""
        if isinstance(host, Graph):
            adj = np.array([[v in host.adj[u] for v in side_b] for u in side_a], dtype=bool)
            adj = adj.reshape(len(side_a), len(side_b))
        else:
            host = np.asarray(host)
            adj = host[np.ix_(list(side_a), list(side_b))].astype(bool)
        return cls(tuple(side_a), tuple(side_b), adj)

    @property
    def edges(self) -> list[tuple[int, int]]:
        ii, jj = np.nonzero(self.adj)
        return [(self.side_a[i], self.side_b[j]) for i, j in zip(ii.tolist(), jj.tolist())]

    @property
    def num_edges(self) -> int:
        return int(self.adj.sum())

    def degrees_a(self) -> np.ndarray:
        return self.adj.sum(axis=1)

    def degrees_b(self) -> np.ndarray:
        return self.adj.sum(axis=0)

    def induced(self, sub_a: Iterable[int], sub_b: Iterable[int]) -> "BipartitePair":
        """Sub-pair on vertex labels ``sub_a`` and ``sub_b`` (kept in side order)."""
        sa, sb = set(sub_a), set(sub_b)
        ia = [i for i, v in enumerate(self.side_a) if v in sa]
        ib = [j for j, v in enumerate(self.side_b) if v in sb]
        if len(ia) != len(sa) or len(ib) != len(sb):
            raise ValueError("subsets must lie inside the sides")
        return BipartitePair(tuple(self.side_a[i] for i in ia), tuple(self.side_b[j] for j in ib),
                             self.adj[np.ix_(ia, ib)])


@dataclass
class PairStats:
    density: Fraction
    epsilon: Fraction
    d: Optional[Fraction]
    regular: bool
    super_regular: Optional[bool] = None
    method: str = "exact"
    witness: Optional[tuple[tuple[int, ...], tuple[int, ...]]] = None
    witness_density: Optional[Fraction] = None
    trials: Optional[int] = None
    min_degree_ratio: Optional[Fraction] = None
    exhaustive: bool = False

    def to_dict(self):
        return {
            "method": self.method,
            "density": str(self.density),
            "epsilon": str(self.epsilon),
            "d": None if self.d is None else str(self.d),
            "regular": self.regular,
            "super_regular": self.super_regular,
            "trials": self.trials,
            "exhaustive": self.exhaustive,
            "min_degree_ratio": None if self.min_degree_ratio is None else str(self.min_degree_ratio),
            "witness": None if self.witness is None else {
                "X": list(self.witness[0]), "Y": list(self.witness[1]),
                "density": str(self.witness_density)},
        }


def density(p: BipartitePair, X: Optional[Iterable[int]] = None, Y: Optional[Iterable[int]] = None) -> Fraction:
    """``e(X, Y) / (|X| |Y|)`` exactly; defaults to the whole pair."""
    sub = p if X is None and Y is None else p.induced(p.side_a if X is None else X,
                                                       p.side_b if Y is None else Y)
    if not sub.side_a or not sub.side_b:
        raise EmptySideError("density of an empty side")
    return Fraction(sub.num_edges, len(sub.side_a) * len(sub.side_b))


def _min_size(eps: Fraction, side: int) -> int:
    # smallest integer strictly above eps * side
    return math.floor(eps * side) + 1


def _violations(e_sub, size_x, size_y, e_total, na, nb, eps):
    """Boolean mask of ``|e_sub/(x y) - e/(na nb)| >= eps`` in integer arithmetic."""
    p, q = eps.numerator, eps.denominator
    big = max(int(np.max(e_sub, initial=0)), 1) * na * nb * q
    dtype = np.int64 if big < 2**62 and p * na * nb * na * nb < 2**62 else object
    e_sub = np.asarray(e_sub, dtype=dtype)
    s = np.asarray(size_x, dtype=dtype) * np.asarray(size_y, dtype=dtype)
    lhs = np.abs(e_sub * (na * nb) - s * e_total) * q
    return lhs >= s * (p * na * nb)


def _subset_masks(k: int, min_size: int) -> np.ndarray:
    rows = [mask for mask in range(1 << k) if bin(mask).count("1") >= min_size]
    if not rows:
        return np.zeros((0, k), dtype=np.int64)
    arr = np.array(rows, dtype=np.int64)
    return ((arr[:, None] >> np.arange(k)) & 1).astype(np.int64)


def is_eps_regular_exact(p: BipartitePair, eps, cap: int = EXACT_CAP) -> PairStats:
    """Exact verdict by enumerating every X, Y with |X| > eps|A|, |Y| > eps|B|."""
    eps = as_fraction(eps)
    na, nb = len(p.side_a), len(p.side_b)
    if na > cap or nb > cap:
        raise TooLargeError(f"exact regularity capped at {cap} per side, got {na}x{nb}")
    if na == 0 or nb == 0:
        raise EmptySideError("pair has an empty side")
    e = p.num_edges
    stats = PairStats(density=Fraction(e, na * nb), epsilon=eps, d=None, regular=True, method="exact",
                      exhaustive=True)
    mx = _subset_masks(na, _min_size(eps, na))
    my = _subset_masks(nb, _min_size(eps, nb))
    if len(mx) == 0 or len(my) == 0:
        return stats
    adj = p.adj.astype(np.int64)
    sx = mx.sum(axis=1)
    sy = my.sum(axis=1)
    right = adj @ my.T  # |A| x numY
    chunk = max(1, (1 << 22) // max(1, len(my)))
    for start in range(0, len(mx), chunk):
        block = mx[start:start + chunk]
        e_sub = block @ right
        bad = _violations(e_sub, sx[start:start + chunk, None], sy[None, :], e, na, nb, eps)
        if bad.any():
            i, j = np.argwhere(bad)[0]
            xs = tuple(p.side_a[t] for t in np.flatnonzero(block[i]))
            ys = tuple(p.side_b[t] for t in np.flatnonzero(my[j]))
            stats.regular = False
            stats.witness = (xs, ys)
            stats.witness_density = Fraction(int(e_sub[i, j]), len(xs) * len(ys))
            return stats
    return stats


def _count_subsets(k: int, min_size: int) -> int:
    return sum(math.comb(k, s) for s in range(min_size, k + 1))


def _complete_side(adj_rows: np.ndarray, x_size: int, min_y: int, e, na, nb, eps):
    """Densest/sparsest completion for a fixed X; returns (order, s) of a witness."""
    deg = adj_rows.sum(axis=0)
    order_desc = np.argsort(-deg, kind="stable")
    sorted_deg = deg[order_desc]
    s = np.arange(min_y, len(deg) + 1)
    top = np.cumsum(sorted_deg)[s - 1]
    bottom = np.cumsum(sorted_deg[::-1])[s - 1]
    for sums, order in ((top, order_desc), (bottom, order_desc[::-1])):
        bad = _violations(sums, x_size, s, e, na, nb, eps)
        if bad.any():
            k = int(np.argmax(bad))
            return order[: s[k]]
    return None


def is_eps_regular_sampled(p: BipartitePair, eps, trials: int = 10_000, seed: int = 0) -> PairStats:
    """Randomised regularity test.

    Each trial draws a subset of one side (minimal admissible size or a
    uniformly larger one, alternating sides) and tests it against the
    extreme subsets of the other side of every admissible size. When
    ``trials`` is at least the number of admissible subsets of the smaller
    side, all of them are enumerated instead and the verdict is exact.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    eps = as_fraction(eps)
    na, nb = len(p.side_a), len(p.side_b)
    if na == 0 or nb == 0:
        raise EmptySideError("pair has an empty side")
    e = p.num_edges
    stats = PairStats(density=Fraction(e, na * nb), epsilon=eps, d=None, regular=True,
                      method="sampled", trials=trials)
    min_a, min_b = _min_size(eps, na), _min_size(eps, nb)
    if min_a > na or min_b > nb:
        return stats
    adj = p.adj.astype(np.int64)

    def record(xs_idx, ys_idx, a_side_first):
        if a_side_first:
            xs, ys = xs_idx, ys_idx
        else:
            xs, ys = ys_idx, xs_idx
        xs = tuple(sorted(p.side_a[t] for t in xs))
        ys = tuple(sorted(p.side_b[t] for t in ys))
        stats.regular = False
        stats.witness = (xs, ys)
        stats.witness_density = density(p, xs, ys)
        return stats

    count_a, count_b = _count_subsets(na, min_a), _count_subsets(nb, min_b)
    if min(count_a, count_b) <= trials:
        stats.exhaustive = True
        enum_a = count_a <= count_b
        k, kmin = (na, min_a) if enum_a else (nb, min_b)
        mat = adj if enum_a else adj.T
        other_min = min_b if enum_a else min_a
        for size in range(kmin, k + 1):
            for subset in combinations(range(k), size):
                w = _complete_side(mat[list(subset)], size, other_min, e, na, nb, eps)
                if w is not None:
                    return record(subset, w.tolist(), enum_a)
        return stats

    rng = np.random.default_rng(seed)
    for t in range(trials):
        a_side = t % 2 == 0
        k, kmin = (na, min_a) if a_side else (nb, min_b)
        mat = adj if a_side else adj.T
        other_min = min_b if a_side else min_a
        size = kmin if (t // 2) % 2 == 0 else int(rng.integers(kmin, k + 1))
        subset = rng.choice(k, size=size, replace=False)
        w = _complete_side(mat[subset], size, other_min, e, na, nb, eps)
        if w is not None:
            return record(subset.tolist(), w.tolist(), a_side)
    return stats


def _regularity(p, eps, method, trials, seed, cap=EXACT_CAP):
    if method == "exact":
        return is_eps_regular_exact(p, eps, cap)
    if method == "sampled":
        return is_eps_regular_sampled(p, eps, trials, seed)
    if method == "auto":
        if max(len(p.side_a), len(p.side_b)) <= cap:
            return is_eps_regular_exact(p, eps, cap)
        return is_eps_regular_sampled(p, eps, trials, seed)
    raise ValueError(f"unknown method {method!r}")


def min_degree_ratio(p: BipartitePair) -> Fraction:
    na, nb = len(p.side_a), len(p.side_b)
    ra = Fraction(int(p.degrees_a().min()), nb) if na else Fraction(1)
    rb = Fraction(int(p.degrees_b().min()), na) if nb else Fraction(1)
    return min(ra, rb)


def is_super_regular(p: BipartitePair, eps, d, method: str = "auto", trials: int = 10_000,
                     seed: int = 0) -> PairStats:
    """eps-regular and every vertex has degree > d times the opposite side."""
    d = as_fraction(d)
    stats = _regularity(p, eps, method, trials, seed)
    stats.d = d
    na, nb = len(p.side_a), len(p.side_b)
    deg_ok = (all(int(x) > d * nb for x in p.degrees_a())
              and all(int(x) > d * na for x in p.degrees_b()))
    stats.min_degree_ratio = min_degree_ratio(p)
    stats.super_regular = stats.regular and deg_ok
    return stats


class SliceResult(NamedTuple):
    pair: BipartitePair
    eps_prime: Fraction
    alpha: Fraction
    density_drift: Fraction


def slice(p: BipartitePair, sub_a: Iterable[int], sub_b: Iterable[int], eps) -> SliceResult:
    """Restrict a regular pair to large subsets.

    For ``alpha = min(|A'|/|A|, |B'|/|B|) > eps`` the sub-pair is regular with
    ``eps' = max(eps/alpha, 2 eps)`` and its density moves by less than
    ``eps``; ``density_drift`` reports the actual move.
    """
    eps = as_fraction(eps)
    sub = p.induced(sub_a, sub_b)
    alpha = min(Fraction(len(sub.side_a), len(p.side_a)), Fraction(len(sub.side_b), len(p.side_b)))
    if alpha <= eps:
        raise AlphaTooSmallError(f"alpha={alpha} must exceed eps={eps}")
    eps_prime = max(eps / alpha, 2 * eps)
    drift = abs(density(p) - density(sub))
    return SliceResult(sub, eps_prime, alpha, drift)


def random_regular_pair(m: int, d, seed: int = 0) -> BipartitePair:
    """``m x m`` pair with each cross edge present independently with prob. ``d``.

    Sides are ``0..m-1`` and ``m..2m-1``.
    """
    if m < 1 or not 0 <= float(d) <= 1:
        raise ValueError("need m >= 1 and 0 <= d <= 1")
    rng = np.random.default_rng(seed)
    return BipartitePair.from_matrix(rng.random((m, m)) < float(d))


# --------------------------------------------------------------------------
# cluster partitions


@dataclass
class ClusterPartition:
    """Disjoint clusters ``V_1..V_k`` of a host on ``n`` vertices plus ``V_0``.

    Freshly built partitions are equitable; after super-regularization the
    matched clusters may have shrunk (see ``removed``).
    """

    n: int
    clusters: tuple[tuple[int, ...], ...]
    exceptional: tuple[int, ...] = ()
    pair_stats: dict = field(default_factory=dict)
    removed: dict = field(default_factory=dict)

    def __post_init__(self):
        seen = [v for c in self.clusters for v in c] + list(self.exceptional)
        if len(seen) != len(set(seen)):
            raise ValueError("clusters and exceptional set must be disjoint")
        if sorted(seen) != list(range(self.n)):
            raise ValueError("clusters and exceptional set must cover the host")

    @property
    def k(self) -> int:
        return len(self.clusters)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.clusters)

    @property
    def is_equitable(self) -> bool:
        return len(set(self.sizes)) <= 1

    @classmethod
    def contiguous(cls, k: int, m: int, extra: int = 0) -> "ClusterPartition":
        """Clusters ``[i*m, (i+1)*m)``; the trailing ``extra`` vertices are exceptional."""
        clusters = tuple(tuple(range(i * m, (i + 1) * m)) for i in range(k))
        return cls(k * m + extra, clusters, tuple(range(k * m, k * m + extra)))

    @classmethod
    def equitable_random(cls, n: int, k: int, seed: int = 0) -> "ClusterPartition":
        if not 1 <= k <= n:
            raise ValueError("need 1 <= k <= n")
        rng = np.random.default_rng(seed)
        perm = rng.permutation(n).tolist()
        m = n // k
        clusters = tuple(tuple(sorted(perm[i * m:(i + 1) * m])) for i in range(k))
        return cls(n, clusters, tuple(sorted(perm[k * m:])))

    def pair(self, host, i: int, j: int) -> BipartitePair:
        return BipartitePair.from_host(host, self.clusters[i], self.clusters[j])


def _as_matrix(host) -> np.ndarray:
    if isinstance(host, Graph):
        mat = np.zeros((host.n, host.n), dtype=bool)
        for u, v in host.edges:
            mat[u, v] = mat[v, u] = True
        return mat
    return np.asarray(host, dtype=bool)


def super_regularize(cp: ClusterPartition, host, matching: Sequence[tuple[int, int]], eps, d,
                     method: str = "auto", trials: int = 2_000, seed: int = 0) -> ClusterPartition:
    """Prune every matched pair of ``cp`` to a super-regular pair.

    Rounds remove, simultaneously, every vertex whose degree into its partner
    is at most ``(d - eps)`` times the partner size; the larger side is then
    truncated (highest labels first) to equal size, and rounds repeat until
    stable. At most ``ceil(eps * m)`` vertices may leave a cluster. The
    result records ``pair_stats[(i, j)]`` from :func:`is_super_regular` at
    ``(eps / (1 - eps), d - 2 eps)`` and moves removed vertices to ``V_0``.
    """
    eps, d = as_fraction(eps), as_fraction(d)
    mat = _as_matrix(host)
    clusters = [list(c) for c in cp.clusters]
    exceptional = list(cp.exceptional)
    removed = {}
    stats = dict(cp.pair_stats)
    eps_out, d_out = eps / (1 - eps), d - 2 * eps
    threshold = d - eps
    for i, j in matching:
        a, b = list(clusters[i]), list(clusters[j])
        cap_a, cap_b = math.ceil(eps * len(a)), math.ceil(eps * len(b))
        pruned = {i: [], j: []}
        truncated = {i: [], j: []}
        while True:
            sub = mat[np.ix_(a, b)]
            deg_a, deg_b = sub.sum(axis=1), sub.sum(axis=0)
            low_a = [v for v, x in zip(a, deg_a) if int(x) <= threshold * len(b)]
            low_b = [v for v, x in zip(b, deg_b) if int(x) <= threshold * len(a)]
            if low_a or low_b:
                pruned[i] += low_a
                pruned[j] += low_b
                a = [v for v in a if v not in set(low_a)]
                b = [v for v in b if v not in set(low_b)]
            elif len(a) != len(b):
                big, keep = (a, len(b)) if len(a) > len(b) else (b, len(a))
                cut = sorted(big)[keep:]
                (truncated[i] if big is a else truncated[j]).extend(cut)
                a = [v for v in a if v not in set(cut)]
                b = [v for v in b if v not in set(cut)]
            else:
                break
            gone_a = len(pruned[i]) + len(truncated[i])
            gone_b = len(pruned[j]) + len(truncated[j])
            if gone_a > cap_a or gone_b > cap_b:
                raise TooManyRemovalsError(
                    f"pair ({i}, {j}) lost {gone_a}/{gone_b} vertices, cap {cap_a}/{cap_b}; "
                    f"the input pair is not ({eps}, {d})-regular")
            if not a or not b:
                raise TooManyRemovalsError(f"pair ({i}, {j}) was pruned away")
        clusters[i], clusters[j] = a, b
        for c in (i, j):
            removed[c] = {"pruned": sorted(pruned[c]), "truncated": sorted(truncated[c])}
            exceptional += pruned[c] + truncated[c]
        pair = BipartitePair.from_host(mat, a, b)
        stats[(i, j)] = is_super_regular(pair, eps_out, d_out, method=method, trials=trials, seed=seed)
    return ClusterPartition(cp.n, tuple(tuple(c) for c in clusters), tuple(sorted(exceptional)),
                            stats, removed)
