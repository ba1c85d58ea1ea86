"""Color counts over intervals and the greedy balancing permutation.

Given an ordering cut into intervals ``I_0..I_{L-1}`` and a vertex
2-coloring, :func:`balanced_permutation` reorders the intervals so that every
prefix has nearly as many class-1 as class-2 vertices. The window checks in
:func:`check_window_bounds` then confirm the derived bounds on every
contiguous run of the permuted intervals.

Interval and window indices are 0-based throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from ._exact import as_fraction
from .bandwidth import IntervalDecomposition
from .errors import DivisionDegenerateError, NoCandidateError
from .graphs import VertexTwoColoring


@dataclass(frozen=True)
class BalanceProfile:
    """Per-interval ``(C1, C2)`` counts."""

    per_interval: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if any(c1 < 0 or c2 < 0 for c1, c2 in self.per_interval):
            raise ValueError("counts must be non-negative")

    @classmethod
    def from_intervals(cls, decomp: IntervalDecomposition, chi: VertexTwoColoring) -> "BalanceProfile":
        rows = []
        for interval in decomp.intervals:
            c1 = sum(1 for v in interval if chi.classes[v] == 1)
            rows.append((c1, len(interval) - c1))
        return cls(tuple(rows))

    @property
    def lhat(self) -> int:
        return len(self.per_interval)

    @property
    def n(self) -> int:
        return sum(c1 + c2 for c1, c2 in self.per_interval)

    @property
    def totals(self) -> tuple[int, int]:
        return (sum(c[0] for c in self.per_interval), sum(c[1] for c in self.per_interval))

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(c1 + c2 for c1, c2 in self.per_interval)

    def to_dict(self):
        return {"lhat": self.lhat, "n": self.n, "per_interval": [list(c) for c in self.per_interval]}


@dataclass(frozen=True)
class BalancedPermutation:
    sigma: tuple[int, ...]
    prefix_diffs: tuple[int, ...]
    warnings: tuple[str, ...] = ()

    def to_dict(self):
        return {"sigma": list(self.sigma), "prefix_diffs": list(self.prefix_diffs),
                "warnings": list(self.warnings)}


def is_beta_balanced(counts: tuple[int, int], beta) -> bool:
    """``1 - beta <= t1 / t2 <= 1 + beta``, in exact arithmetic."""
    t1, t2 = counts
    if t2 == 0:
        raise DivisionDegenerateError("class 2 is empty")
    ratio = Fraction(t1, t2)
    beta = as_fraction(beta)
    return 1 - beta <= ratio <= 1 + beta


def prefix_bound(profile: BalanceProfile) -> Fraction:
    return Fraction(profile.n, profile.lhat) + 1


def hypothesis_warnings(profile: BalanceProfile, beta) -> list[str]:
    """Hypotheses of the prefix-balancing guarantee that ``profile`` violates."""
    out = []
    beta = as_fraction(beta)
    L = profile.lhat
    t1, t2 = profile.totals
    if t2 == 0 or not is_beta_balanced((t1, t2), beta):
        out.append(f"totals {t1}/{t2} are not beta-balanced for beta={beta}")
    elif t1 and Fraction(t2, t1) > 1 + beta:
        # the greedy argument for a class-2 lead needs C2/C1 <= 1 + beta as well
        out.append(f"totals {t1}/{t2} are balanced one-sidedly only: C2/C1 > 1 + beta")
    if beta > Fraction(2, L):
        out.append(f"beta={beta} exceeds 2/lhat={Fraction(2, L)}")
    sizes = profile.sizes
    if list(sizes) != sorted(sizes) or sizes[-1] > sizes[0] + 1:
        out.append(f"interval sizes {min(sizes)}..{max(sizes)} are not equitable and nondecreasing")
    if profile.n < 2 * L**3:
        out.append(f"n={profile.n} is below 2*lhat^3={2 * L**3}")
    return out


def _greedy_order(counts, L):
    unused = list(range(L))
    sigma: list[int] = []
    lead = 0  # C1 - C2 of the current prefix
    while unused:
        if lead == 0:
            pick = unused[0]
        else:
            k = abs(lead)
            trailing = 1 if lead > 0 else 0  # index of the trailing class in a count pair
            pick = next((r for r in unused if 2 * counts[r][trailing] >= k), None)
            if pick is None:
                return sigma, (k, trailing)
        unused.remove(pick)
        sigma.append(pick)
        lead += counts[pick][0] - counts[pick][1]
    return sigma, None


def _search_order(counts, L, bound, budget):
    """Depth-first search for an order whose prefixes all stay within ``bound``."""
    nodes = 0
    sigma: list[int] = []
    used = [False] * L

    def rec(lead):
        nonlocal nodes
        if len(sigma) == L:
            return True
        # prefer intervals that pull the lead back towards zero
        order = sorted((r for r in range(L) if not used[r]),
                       key=lambda r: (abs(lead + counts[r][0] - counts[r][1]), r))
        for r in order:
            nxt = lead + counts[r][0] - counts[r][1]
            if abs(nxt) > bound:
                continue
            nodes += 1
            if nodes > budget:
                return False
            used[r] = True
            sigma.append(r)
            if rec(nxt):
                return True
            sigma.pop()
            used[r] = False
        return False

    return list(sigma) if rec(0) else None


def balanced_permutation(profile: BalanceProfile, beta, search_budget: int = 20_000) -> BalancedPermutation:
    """Interval order keeping every prefix imbalance at most n/L + 1.

    The greedy goes first. While the running prefix is balanced the lowest
    unused interval is taken. When class 1 leads by ``k`` the lowest unused
    interval with at least ``k/2`` class-2 vertices is taken (symmetrically
    when class 2 leads). If the greedy overshoots the bound or gets stuck, a
    bounded depth-first search looks for any order within the bound.
    Violated hypotheses are recorded in ``warnings`` rather than refused.
    """
    warnings = hypothesis_warnings(profile, beta)
    L = profile.lhat
    counts = profile.per_interval
    bound = prefix_bound(profile)
    sigma, stuck = _greedy_order(counts, L)
    diffs = _prefix_diffs(counts, sigma)
    t1, t2 = profile.totals
    if stuck is not None or any(d > bound for d in diffs):
        # the full prefix is the totals, so no order helps when they overshoot
        found = _search_order(counts, L, bound, search_budget) if abs(t1 - t2) <= bound else None
        if found is not None:
            warnings.append("the greedy order exceeded the prefix bound; used a searched order")
            sigma, stuck = found, None
        elif stuck is not None:
            k, trailing = stuck
            raise NoCandidateError(
                f"no unused interval has >= {k}/2 vertices of class {trailing + 1} "
                f"after prefix {sigma}; violated: {warnings or ['none detected']}")
    return BalancedPermutation(tuple(sigma), tuple(_prefix_diffs(counts, sigma)), tuple(warnings))


def _prefix_diffs(counts, sigma):
    out, lead = [], 0
    for r in sigma:
        lead += counts[r][0] - counts[r][1]
        out.append(abs(lead))
    return out


@dataclass
class WindowEntry:
    a: int
    b: int
    c1: int
    c2: int
    diff: int
    window_bound: Fraction
    relative_bound: Optional[Fraction]

    @property
    def window_ok(self) -> bool:
        return self.diff <= self.window_bound

    @property
    def relative_ok(self) -> bool:
        return self.relative_bound is None or self.diff <= self.relative_bound


@dataclass
class WindowReport:
    n: int
    lhat: int
    xi: Fraction
    prefix_bound: Fraction
    prefix_violations: list[int] = field(default_factory=list)
    entries: list[WindowEntry] = field(default_factory=list)
    #: second n0 term of the relative-bound guarantee, reported but not enforced
    relative_n0: Optional[Fraction] = None

    @property
    def window_violations(self) -> list[WindowEntry]:
        return [e for e in self.entries if not e.window_ok]

    @property
    def relative_violations(self) -> list[WindowEntry]:
        return [e for e in self.entries if not e.relative_ok]

    @property
    def ok(self) -> bool:
        return not (self.prefix_violations or self.window_violations or self.relative_violations)

    @property
    def worst(self) -> Optional[WindowEntry]:
        return min(self.entries, key=lambda e: e.window_bound - e.diff, default=None)

    def to_dict(self):
        worst = self.worst
        return {
            "n": self.n, "lhat": self.lhat, "xi": str(self.xi),
            "prefix_bound": str(self.prefix_bound),
            "prefix_violations": self.prefix_violations,
            "window_violations": [(e.a, e.b, e.diff) for e in self.window_violations],
            "relative_violations": [(e.a, e.b, e.diff, str(e.relative_bound)) for e in self.relative_violations],
            "relative_windows": sum(1 for e in self.entries if e.relative_bound is not None),
            "relative_n0": None if self.relative_n0 is None else str(self.relative_n0),
            "worst_window": None if worst is None else {
                "a": worst.a, "b": worst.b, "diff": worst.diff,
                "bound": str(worst.window_bound), "margin": str(worst.window_bound - worst.diff)},
            "ok": self.ok,
        }


def check_window_bounds(bp: BalancedPermutation, profile: BalanceProfile, xi) -> WindowReport:
    """Scan every window ``a < b`` of the permuted intervals.

    Each window is checked against ``2(n/L + 1)``; windows with
    ``b - a >= 7/xi`` are also checked against ``xi * C2``.
    """
    xi = as_fraction(xi)
    L = profile.lhat
    n = profile.n
    pb = prefix_bound(profile)
    n0 = (4 + 2 * xi) / (3 - 2 * xi) * L if 2 * xi < 3 else None
    report = WindowReport(n=n, lhat=L, xi=xi, prefix_bound=pb, relative_n0=n0)
    ordered = [profile.per_interval[s] for s in bp.sigma]
    c1 = np.concatenate([[0], np.cumsum([c[0] for c in ordered])]).astype(int)
    c2 = np.concatenate([[0], np.cumsum([c[1] for c in ordered])]).astype(int)
    for i in range(L):
        if abs(int(c1[i + 1] - c2[i + 1])) > pb:
            report.prefix_violations.append(i)
    wb = 2 * pb
    for a in range(L):
        for b in range(a + 1, L):
            w1 = int(c1[b + 1] - c1[a])
            w2 = int(c2[b + 1] - c2[a])
            rel = xi * w2 if (b - a) * xi >= 7 else None
            report.entries.append(WindowEntry(a, b, w1, w2, abs(w1 - w2), wb, rel))
    return report


def random_balanced_profile(n: int, lhat: int, beta, rng: np.random.Generator) -> BalanceProfile:
    """Random beta-balanced profile over equitable intervals with skewed
    per-interval class counts (used by the property suites)."""
    beta = as_fraction(beta)
    q, rem = divmod(n, lhat)
    sizes = [q] * (lhat - rem) + [q + 1] * rem
    # all t1 with (1-beta) t2 <= t1 <= (1+beta) t2 and t1 + t2 = n
    valid = [t1 for t1 in range(n + 1)
             if n - t1 > 0 and 1 - beta <= Fraction(t1, n - t1) <= 1 + beta]
    if not valid:
        raise ValueError(f"no beta-balanced split of n={n} for beta={beta}")
    t1 = int(rng.choice(valid))
    skew = rng.uniform(0.05, 2.0)
    frac = rng.beta(skew, skew, size=lhat)
    c1 = np.minimum(np.round(frac * sizes).astype(int), sizes)
    diff = t1 - int(c1.sum())
    while diff != 0:
        i = int(rng.integers(lhat))
        if diff > 0 and c1[i] < sizes[i]:
            step = min(diff, sizes[i] - c1[i], int(rng.integers(1, q + 2)))
            c1[i] += step
            diff -= step
        elif diff < 0 and c1[i] > 0:
            step = min(-diff, c1[i], int(rng.integers(1, q + 2)))
            c1[i] -= step
            diff += step
    return BalanceProfile(tuple((int(a), int(s - a)) for a, s in zip(c1, sizes)))
