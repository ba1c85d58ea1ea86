"""End-to-end three-color pipeline on planted or arbitrary colorings.

Stages run in order and each records its parameters and margins in the
report; the first failing stage stops the run and is named in the report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Union

import numpy as np

from ..balance import is_beta_balanced
from ..bandwidth import Ordering, bandwidth_of_ordering, exact_bandwidth, heuristic_ordering
from ..errors import InfeasibleError, LinkOverflowError, RamseyForgeError
from ..graphs import EdgeColoring, Embedding, Graph, bipartition, verify_embedding
from ..reduced import build_reduced, tree_with_matching
from ..regularity import BipartitePair, ClusterPartition, slice, super_regularize
from .greedy import EmbedStats, PreparedHost, greedy_embed
from .partition import build_h_partition, check_compatibility, max_walk_pieces
from .params import PipelineParams, choose_lhat, effective_xi, fallback_lhat


@dataclass(frozen=True)
class SyntheticSpec:
    """Planted host: ``2*ell`` clusters of ``m`` vertices on a backbone path.

    Backbone pairs ``(i, i+1)`` carry color 1 as strict majority at density
    about ``d``; all other cross pairs favour color 3; edges inside clusters
    are colored uniformly at random.
    """

    ell: int = 2
    m: int = 400
    d: float = 1 / 3
    seed: int = 0

    @classmethod
    def parse(cls, text: str) -> "SyntheticSpec":
        """``"l=2,m=400,d=0.333"`` (optionally ``seed=``)."""
        fields = {}
        for part in filter(None, (p.strip() for p in text.split(","))):
            key, _, value = part.partition("=")
            key = {"l": "ell", "ell": "ell", "m": "m", "d": "d", "seed": "seed"}.get(key.strip())
            if key is None or not value:
                raise ValueError(f"bad synthetic field {part!r}")
            fields[key] = float(value) if key == "d" else int(value)
        return cls(**fields)

    @property
    def k(self) -> int:
        return 2 * self.ell


def _exact_counts(total: int, majority: int, favoured: int, r: int = 3) -> list[int]:
    """Per-color edge counts: ``favoured`` gets ``majority``, the rest split evenly."""
    rest = total - majority
    others = [rest // (r - 1) + (1 if i < rest % (r - 1) else 0) for i in range(r - 1)]
    counts, it = [], iter(others)
    for s in range(1, r + 1):
        counts.append(majority if s == favoured else next(it))
    return counts


def planted_coloring(spec: SyntheticSpec) -> tuple[EdgeColoring, ClusterPartition]:
    rng = np.random.default_rng(spec.seed)
    k, m = spec.k, spec.m
    N = k * m
    mat = np.zeros((N, N), dtype=np.int8)
    cells = m * m
    majority = max(round(spec.d * cells), cells // 3 + 1)
    for i in range(k):
        for j in range(i + 1, k):
            favoured = 1 if j == i + 1 else 3
            counts = _exact_counts(cells, majority, favoured)
            colors = np.repeat(np.arange(1, 4, dtype=np.int8), counts)
            rng.shuffle(colors)
            block = colors.reshape(m, m)
            mat[i * m:(i + 1) * m, j * m:(j + 1) * m] = block
            mat[j * m:(j + 1) * m, i * m:(i + 1) * m] = block.T
        inner = np.triu(rng.integers(1, 4, size=(m, m), dtype=np.int8), 1)
        mat[i * m:(i + 1) * m, i * m:(i + 1) * m] = inner + inner.T
    return EdgeColoring(mat, 3), ClusterPartition.contiguous(k, m)


@dataclass
class PipelineReport:
    params: dict
    stages: dict = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)
    embedding: Optional[Embedding] = None
    success: bool = False
    failed_stage: Optional[str] = None
    error: Optional[dict] = None
    # live objects for callers and tests; not serialized
    objects: dict = field(default_factory=dict, repr=False)

    def to_dict(self):
        return {
            "success": self.success,
            "failed_stage": self.failed_stage,
            "error": self.error,
            "params": self.params,
            "stages": self.stages,
            "warnings": self.warnings,
            "embedding": None if self.embedding is None else
            {str(k): v for k, v in sorted(self.embedding.items())},
        }


def _orient_balanced(h: Graph):
    chi = bipartition(h)
    return chi.oriented()


def three_color_pipeline(c: Union[EdgeColoring, SyntheticSpec], h: Graph,
                         params: Optional[PipelineParams] = None, ordering: Optional[Ordering] = None,
                         k: Optional[int] = None) -> PipelineReport:
    """Find a monochromatic copy of ``h`` following the cluster-and-route argument."""
    params = params or PipelineParams()
    report = PipelineReport(params=params.to_dict())
    stage = "setup"
    try:
        # (1) host partition
        stage = "partition"
        if isinstance(c, SyntheticSpec):
            coloring, cp = planted_coloring(c)
            report.stages[stage] = {"mode": "planted", "k": c.k, "m": c.m, "d": c.d, "N": coloring.n}
        else:
            coloring = c
            kk = k or params.k or 4
            cp = ClusterPartition.equitable_random(coloring.n, min(kk, coloring.n), params.seed)
            report.stages[stage] = {"mode": "equitable-random", "k": cp.k, "m": cp.sizes[0],
                                    "N": coloring.n, "exceptional": len(cp.exceptional)}
        report.objects["coloring"] = coloring

        # (2) reduced graph
        stage = "reduced"
        R = build_reduced(cp, coloring, params.eps, method="auto", trials=params.trials, seed=params.seed)
        report.stages[stage] = {"edges": len(R.edges), "pairs": cp.k * (cp.k - 1) // 2,
                                "colors": {s: sum(1 for x in R.color.values() if x == s)
                                           for s in range(1, coloring.r + 1)}}
        report.objects["reduced"] = R

        # (3) tree with matching
        stage = "tree"
        twm = tree_with_matching(R)
        ell = twm.ell
        report.stages[stage] = {"color": twm.color, "ell": ell, "ell_prime": len(twm.zs),
                                "tree_edges": [[twm.label(u), twm.label(v)] for u, v in twm.tree.edges],
                                "clusters": {twm.label(v): twm.cluster_of[v] for v in range(twm.tree.n)}}
        report.objects["twm"] = twm
        color = twm.color

        # (4) super-regularize the matched pairs, then slice bookkeeping
        stage = "super-regularize"
        matched = [(twm.cluster_of[x], twm.cluster_of[y]) for x, y in twm.matching_edges]
        color_adj = np.asarray(coloring.matrix) == color
        sr = super_regularize(cp, color_adj, matched, params.eps, params.d, method="auto",
                              trials=params.trials, seed=params.seed)
        eps_f = Fraction(params.eps).limit_denominator(10**6)
        slices = []
        for u, v in twm.tree.edges:
            i, j = twm.cluster_of[u], twm.cluster_of[v]
            if (i, j) in matched or (j, i) in matched:
                continue
            parent = BipartitePair.from_host(color_adj, cp.clusters[i], cp.clusters[j])
            res = slice(parent, sr.clusters[i], sr.clusters[j], eps_f)
            slices.append({"pair": [i, j], "alpha": str(res.alpha), "eps_prime": str(res.eps_prime),
                           "density_drift": float(res.density_drift)})
        report.stages[stage] = {
            "removed": {str(c_): {k_: len(v_) for k_, v_ in r_.items()} for c_, r_ in sr.removed.items()},
            "super_regular": {f"{i}-{j}": sr.pair_stats[(i, j)].super_regular for i, j in matched},
            "declared": {"eps": float(eps_f / (1 - eps_f)), "d": params.d - 2 * params.eps},
            "slices": slices}
        if not all(sr.pair_stats[p].super_regular for p in matched):
            report.warnings.append("a matched pair misses its declared super-regularity")
        report.objects["host_partition"] = sr

        # (5) minimum host cluster against the size the argument needs
        stage = "dmin"
        tree_clusters = [len(sr.clusters[twm.cluster_of[v]]) for v in range(twm.tree.n)]
        dmin = min(tree_clusters)
        n = h.n
        need = (1 + params.gamma / 152) * n / (2 * ell)
        report.stages[stage] = {"dmin": dmin, "required": need, "margin": dmin - need}
        if dmin < need:
            report.warnings.append(f"D_min={dmin} below (1+gamma/152)n/2l={need:.1f}")

        # (6) partition H
        stage = "h-partition"
        chi = _orient_balanced(h)
        if ordering is None:
            if h.n <= 16:
                b, ordering = exact_bandwidth(h)
            else:
                ordering = heuristic_ordering(h)
        b = bandwidth_of_ordering(h, ordering)
        Delta = h.max_degree
        beta = params.beta if params.beta is not None else max(b, 1) / n
        piece = max(math.ceil(beta * n), b, 1)
        if b > beta * n:
            report.warnings.append(f"ordering bandwidth {b} exceeds beta*n={beta * n:.1f}")
        t1, t2 = chi.counts
        balanced = t2 > 0 and is_beta_balanced((t1, t2), Fraction(beta).limit_denominator(10**6))
        if not balanced:
            report.warnings.append(f"H classes {t1}/{t2} are not beta-balanced")
        pieces_needed = max_walk_pieces(twm)
        min_interval = (pieces_needed + 1) * piece if ell > 1 else piece
        xi_nominal = params.xi_value
        try:
            lhat, pad = choose_lhat(n, cp.k, ell, xi_nominal)
            if lhat > params.lhat_max or (n + pad) // lhat < min_interval:
                raise InfeasibleError("nominal-scale lhat leaves no room for links")
            lhat_mode = "nominal"
        except InfeasibleError:
            lhat, pad = fallback_lhat(n, ell, min_interval, params.lhat_max)
            lhat_mode = "fallback"
        xi_eff = xi_nominal if lhat_mode == "nominal" else effective_xi(lhat, ell, cp.k)
        hp = build_h_partition(h, ordering, chi, twm, lhat, piece, pad, beta=Fraction(2, lhat),
                               xi=xi_eff, dmin=dmin)
        report.stages[stage] = {
            "bandwidth": b, "Delta": Delta, "beta": beta, "piece_size": piece,
            "beta_ledger": params.ledger_beta(max(Delta, 1), cp.k),
            "classes": [t1, t2], "lhat": lhat, "lhat_mode": lhat_mode, "padding": pad,
            "xi_nominal": xi_nominal, "xi_effective": xi_eff, "delta": params.delta_value,
            "d_embed": params.d_embed, **hp.to_dict(twm)}
        report.warnings += [f"balance: {w}" for w in hp.warnings]
        report.objects["hp"] = hp

        # (7) compatibility
        stage = "compatibility"
        compat = check_compatibility(hp, sr, params.eps, twm)
        report.stages[stage] = compat.to_dict()
        report.objects["compat"] = compat
        if not (compat["I"].ok and compat["II"].ok):
            raise _StageFailure("conditions I/II fail", compat.to_dict())
        for name in ("III", "IV"):
            if not compat[name].ok:
                report.warnings.append(f"condition {name} fails at desk scale "
                                       f"(index {compat[name].index}, margin {compat[name].margin})")

        # (8) embed
        stage = "embed"
        host = PreparedHost(color_adj, sr, color)
        stats = EmbedStats()
        try:
            emb = greedy_embed(hp, host, twm, seed=params.seed, restarts=params.restarts,
                               backtrack=params.backtrack, stats=stats)
        finally:
            report.stages[stage] = {"restarts": params.restarts, "backtrack_window": params.backtrack,
                                    **stats.to_dict()}

        # (9) independent verification against the color class
        stage = "verify"
        ok = verify_embedding(coloring.color_class(color), h, emb)
        report.stages[stage] = {"color": color, "verified": ok, "vertices": len(emb)}
        if not ok:
            raise _StageFailure("embedding does not verify", {})
        report.embedding = emb
        report.success = True
    except _StageFailure as exc:
        report.failed_stage = stage
        report.error = {"code": "stage-failed", "message": str(exc), "detail": exc.detail}
    except RamseyForgeError as exc:
        report.failed_stage = stage
        err = {"code": exc.code, "message": str(exc)}
        if getattr(exc, "stuck_vertex", None) is not None:
            err["stuck_vertex"] = exc.stuck_vertex
            err["trace"] = exc.trace
        report.error = err
    return report


class _StageFailure(RamseyForgeError):
    code = "stage-failed"

    def __init__(self, message: str, detail: Any):
        self.detail = detail
        super().__init__(message)
