"""Command-line entry point.

Each subcommand prints a short summary on stdout and, with ``--out``, writes
the full structured report. Exit status: 0 success, 1 verified negative
result, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

import numpy as np

from . import formats
from .balance import BalanceProfile, balanced_permutation, check_window_bounds
from .bandwidth import bandwidth_of_ordering, exact_bandwidth, heuristic_ordering, interval_partition
from .embed import PipelineParams, SyntheticSpec, three_color_pipeline
from .errors import DegenerateError, FormatError, IntractableError, RamseyForgeError, TooLargeError
from .extremal import (three_color_construction, two_color_construction_A, two_color_construction_B,
                       verify_free)
from .graphs import EdgeColoring, bipartition
from .oracle import ExceedsCeiling, RamseyQuery, exact_ramsey, gg_formula, witness_coloring
from .reduced import ReducedGraph, build_reduced, max_connected_mono_matching
from .regularity import (BipartitePair, ClusterPartition, is_eps_regular_exact, is_eps_regular_sampled,
                         is_super_regular, random_regular_pair)


#: refusals and bad input, as opposed to verified negative answers
USAGE_ERRORS = (FormatError, IntractableError, TooLargeError, DegenerateError)


@dataclass
class RunConfig:
    subcommand: str
    args: dict = field(default_factory=dict)
    seed: int = 0
    out: Optional[str] = None
    format: str = "text"


class Result:
    def __init__(self, summary: str, report: dict, status: int = 0, dot: Optional[str] = None):
        self.summary, self.report, self.status, self.dot = summary, report, status, dot


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"{path}: {exc.strerror}") from None


# subcommands --------------------------------------------------------------

def cmd_gen(a) -> Result:
    if a.random_coloring is not None:
        c = EdgeColoring.random(a.random_coloring, a.colors, a.seed)
        return Result(formats.coloring_to_text(c).rstrip("\n"), {"n": c.n, "r": c.r, "seed": a.seed},
                      dot=formats.coloring_to_dot(c))
    if a.target is None:
        raise FormatError("gen needs --target or --random-coloring")
    g = formats.parse_target(a.target)
    return Result(formats.graph_to_edgelist(g).rstrip("\n"),
                  {"target": a.target, "n": g.n, "edges": g.num_edges, "max_degree": g.max_degree},
                  dot=formats.graph_to_dot(g))


def _ordering_for(g, exact: bool):
    if exact:
        return exact_bandwidth(g)
    o = heuristic_ordering(g)
    return bandwidth_of_ordering(g, o), o


def cmd_bandwidth(a) -> Result:
    g = formats.parse_target(a.target)
    b, o = _ordering_for(g, a.exact)
    report = {"target": a.target, "n": g.n, "bandwidth": b, "method": "exact" if a.exact else "heuristic",
              "ordering": list(o.sequence)}
    if a.lhat:
        report["interval_sizes"] = list(interval_partition(o, a.lhat).sizes)
    return Result(f"bandwidth {b} ({report['method']})", report)


def cmd_balance(a) -> Result:
    g = formats.parse_target(a.target)
    o = formats.parse_ordering(_read(a.ordering)) if a.ordering else heuristic_ordering(g)
    chi = bipartition(g).oriented()
    profile = BalanceProfile.from_intervals(interval_partition(o, a.lhat), chi)
    beta = a.beta if a.beta is not None else Fraction(2, a.lhat)
    bp = balanced_permutation(profile, beta)
    window = check_window_bounds(bp, profile, a.xi)
    report = {"profile": profile.to_dict(), "permutation": bp.to_dict(), "windows": window.to_dict()}
    return Result(f"sigma {' '.join(map(str, bp.sigma))}; bounds {'ok' if window.ok else 'violated'}",
                  report, 0 if window.ok else 1)


def cmd_regularity(a) -> Result:
    if a.matrix:
        rows = [[int(x) for x in line.split()] for line in _read(a.matrix).splitlines() if line.strip()]
        p = BipartitePair.from_matrix(np.array(rows, dtype=bool))
    elif a.random:
        m, _, d = a.random.partition(",")
        p = random_regular_pair(int(m), float(d), a.seed)
    else:
        raise FormatError("regularity needs --random M,D or --matrix FILE")
    if a.super is not None:
        st = is_super_regular(p, a.eps, a.super, method=a.method, trials=a.trials, seed=a.seed)
        ok = st.super_regular
        word = "super-regular" if ok else "not super-regular"
    else:
        if a.method == "exact":
            st = is_eps_regular_exact(p, a.eps)
        else:
            st = is_eps_regular_sampled(p, a.eps, a.trials, a.seed)
        ok = st.regular
        word = "regular" if ok else "irregular"
    return Result(f"{word} (density {st.density}, method {st.method})", st.to_dict(), 0 if ok else 1)


def cmd_reduced(a) -> Result:
    if a.coloring:
        c = formats.parse_coloring(_read(a.coloring))
        cp = ClusterPartition.equitable_random(c.n, a.k, a.seed)
        R = build_reduced(cp, c, a.eps, method="auto", trials=a.trials, seed=a.seed)
    else:
        R = ReducedGraph.random_complete(a.k, a.colors, a.seed)
    mm = max_connected_mono_matching(R)
    report = {"k": R.k, "edges": len(R.edges), "color": mm.color, "component": list(mm.component),
              "matching": [list(e) for e in mm.matching]}
    return Result(f"matching of {mm.size} edges in color {mm.color}", report, dot=formats.reduced_to_dot(R))


def cmd_extremal(a) -> Result:
    if a.three_color:
        c = three_color_construction(a.t1, a.t2)
        kind = "three-color"
    elif a.two_color_b:
        c = two_color_construction_B(a.t2)
        kind = "two-color-B"
    else:
        c = two_color_construction_A(a.t1, a.t2)
        kind = "two-color-A"
    report = {"construction": kind, "t1": a.t1, "t2": a.t2, "n": c.n,
              "coloring": formats.coloring_to_text(c)}
    status, summary = 0, f"{kind} coloring of K_{c.n}"
    if a.verify:
        cert = verify_free(c, formats.parse_target(a.verify))
        report["certificate"] = cert.to_dict()
        summary = f"verdict {cert.verdict}"
        status = 0 if cert.free else 1
    return Result(summary, report, status, dot=formats.coloring_to_dot(c))


def cmd_embed_pipeline(a) -> Result:
    h = formats.parse_target(a.h)
    params = PipelineParams(gamma=a.gamma, xi=a.xi, eps=a.eps, d=a.d, beta=a.beta, seed=a.seed,
                            restarts=a.restarts, trials=a.trials)
    if a.synthetic:
        source = SyntheticSpec.parse(a.synthetic)
        if "seed=" not in a.synthetic:
            source = SyntheticSpec(source.ell, source.m, source.d, a.seed)
    elif a.coloring:
        source = formats.parse_coloring(_read(a.coloring))
    else:
        raise FormatError("embed-pipeline needs --synthetic SPEC or --coloring FILE")
    rep = three_color_pipeline(source, h, params, k=a.k)
    if rep.success:
        summary = f"embedding certificate: {len(rep.embedding)} vertices in color {rep.stages['verify']['color']}"
    else:
        summary = f"failed at stage {rep.failed_stage}: {rep.error['code']}"
    return Result(summary, rep.to_dict(), 0 if rep.success else 1)


def cmd_ramsey(a) -> Result:
    specs = a.targets.split(",") if a.targets else [a.target] * a.colors
    if not all(specs):
        raise FormatError("ramsey needs --target or --targets")
    q = RamseyQuery(tuple(formats.parse_target(s) for s in specs), a.n_max)
    if a.witness is not None:
        c = witness_coloring(q, a.witness, jobs=a.jobs)
        report = {"targets": specs, "n": a.witness, "exists": c is not None,
                  "coloring": None if c is None else formats.coloring_to_text(c)}
        summary = formats.coloring_to_text(c).rstrip("\n") if c is not None else "absent"
        return Result(summary, report, 0 if c is not None else 1)
    value = exact_ramsey(q, jobs=a.jobs)
    report = {"targets": specs, "colors": q.r, "value": str(value) if isinstance(value, ExceedsCeiling) else value,
              "n_max": a.n_max}
    if all(s.startswith("path:") for s in specs) and len(set(specs)) == 1 and q.r == 2:
        report["path_formula"] = gg_formula(int(specs[0].split(":")[1]))
    return Result(str(value), report, 1 if isinstance(value, ExceedsCeiling) else 0)


COMMANDS = {
    "gen": cmd_gen, "bandwidth": cmd_bandwidth, "balance": cmd_balance, "regularity": cmd_regularity,
    "reduced": cmd_reduced, "extremal": cmd_extremal, "embed-pipeline": cmd_embed_pipeline,
    "ramsey": cmd_ramsey,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--out", help="write the full report here")
    common.add_argument("--format", choices=("text", "dot"), default="text")

    p = argparse.ArgumentParser(prog="ramsey-forge", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="subcommand", required=True)

    s = sub.add_parser("gen", parents=[common], help="generate graphs and colorings")
    s.add_argument("--target")
    s.add_argument("--random-coloring", type=int, metavar="N")
    s.add_argument("--colors", type=int, default=3)

    s = sub.add_parser("bandwidth", parents=[common], help="bandwidth and ordering of a target")
    s.add_argument("--target", required=True)
    s.add_argument("--exact", action="store_true")
    s.add_argument("--lhat", type=int)

    s = sub.add_parser("balance", parents=[common], help="balanced interval permutation")
    s.add_argument("--target", required=True)
    s.add_argument("--ordering", help="file with a whitespace-separated ordering")
    s.add_argument("--lhat", type=int, required=True)
    s.add_argument("--beta", type=float)
    s.add_argument("--xi", type=float, default=0.5)

    s = sub.add_parser("regularity", parents=[common], help="regularity of a bipartite pair")
    s.add_argument("--random", metavar="M,D")
    s.add_argument("--matrix", help="file of 0/1 rows")
    s.add_argument("--eps", type=float, default=0.2)
    s.add_argument("--method", choices=("exact", "sampled"), default="sampled")
    s.add_argument("--trials", type=int, default=10_000)
    s.add_argument("--super", type=float, metavar="D", help="also require degrees above D")

    s = sub.add_parser("reduced", parents=[common], help="reduced graph and connected matching")
    s.add_argument("--coloring")
    s.add_argument("--k", type=int, default=20)
    s.add_argument("--colors", type=int, default=3)
    s.add_argument("--eps", type=float, default=0.2)
    s.add_argument("--trials", type=int, default=2_000)

    s = sub.add_parser("extremal", parents=[common], help="lower-bound colorings")
    kind = s.add_mutually_exclusive_group()
    kind.add_argument("--two-color-a", action="store_true")
    kind.add_argument("--two-color-b", action="store_true")
    kind.add_argument("--three-color", action="store_true")
    s.add_argument("--t1", type=int, default=1)
    s.add_argument("--t2", type=int, required=True)
    s.add_argument("--verify", metavar="TARGET")

    s = sub.add_parser("embed-pipeline", parents=[common], help="three-color embedding pipeline")
    s.add_argument("--synthetic", metavar="l=..,m=..,d=..")
    s.add_argument("--coloring")
    s.add_argument("--h", required=True, metavar="TARGET")
    s.add_argument("--k", type=int)
    s.add_argument("--gamma", type=float, default=1.0)
    s.add_argument("--xi", type=float)
    s.add_argument("--eps", type=float, default=0.15)
    s.add_argument("--d", type=float, default=1 / 3)
    s.add_argument("--beta", type=float)
    s.add_argument("--restarts", type=int, default=20)
    s.add_argument("--trials", type=int, default=2_000)

    s = sub.add_parser("ramsey", parents=[common], help="exact small Ramsey numbers")
    s.add_argument("--colors", type=int, default=2, choices=(2, 3))
    s.add_argument("--target")
    s.add_argument("--targets", help="comma-separated, one per color")
    s.add_argument("--n-max", type=int, default=12)
    s.add_argument("--witness", type=int, metavar="N", help="print an avoiding coloring of K_N")
    return p


def run(config: RunConfig, stdout=None) -> int:
    stdout = stdout or sys.stdout
    ns = argparse.Namespace(**{"jobs": 1, **config.args, "seed": config.seed, "out": config.out,
                               "format": config.format})
    try:
        result = COMMANDS[config.subcommand](ns)
    except RamseyForgeError as exc:
        print(f"error ({exc.code}): {exc}", file=sys.stderr)
        return 2 if isinstance(exc, USAGE_ERRORS) else 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if config.format == "dot":
        if result.dot is None:
            print("error: this subcommand has no DOT output", file=sys.stderr)
            return 2
        text = result.dot
    else:
        text = result.summary + "\n"
    stdout.write(text)
    if config.out:
        body = {"subcommand": config.subcommand, "config": {k: v for k, v in sorted(config.args.items())},
                "seed": config.seed, "status": result.status, "report": result.report}
        try:
            Path(config.out).write_text(formats.report_to_text(config.subcommand, body))
        except OSError as exc:
            print(f"error: {config.out}: {exc.strerror}", file=sys.stderr)
            return 2
    return result.status


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    args = {k: v for k, v in vars(ns).items() if k not in ("subcommand", "seed", "out", "format")}
    config = RunConfig(ns.subcommand, args, ns.seed, ns.out, ns.format)
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
