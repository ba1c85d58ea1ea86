"""Text formats: edge lists, colorings, orderings, DOT, targets and reports."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional

import numpy as np

from .bandwidth import Ordering
from .errors import FormatError
from .graphs import (EdgeColoring, Graph, make_complete, make_cycle, make_grid, make_path,
                     make_perfect_matching, make_star, random_tree)

DOT_COLORS = {1: "red", 2: "blue", 3: "green"}


def _data_lines(text: str) -> list[list[str]]:
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    return rows


def _ints(row, width, what):
    if len(row) != width:
        raise FormatError(f"{what}: expected {width} integers, got {' '.join(row)!r}")
    try:
        return [int(x) for x in row]
    except ValueError:
        raise FormatError(f"{what}: non-integer in {' '.join(row)!r}") from None


# graphs ------------------------------------------------------------------

def graph_to_edgelist(g: Graph) -> str:
    return "\n".join([str(g.n)] + [f"{u} {v}" for u, v in g.edges]) + "\n"


def parse_edgelist(text: str) -> Graph:
    rows = _data_lines(text)
    if not rows:
        raise FormatError("edge list is empty")
    (n,) = _ints(rows[0], 1, "header")
    edges = [tuple(_ints(r, 2, f"edge {i}")) for i, r in enumerate(rows[1:], 1)]
    try:
        return Graph(n, edges)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def graph_to_dot(g: Graph, name: str = "H", edge_colors: Optional[dict] = None,
                 labels: Optional[dict] = None) -> str:
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        label = f' [label="{labels[v]}"]' if labels and v in labels else ""
        lines.append(f"  {v}{label};")
    for u, v in g.edges:
        attr = ""
        if edge_colors and (u, v) in edge_colors:
            c = edge_colors[(u, v)]
            attr = f' [color={DOT_COLORS.get(c, "black")}, label="{c}"]'
        lines.append(f"  {u} -- {v}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def coloring_to_dot(c: EdgeColoring, name: str = "K") -> str:
    g = make_complete(c.n)
    return graph_to_dot(g, name, {e: col for e, col in c.items()})


def reduced_to_dot(R, name: str = "R") -> str:
    return graph_to_dot(Graph(R.k, R.edges), name, dict(R.color))


# colorings ---------------------------------------------------------------

def coloring_to_text(c: EdgeColoring) -> str:
    lines = [f"{c.n} {c.r}"] + [f"{u} {v} {col}" for (u, v), col in c.items()]
    return "\n".join(lines) + "\n"


def parse_coloring(text: str) -> EdgeColoring:
    rows = _data_lines(text)
    if not rows:
        raise FormatError("coloring is empty")
    n, r = _ints(rows[0], 2, "header")
    if n < 0 or r < 1:
        raise FormatError("header needs n >= 0 and r >= 1")
    mat = np.zeros((n, n), dtype=np.int8)
    for i, row in enumerate(rows[1:], 1):
        u, v, col = _ints(row, 3, f"triple {i}")
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise FormatError(f"triple {i}: bad pair ({u}, {v})")
        if not 1 <= col <= r:
            raise FormatError(f"triple {i}: color {col} outside 1..{r}")
        if mat[u, v]:
            raise FormatError(f"triple {i}: pair ({u}, {v}) colored twice")
        mat[u, v] = mat[v, u] = col
    missing = [(u, v) for u in range(n) for v in range(u + 1, n) if mat[u, v] == 0]
    if missing:
        raise FormatError(f"{len(missing)} pairs uncolored, first {missing[0]}")
    return EdgeColoring(mat, r)


# orderings ---------------------------------------------------------------

def ordering_to_text(o: Ordering) -> str:
    return " ".join(map(str, o.sequence)) + "\n"


def parse_ordering(text: str) -> Ordering:
    try:
        seq = tuple(int(x) for row in _data_lines(text) for x in row)
        return Ordering(seq)
    except ValueError as exc:
        raise FormatError(f"bad ordering: {exc}") from None


# targets -----------------------------------------------------------------

def parse_target(spec: str) -> Graph:
    """``path:n``, ``cycle:n``, ``complete:n``, ``star:leaves``, ``grid:axb``,
    ``matching:pairs``, ``tree:n[:seed]`` or ``file:PATH`` (edge list)."""
    kind, _, arg = spec.partition(":")
    kind = kind.strip().lower()
    try:
        if kind == "file":
            path = Path(arg)
            try:
                return parse_edgelist(path.read_text())
            except OSError as exc:
                raise FormatError(f"{path}: {exc.strerror}") from None
        if kind == "grid":
            a, _, b = arg.lower().partition("x")
            return make_grid(int(a), int(b))
        if kind == "tree":
            n, _, seed = arg.partition(":")
            return random_tree(int(n), int(seed or 0))
        makers = {"path": make_path, "cycle": make_cycle, "complete": make_complete,
                  "star": make_star, "matching": make_perfect_matching}
        if kind in makers:
            return makers[kind](int(arg))
    except ValueError as exc:
        raise FormatError(f"bad target {spec!r}: {exc}") from None
    raise FormatError(f"unknown target kind in {spec!r}")


# reports -----------------------------------------------------------------

def _plain(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if isinstance(obj, tuple):
        return list(obj)
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def report_to_text(title: str, body: dict) -> str:
    """Header line plus key-sorted JSON: stable across identical runs."""
    return f"# ramsey-forge {title}\n" + json.dumps(body, indent=2, sort_keys=True, default=_plain) + "\n"


def parse_report(text: str) -> dict:
    lines = text.splitlines()
    if lines and lines[0].startswith("#"):
        lines = lines[1:]
    return json.loads("\n".join(lines))
