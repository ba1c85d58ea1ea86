"""Lower-bound colorings for tree Ramsey numbers and a freeness verifier."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import DegenerateError
from .graphs import EdgeColoring, Embedding, Graph, find_mono_copy


def _from_classes(sizes: Sequence[int], r: int, color_of) -> tuple[EdgeColoring, list[tuple[int, ...]]]:
    """Coloring of K_n whose classes are contiguous runs of the given sizes;
    ``color_of(i, j)`` colors edges between (or, for ``i == j``, inside) classes."""
    classes, start = [], 0
    for s in sizes:
        classes.append(tuple(range(start, start + s)))
        start += s
    label = np.repeat(np.arange(len(sizes)), sizes)
    n = start
    mat = np.zeros((n, n), dtype=np.int8)
    for u in range(n):
        for v in range(u + 1, n):
            mat[u, v] = mat[v, u] = color_of(int(label[u]), int(label[v]))
    return EdgeColoring(mat, r), classes


def two_color_construction_A(t1: int, t2: int) -> EdgeColoring:
    """K_{2t1+t2-2}: classes of sizes t1-1 and t1+t2-1, color 1 inside, 2 across."""
    if t1 < 1 or t2 < t1:
        raise DegenerateError("need 1 <= t1 <= t2")
    c, _ = _from_classes([t1 - 1, t1 + t2 - 1], 2, lambda i, j: 1 if i == j else 2)
    return c


def two_color_construction_B(t2: int) -> EdgeColoring:
    """K_{2t2-2}: two classes of size t2-1, color 1 inside, 2 across."""
    if t2 < 2:
        raise DegenerateError("need t2 >= 2")
    c, _ = _from_classes([t2 - 1, t2 - 1], 2, lambda i, j: 1 if i == j else 2)
    return c


def _three_color(i: int, j: int) -> int:
    # class 0 is the special class; classes 1..3 carry their own color
    if i == j:
        return max(i, 1)
    if 0 in (i, j):
        return max(i, j)
    return 6 - i - j


def three_color_construction(t1: int, t2: int) -> EdgeColoring:
    """K_{t1+3t2-3} on a special class of size t1 followed by three of size t2-1.

    Class ``i`` and its edges to the special class use color ``i``; edges
    between classes ``i`` and ``j`` use the remaining color; edges inside the
    special class use color 1.
    """
    if t1 < 1 or t2 < 2:
        raise DegenerateError("need t1 >= 1 and t2 >= 2")
    c, _ = _from_classes([t1, t2 - 1, t2 - 1, t2 - 1], 3, _three_color)
    return c


@dataclass
class FreenessCertificate:
    coloring: EdgeColoring
    target: Graph
    searched_colors: list[int]
    free: bool
    witness_color: Optional[int] = None
    witness: Optional[Embedding] = None

    @property
    def verdict(self) -> str:
        return "free" if self.free else "copy-found"

    def to_dict(self):
        return {
            "verdict": self.verdict,
            "host_n": self.coloring.n,
            "colors": self.coloring.r,
            "target_n": self.target.n,
            "target_edges": self.target.num_edges,
            "searched_colors": self.searched_colors,
            "witness_color": self.witness_color,
            "witness": None if self.witness is None else {str(k): v for k, v in sorted(self.witness.items())},
        }


def verify_free(c: EdgeColoring, target: Graph, colors: Optional[Sequence[int]] = None) -> FreenessCertificate:
    """Exhaustively search each color class for a copy of ``target``."""
    colors = list(range(1, c.r + 1)) if colors is None else list(colors)
    if target.n > c.n:
        return FreenessCertificate(c, target, colors, True)
    for s in colors:
        emb = find_mono_copy(c, target, s)
        if emb is not None:
            return FreenessCertificate(c, target, colors[: colors.index(s) + 1], False, s, emb)
    return FreenessCertificate(c, target, colors, True)
