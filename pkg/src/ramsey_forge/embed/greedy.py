"""Greedy embedding of a routed graph into a clustered host."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..errors import EmbeddingFailedError
from ..graphs import Embedding, Graph, verify_embedding
from ..reduced import TreeWithMatching
from ..regularity import ClusterPartition
from .partition import HPartition


@dataclass
class PreparedHost:
    """One color class of the host plus its (super-regularized) clusters."""

    adj: np.ndarray
    clusters: ClusterPartition
    color: int = 1

    def __post_init__(self):
        self.adj = np.asarray(self.adj, dtype=bool)

    @classmethod
    def from_coloring(cls, c, cp: ClusterPartition, color: int) -> "PreparedHost":
        return cls(np.asarray(c.matrix) == color, cp, color)

    def graph(self) -> Graph:
        return Graph.from_adjacency_matrix(self.adj)


@dataclass
class EmbedStats:
    attempts: int = 0
    backtracks: int = 0
    restart_seeds: list[int] = field(default_factory=list)
    failures: list[dict] = field(default_factory=list)

    def to_dict(self):
        return {"attempts": self.attempts, "backtracks": self.backtracks,
                "restart_seeds": self.restart_seeds, "failures": self.failures[-10:]}


def greedy_embed(hp: HPartition, host: PreparedHost, twm: TreeWithMatching, seed: int = 0,
                 restarts: int = 20, backtrack: int = 50, budget: int = 400,
                 stats: Optional[EmbedStats] = None) -> Embedding:
    """Embed the non-padding vertices of ``hp.h`` cluster by cluster.

    Vertices are taken in the bandwidth order; each gets a uniformly random
    free host vertex in its cluster adjacent to all of its already embedded
    neighbours. When a candidate set runs dry the last few placements are
    undone (doubling up to ``backtrack`` steps, ``budget`` times per attempt)
    before the attempt is abandoned and restarted with a fresh seed.
    """
    stats = stats if stats is not None else EmbedStats()
    hv = [w for w in hp.ordering.sequence if w < hp.n]
    N = host.adj.shape[0]
    cluster_mask = {}
    for v in range(twm.tree.n):
        mask = np.zeros(N, dtype=bool)
        mask[list(host.clusters.clusters[twm.cluster_of[v]])] = True
        cluster_mask[v] = mask
    earlier = {}
    pos = {w: i for i, w in enumerate(hv)}
    for w in hv:
        earlier[w] = [x for x in hp.h.adj[w] if x < hp.n and pos[x] < pos[w]]

    last_trace = []
    stuck = None
    for attempt in range(restarts + 1):
        attempt_seed = seed + attempt
        stats.attempts += 1
        stats.restart_seeds.append(attempt_seed)
        rng = np.random.default_rng(attempt_seed)
        image = {}
        free = np.ones(N, dtype=bool)
        i = 0
        fails = 0
        span = 1
        trace = []
        while i < len(hv):
            w = hv[i]
            cand = free & cluster_mask[hp.assignment[w]]
            for x in earlier[w]:
                cand &= host.adj[image[x]]
            idx = np.flatnonzero(cand)
            if idx.size:
                choice = int(idx[rng.integers(idx.size)])
                image[w] = choice
                free[choice] = False
                i += 1
                continue
            fails += 1
            trace.append({"vertex": w, "position": i, "cluster": twm.label(hp.assignment[w]),
                          "embedded_neighbours": len(earlier[w])})
            stuck = w
            if fails > budget:
                break
            stats.backtracks += 1
            back = min(span, i, backtrack)
            span = span * 2 if span < backtrack else 1
            for _ in range(back):
                i -= 1
                free[image.pop(hv[i])] = True
        else:
            emb = dict(image)
            if not verify_embedding(_HostView(host.adj), _pattern(hp), emb):
                raise EmbeddingFailedError("greedy output failed verification", None, trace)
            return emb
        stats.failures.append({"seed": attempt_seed, "stuck_vertex": stuck, "reached": max(
            (t["position"] for t in trace), default=0)})
        last_trace = trace
    raise EmbeddingFailedError(
        f"no embedding after {restarts + 1} attempts; stuck at vertex {stuck}", stuck, last_trace[-20:])


def _pattern(hp: HPartition) -> Graph:
    if hp.padding == 0:
        return hp.h
    return Graph(hp.n, [(u, w) for u, w in hp.h.edges if w < hp.n])


class _HostView:
    """Duck-typed host for :func:`verify_embedding` backed by a matrix."""

    def __init__(self, adj: np.ndarray):
        self.adj_matrix = adj
        self.n = adj.shape[0]

    def has_edge(self, u, v):
        return bool(self.adj_matrix[u, v])
