"""Routing graphs of small bandwidth onto a clustered host and embedding them."""

from .greedy import EmbedStats, PreparedHost, greedy_embed
from .params import PipelineParams, choose_lhat, effective_xi, fallback_lhat
from .partition import (CompatibilityReport, HPartition, Link, build_h_partition, check_compatibility,
                        link_walk, max_walk_pieces)
from .pipeline import PipelineReport, SyntheticSpec, planted_coloring, three_color_pipeline

__all__ = [
    "CompatibilityReport", "EmbedStats", "HPartition", "Link", "PipelineParams", "PipelineReport",
    "PreparedHost", "SyntheticSpec", "build_h_partition", "check_compatibility", "choose_lhat",
    "effective_xi", "fallback_lhat", "greedy_embed", "link_walk", "max_walk_pieces",
    "planted_coloring", "three_color_pipeline",
]
