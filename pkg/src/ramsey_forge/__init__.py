"""Ramsey numbers of bounded-degree graphs with small bandwidth, at desk scale.

Graph primitives, bandwidth and balanced interval orderings, regularity
testing, reduced graphs with connected monochromatic matchings, lower-bound
colorings, the cluster-and-route embedding pipeline, and an exhaustive
oracle for tiny Ramsey numbers.
"""

from .bandwidth import (IntervalDecomposition, Ordering, bandwidth_of_ordering, exact_bandwidth,
                        heuristic_ordering, interval_partition)
from .balance import (BalancedPermutation, BalanceProfile, balanced_permutation, check_window_bounds,
                      is_beta_balanced)
from .errors import RamseyForgeError
from .extremal import (FreenessCertificate, three_color_construction, two_color_construction_A,
                       two_color_construction_B, verify_free)
from .graphs import (EdgeColoring, Embedding, Graph, VertexTwoColoring, bipartition, find_embedding,
                     find_mono_copy, make_complete, make_cycle, make_grid, make_path, make_perfect_matching,
                     make_star, random_graph, random_tree, verify_embedding)
from .oracle import ExceedsCeiling, RamseyQuery, exact_ramsey, gg_formula, tree_lower_bounds, witness_coloring
from .reduced import (ReducedGraph, TreeWithMatching, build_reduced, even_distance_labeling, majority_color,
                      max_connected_mono_matching, spanning_tree_with_matching)
from .regularity import (BipartitePair, ClusterPartition, PairStats, density, is_eps_regular_exact,
                         is_eps_regular_sampled, is_super_regular, random_regular_pair, slice,
                         super_regularize)

__version__ = "0.1.0"
