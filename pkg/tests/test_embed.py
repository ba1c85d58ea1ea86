from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from ramsey_forge.bandwidth import Ordering, bandwidth_of_ordering, heuristic_ordering
from ramsey_forge.embed import (PipelineParams, PreparedHost, SyntheticSpec, build_h_partition,
                                check_compatibility, choose_lhat, effective_xi, fallback_lhat, greedy_embed,
                                link_walk, max_walk_pieces, planted_coloring, three_color_pipeline)
from ramsey_forge.errors import EmbeddingFailedError, InfeasibleError, LinkOverflowError
from ramsey_forge.extremal import three_color_construction
from ramsey_forge.graphs import (EdgeColoring, Graph, bipartition, make_grid, make_path, make_perfect_matching,
                                 random_tree, verify_embedding)
from ramsey_forge.reduced import build_reduced, even_distance_labeling, random_maximal_matching
from ramsey_forge.regularity import ClusterPartition


def single_edge_tree():
    return even_distance_labeling(Graph(2, [(0, 1)]), [(0, 1)], color=1, cluster_of=(0, 1))


def five_path_tree():
    # x1=0, y1=1, z=2, y2=3, x2=4
    return even_distance_labeling(make_path(5), [(0, 1), (3, 4)], color=1)


def assert_routed(hp, twm):
    for u, w in hp.h.edges:
        cu, cw = hp.assignment[u], hp.assignment[w]
        assert cu != cw and twm.tree.has_edge(cu, cw)
    assert hp.ledger["covered_ok"] and hp.ledger["class_purity_ok"]


def test_choose_lhat_examples():
    assert choose_lhat(1000, 8, 2, 0.5) == (200, 0)
    assert choose_lhat(114, 8, 2, 0.5) == (114, 0)
    assert choose_lhat(997, 1, 1, 7 / 900) == (997, 0)
    assert choose_lhat(997, 1, 2, 7 / 900) == (998, 1)
    with pytest.raises(InfeasibleError):
        choose_lhat(10, 8, 2, 0.01)


def test_fallback_and_effective_xi():
    lhat, pad = fallback_lhat(1000, 2, 63, 256)
    assert (lhat, pad) == (10, 0)
    assert effective_xi(20, 2, 4) == pytest.approx(28 / 18)
    assert effective_xi(2, 2, 4) == float("inf")


def test_link_walk_strips_matching_edges():
    twm = five_path_tree()
    assert (twm.xs, twm.ys) == ((0, 4), (1, 3))
    assert link_walk(twm, 0, 1) == (1, 2, 3)
    assert link_walk(twm, 1, 0) == (3, 2, 1)
    assert max_walk_pieces(twm) == 2
    short = even_distance_labeling(make_path(4), [(0, 1), (2, 3)])
    assert link_walk(short, 0, 1) == (1, 2)


def test_path_into_single_edge_tree():
    h = make_path(1000)
    twm = single_edge_tree()
    hp = build_h_partition(h, Ordering.identity(1000), bipartition(h).oriented(), twm, lhat=250, piece_size=1)
    assert not hp.links and len(hp.kernels) == 250
    assert sorted(len(c) for c in hp.clusters.values()) == [500, 500]
    assert_routed(hp, twm)


def test_grid_into_five_vertex_tree():
    h = make_grid(20, 50)
    o = heuristic_ordering(h)
    b = bandwidth_of_ordering(h, o)
    twm = five_path_tree()
    lhat, pad = fallback_lhat(h.n, 2, 3 * b, 256)
    hp = build_h_partition(h, o, bipartition(h).oriented(), twm, lhat, b, pad)
    assert hp.links and all(len(l.walk) == 3 for l in hp.links.values())
    assert_routed(hp, twm)
    assert hp.ledger["xy_ok"] and hp.ledger["z_ok"]


def test_edgeless_graph_routes_anywhere():
    h = Graph(8)
    chi = bipartition(h).oriented()
    hp = build_h_partition(h, Ordering.identity(8), chi, single_edge_tree(), lhat=4, piece_size=1)
    assert all(not u for u in hp.U.values()) and hp.warnings
    cp = ClusterPartition.contiguous(2, 8)
    assert check_compatibility(hp, cp, 0.1, single_edge_tree()).ok


def test_empty_graph_is_compatible():
    twm = single_edge_tree()
    hp = build_h_partition(Graph(0), Ordering(()), bipartition(Graph(0)), twm, lhat=1, piece_size=1, padding=2)
    assert check_compatibility(hp, ClusterPartition.contiguous(2, 3), 0.1, twm).ok


def test_link_overflow_is_refused():
    h = make_path(12)
    with pytest.raises(LinkOverflowError):
        build_h_partition(h, Ordering.identity(12), bipartition(h).oriented(), five_path_tree(),
                          lhat=4, piece_size=2)


def test_oversize_cluster_fails_condition_two():
    h = make_path(20)
    twm = single_edge_tree()
    hp = build_h_partition(h, Ordering.identity(20), bipartition(h).oriented(), twm, lhat=2, piece_size=1)
    cp = ClusterPartition.contiguous(2, 10)
    assert check_compatibility(hp, cp, 0.1, twm)["II"].ok
    rep = check_compatibility(hp, cp, 0.1, twm, sizes={twm.xs[0]: 9})
    assert not rep["II"].ok and rep["II"].index == twm.xs[0]


@settings(max_examples=40)
@given(st.integers(2, 4), st.integers(10, 60), st.integers(2, 8), st.integers(0, 10_000))
def test_partition_invariants_on_random_trees(a, b, tn, seed):
    h = make_grid(a, b)
    tree = random_tree(tn, seed)
    twm = even_distance_labeling(tree, random_maximal_matching(tree, np.random.default_rng(seed)))
    o = heuristic_ordering(h)
    p = max(1, bandwidth_of_ordering(h, o))
    need = (max_walk_pieces(twm) + 1) * p if twm.ell > 1 else p
    try:
        lhat, pad = fallback_lhat(h.n, twm.ell, need, 64)
    except InfeasibleError:
        assume(False)
    hp = build_h_partition(h, o, bipartition(h).oriented(), twm, lhat, p, pad)
    assert_routed(hp, twm)
    assert sum(len(k) for k in hp.kernels) + sum(len(x) for l in hp.links.values() for x in l.pieces) == h.n + pad
    # U collects exactly the endpoints of edges off the matching
    matched = {frozenset(e) for e in twm.matching_edges}
    off = {v for u, w in hp.h.edges if frozenset((hp.assignment[u], hp.assignment[w])) not in matched
           for v in (u, w)}
    assert set().union(*hp.U.values()) == off


def matching_host(m, d, seed=0):
    rng = np.random.default_rng(seed)
    adj = np.zeros((2 * m, 2 * m), dtype=bool)
    block = rng.random((m, m)) < d
    adj[:m, m:] = block
    adj[m:, :m] = block.T
    return PreparedHost(adj, ClusterPartition.contiguous(2, m))


def test_matching_into_one_pair():
    m = 50
    h = make_perfect_matching(m)
    twm = single_edge_tree()
    hp = build_h_partition(h, Ordering.identity(2 * m), bipartition(h).oriented(), twm, lhat=1, piece_size=1)
    host = matching_host(m, 1 / 3)
    emb = greedy_embed(hp, host, twm, seed=0)
    assert verify_embedding(host.graph(), h, emb)


def test_oversized_graph_cannot_embed():
    m = 30
    h = make_perfect_matching(m + 2)
    twm = single_edge_tree()
    hp = build_h_partition(h, Ordering.identity(h.n), bipartition(h).oriented(), twm, lhat=1, piece_size=1)
    host = matching_host(m, 1 / 2)
    assert not check_compatibility(hp, host.clusters, 0.1, twm)["II"].ok
    with pytest.raises(EmbeddingFailedError) as info:
        greedy_embed(hp, host, twm, restarts=1, budget=5)
    assert info.value.stuck_vertex is not None


def test_planted_coloring_has_the_backbone():
    spec = SyntheticSpec.parse("l=2,m=60,d=0.333,seed=3")
    assert (spec.ell, spec.m, spec.seed) == (2, 60, 3)
    c, cp = planted_coloring(spec)
    R = build_reduced(cp, c, 0.3, trials=200)
    assert all(R.color.get((i, i + 1)) == 1 for i in range(3))
    with pytest.raises(ValueError):
        SyntheticSpec.parse("q=3")


def test_pipeline_on_a_single_edge():
    rep = three_color_pipeline(EdgeColoring.monochromatic(10, 3, 1), make_path(2), k=2)
    assert rep.success and verify_embedding(EdgeColoring.monochromatic(10, 3).color_class(1),
                                            make_path(2), rep.embedding)


def test_pipeline_fails_below_the_lower_bound():
    tree = random_tree(7, seed=3)
    t1, t2 = bipartition(tree).sizes
    rep = three_color_pipeline(three_color_construction(t1, t2), tree, k=2)
    assert not rep.success and rep.failed_stage is not None


def test_pipeline_path_single_block_and_determinism():
    spec = SyntheticSpec(ell=1, m=600, d=Fraction(1, 3), seed=0)
    a = three_color_pipeline(spec, make_path(1000))
    b = three_color_pipeline(spec, make_path(1000))
    assert a.success and a.to_dict() == b.to_dict()
    hp = a.objects["hp"]
    assert sorted(len(c) for c in hp.clusters.values()) == [500, 500]


def test_params_validation():
    assert PipelineParams().xi_value == pytest.approx(1 / 304)
    assert PipelineParams(gamma=2).delta_value == 0.5
    with pytest.raises(ValueError):
        PipelineParams(eps=0)
