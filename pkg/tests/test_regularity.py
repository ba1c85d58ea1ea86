from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ramsey_forge.errors import AlphaTooSmallError, EmptySideError, TooLargeError, TooManyRemovalsError
from ramsey_forge.regularity import (BipartitePair, ClusterPartition, density, is_eps_regular_exact,
                                     is_eps_regular_sampled, is_super_regular, min_degree_ratio,
                                     random_regular_pair, slice, super_regularize)

EPS = st.sampled_from([Fraction(1, 5), Fraction(1, 4), Fraction(3, 10), Fraction(2, 5)])


@st.composite
def small_pairs(draw, max_side=7):
    a = draw(st.integers(1, max_side))
    b = draw(st.integers(1, max_side))
    bits = draw(st.lists(st.booleans(), min_size=a * b, max_size=a * b))
    return BipartitePair.from_matrix(np.array(bits, dtype=bool).reshape(a, b))


def matching_pair(m):
    return BipartitePair.from_matrix(np.eye(m, dtype=bool))


def blocks_pair(m):
    adj = np.zeros((m, m), dtype=bool)
    adj[: m // 2, : m // 2] = adj[m // 2:, m // 2:] = True
    return BipartitePair.from_matrix(adj)


def host_of(adj):
    m = adj.shape[0]
    host = np.zeros((2 * m, 2 * m), dtype=bool)
    host[:m, m:] = adj
    host[m:, :m] = adj.T
    return host


def test_density_examples():
    assert density(BipartitePair.from_matrix(np.ones((4, 5), bool))) == 1
    assert density(BipartitePair.from_matrix(np.zeros((4, 5), bool))) == 0
    adj = np.zeros((3, 3), bool)
    adj[0, :] = True
    adj[1, 0] = True
    assert density(BipartitePair.from_matrix(adj)) == Fraction(4, 9)
    with pytest.raises(EmptySideError):
        density(BipartitePair.from_matrix(adj), X=[])


def test_exact_examples():
    assert is_eps_regular_exact(BipartitePair.from_matrix(np.ones((8, 8), bool)), 0.05).regular
    assert is_eps_regular_exact(BipartitePair.from_matrix(np.zeros((8, 8), bool)), 0.05).regular


def test_exact_matching_pair_threshold():
    # sizes above 0.3*8 cap the gap at 1/3 - 1/8 < 0.3; at 0.2 two matched edges witness
    assert is_eps_regular_exact(matching_pair(8), Fraction(3, 10)).regular
    stats = is_eps_regular_exact(matching_pair(8), Fraction(1, 5))
    assert not stats.regular
    xs, ys = stats.witness
    assert abs(density(matching_pair(8), xs, ys) - Fraction(1, 8)) >= Fraction(1, 5)


def test_exact_refuses_large_sides():
    with pytest.raises(TooLargeError):
        is_eps_regular_exact(random_regular_pair(13, 0.5), 0.2)


def test_sampled_examples():
    assert is_eps_regular_sampled(BipartitePair.from_matrix(np.ones((60, 60), bool)), 0.01, seed=3).regular
    # a sparse perfect matching is genuinely regular at 0.1 for m=100
    assert is_eps_regular_sampled(matching_pair(100), Fraction(1, 10), trials=2000).regular
    stats = is_eps_regular_sampled(blocks_pair(100), Fraction(1, 10), trials=2000)
    assert not stats.regular
    xs, ys = stats.witness
    assert abs(density(blocks_pair(100), xs, ys) - Fraction(1, 2)) >= Fraction(1, 10)
    assert is_eps_regular_sampled(random_regular_pair(200, 0.5, seed=1), 0.2, trials=10_000).regular


@given(small_pairs(), EPS)
def test_exact_witness_is_genuine(p, eps):
    stats = is_eps_regular_exact(p, eps)
    if not stats.regular:
        xs, ys = stats.witness
        assert len(xs) > eps * len(p.side_a) and len(ys) > eps * len(p.side_b)
        assert abs(density(p, xs, ys) - density(p)) >= eps


@given(small_pairs(), EPS, st.integers(1, 40), st.integers(0, 100))
def test_sampled_is_one_sided(p, eps, trials, seed):
    stats = is_eps_regular_sampled(p, eps, trials=trials, seed=seed)
    if not stats.regular:
        xs, ys = stats.witness
        assert len(xs) > eps * len(p.side_a) and len(ys) > eps * len(p.side_b)
        assert abs(stats.witness_density - density(p)) >= eps
        assert not is_eps_regular_exact(p, eps).regular


@given(small_pairs(), EPS)
def test_sampled_agrees_with_exact_at_full_budget(p, eps):
    assert is_eps_regular_sampled(p, eps, trials=10_000).regular == is_eps_regular_exact(p, eps).regular


def test_super_regular_examples():
    full = BipartitePair.from_matrix(np.ones((10, 10), bool))
    assert is_super_regular(full, 0.1, 0.9).super_regular
    adj = np.ones((10, 10), bool)
    adj[3] = False
    assert not is_super_regular(BipartitePair.from_matrix(adj), 0.5, 0.1).super_regular
    # sampled regularity at eps=0.2 plus the degree floor
    stats = is_super_regular(random_regular_pair(200, 0.5, seed=2), 0.2, Fraction(1, 3))
    assert stats.super_regular


@given(small_pairs())
def test_min_degree_ratio_matches_definition(p):
    na, nb = len(p.side_a), len(p.side_b)
    want = min(min(Fraction(int(r.sum()), nb) for r in p.adj), min(Fraction(int(c.sum()), na) for c in p.adj.T))
    assert min_degree_ratio(p) == want


def test_slice_examples():
    p = random_regular_pair(20, 0.5, seed=0)
    half = slice(p, p.side_a[:10], p.side_b[:10], Fraction(1, 10))
    assert half.alpha == Fraction(1, 2) and half.eps_prime == Fraction(1, 5)
    quarter = slice(p, p.side_a[:5], p.side_b, Fraction(1, 10))
    assert quarter.eps_prime == Fraction(2, 5)
    assert slice(p, p.side_a, p.side_b, Fraction(1, 10)).eps_prime == Fraction(1, 5)
    with pytest.raises(AlphaTooSmallError):
        slice(p, p.side_a[:1], p.side_b, Fraction(1, 10))


@settings(max_examples=30)
@given(st.integers(0, 1000), st.sampled_from([Fraction(1, 5), Fraction(3, 10)]), st.data())
def test_slice_stays_regular_with_the_stated_epsilon(seed, eps, data):
    rng = np.random.default_rng(seed)
    p = BipartitePair.from_matrix(rng.random((12, 12)) < 0.9)
    if not is_eps_regular_exact(p, eps).regular:
        return
    ka = data.draw(st.integers(int(eps * 12) + 1, 12))
    kb = data.draw(st.integers(int(eps * 12) + 1, 12))
    res = slice(p, p.side_a[:ka], p.side_b[:kb], eps)
    assert res.density_drift < eps
    assert is_eps_regular_exact(res.pair, res.eps_prime).regular


def test_random_pair_generator():
    assert random_regular_pair(10, 1).num_edges == 100
    assert random_regular_pair(10, 0).num_edges == 0
    measured = density(random_regular_pair(200, Fraction(1, 3), seed=0))
    assert abs(measured - Fraction(1, 3)) < Fraction(1, 50)


def test_super_regularize_keeps_good_random_pairs():
    rng = np.random.default_rng(0)
    adj = rng.random((200, 200)) < 0.5
    out = super_regularize(ClusterPartition.contiguous(2, 200), host_of(adj), [(0, 1)],
                           Fraction(1, 10), Fraction(1, 3), trials=200)
    assert out.removed[0] == {"pruned": [], "truncated": []}
    assert out.removed[1] == {"pruned": [], "truncated": []}
    assert out.sizes == (200, 200)


def test_super_regularize_removes_an_isolated_vertex():
    adj = np.ones((10, 10), bool)
    adj[4] = False
    out = super_regularize(ClusterPartition.contiguous(2, 10), host_of(adj), [(0, 1)],
                           Fraction(1, 10), Fraction(1, 2), method="exact")
    assert out.removed[0]["pruned"] == [4]
    assert out.removed[1]["truncated"] == [19]
    assert 4 in out.exceptional and out.pair_stats[(0, 1)].super_regular


def test_super_regularize_clears_planted_low_degree_vertices():
    m = 20
    adj = np.ones((m, m), bool)
    adj[[3, 11]] = False
    out = super_regularize(ClusterPartition.contiguous(2, m), host_of(adj), [(0, 1)],
                           Fraction(1, 10), Fraction(1, 2))
    assert out.removed[0]["pruned"] == [3, 11]
    assert out.pair_stats[(0, 1)].super_regular
    assert out.sizes == (18, 18)


def test_super_regularize_refuses_hopeless_pairs():
    adj = np.zeros((10, 10), bool)
    adj[:, :2] = True
    with pytest.raises(TooManyRemovalsError):
        super_regularize(ClusterPartition.contiguous(2, 10), host_of(adj), [(0, 1)],
                         Fraction(1, 10), Fraction(1, 2))


def test_cluster_partitions():
    cp = ClusterPartition.equitable_random(23, 4, seed=1)
    assert cp.is_equitable and cp.sizes == (5, 5, 5, 5) and len(cp.exceptional) == 3
    with pytest.raises(ValueError):
        ClusterPartition(4, ((0, 1), (1, 2)))
