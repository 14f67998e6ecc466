import random

import pytest
from hypothesis import given, strategies as st

from pathqueries import AncestorDominanceIndex, PathDominanceBase, build_tree
from pathqueries.dominance import (AncestorDominance2D, AncestorDominance2E, compute_2maximal)
from pathqueries.errors import VectorDimensionMismatch
from pathqueries.framework import QueryStats, SinkFold
from pathqueries.harness import rank_space_reduce
from pathqueries.oracle import OracleTree, oracle_ancestors, oracle_dominance, oracle_path
from pathqueries.weights import pad_weights
from strategies import T1_PARENTS, T1_VECTORS, T1_WEIGHTS, weighted_trees


def padded(parents, weights):
    t = build_tree(parents)
    return t, pad_weights(t, weights)


def test_pdr_t1():
    t, W = padded(T1_PARENTS, T1_VECTORS)
    base = PathDominanceBase(t, W, 5)
    stats = QueryStats()
    assert base.query(3, 5, (3, 2), stats) == [1, 5]
    assert base.query(3, 5, (1, 1)) == [1, 2, 3, 5]
    assert all(p <= 2 * k + 1 for k, p in stats.probes)


def test_pdr_scalar():
    t, W = padded(T1_PARENTS, [(w,) for w in T1_WEIGHTS])
    base = PathDominanceBase(t, W, 1)
    assert list(base.catalog) == [()]
    assert base.query(3, 5, (4,)) == [3, 5]


def test_pdr_dimension_mismatch():
    t, W = padded(T1_PARENTS, T1_VECTORS)
    with pytest.raises(VectorDimensionMismatch):
        PathDominanceBase(t, W, 5).query(3, 5, (1,))


def test_two_maximal():
    t = build_tree(T1_PARENTS)
    assert compute_2maximal(t, [None] + T1_WEIGHTS) == {1, 3, 5}
    chain = build_tree([1, 2, 3])
    assert compute_2maximal(chain, [None, 1, 2, 3, 4]) == {1, 2, 3, 4}


def test_adr_2d_t1():
    t, W = padded(T1_PARENTS, T1_VECTORS)
    V = AncestorDominance2D(t, W)
    assert V.query(4, (1, 3)) == [2, 4]
    assert V.query(4, (6, 1)) == []
    assert V.query(1, (1, 1)) == [1]
    top = [s for (l, a, b), nodes in V.m_sets().items() if l == 1 for s in nodes]
    assert sorted(top) == [1, 3, 5]


def test_adr_2d_single_node():
    t, W = padded([], [(1, 1)])
    V = AncestorDominance2D(t, W)
    assert V.query(1, (1, 1)) == [1]
    assert V.m_sets() == {(1, 1, 1): [1]}


def test_child_with_larger_second_weight_is_reported():
    # the child's node only becomes 2-maximal below the root level, off the query path
    t, W = padded([1], [(10, 3), (5, 4)])
    V = AncestorDominance2D(t, W, f=2)
    assert V.query(2, (1, 1)) == [1, 2]


def test_adr_2e_fixture():
    vecs = [(3, 2, 1), (1, 5, 2), (5, 1, 2), (2, 4, 2), (4, 3, 1)]
    t, W = padded(T1_PARENTS, vecs)
    V = AncestorDominance2E(t, W, None, 2, f=2)
    o = OracleTree(T1_PARENTS, vecs)
    for x in range(1, 6):
        for q in [(1, 1, 1), (1, 1, 2), (2, 2, 2), (1, 3, 1), (1, 1, 3)]:
            out = []
            V.query_up(x, -1, tuple((v, 99) for v in q), SinkFold(out.append), QueryStats())
            assert sorted(out) == oracle_dominance(o, x, q)


@given(weighted_trees(d=2, max_n=60), st.integers(2, 5))
def test_m_sets_partition_and_decrease(data, f):
    parents, weights = data
    t, W = padded(parents, weights)
    V = AncestorDominance2D(t, W, f=f)
    assigned = sorted(x for nodes in V.m_sets().values() for x in nodes)
    assert assigned == list(range(1, t.n + 1))
    for l in range(1, V.hierarchy.h + 1):
        lv = V.levels[l]
        par = lv.M.tree.parent
        for i in range(1, lv.M.tree.n + 1):
            if par[i] > 0:
                assert V.w1[lv.P[i]] > V.w1[lv.P[par[i]]]


@given(weighted_trees(d=2, max_n=60), st.integers(2, 5), st.integers(0, 10**6))
def test_adr_2d_matches_oracle_with_counters(data, f, seed):
    parents, weights = data
    t, W = padded(parents, weights)
    V = AncestorDominance2D(t, W, f=f)
    o = OracleTree(parents, weights)
    rng = random.Random(seed)
    n = t.n
    for _ in range(30):
        x, q = rng.randint(1, n), (rng.randint(0, n + 1), rng.randint(0, n + 1))
        stats = QueryStats()
        got = V.query(x, q, stats)
        assert got == oracle_dominance(o, x, q)
        assert all(k >= 1 for k in stats.e_reports)
        assert all(calls <= 1 for _, calls in stats.weighted_ancestor)
        assert len({l for l, _ in stats.weighted_ancestor}) == len(stats.weighted_ancestor)
        assert all(p <= 2 * k + 1 for k, p in stats.probes)


@given(weighted_trees(d=3, max_n=40, universe=3), st.integers(0, 10**6))
def test_pdr_matches_oracle(data, seed):
    parents, weights = data
    t, W = padded(parents, weights)
    base = PathDominanceBase(t, W, 3)
    o = OracleTree(parents, weights)
    rng = random.Random(seed)
    for _ in range(30):
        x, y = rng.randint(1, t.n), rng.randint(1, t.n)
        q = tuple(rng.randint(0, 4) for _ in range(3))
        stats = QueryStats()
        want = sorted(v for v in oracle_path(o, x, y)
                      if all(a >= b for a, b in zip(o.weights[v], q)))
        assert base.query(x, y, q, stats) == want
        assert all(p <= 2 * k + 1 for k, p in stats.probes)


@pytest.mark.parametrize("variant", ["theorem1", "theorem2"])
@pytest.mark.parametrize("d", [2, 3])
@given(data=st.data())
def test_index_matches_oracle(variant, d, data):
    parents, weights = data.draw(weighted_trees(d=d, max_n=40))
    ranked, _ = rank_space_reduce(weights)
    t = build_tree(parents)
    idx = AncestorDominanceIndex(t, ranked, variant=variant)
    o = OracleTree(parents, ranked)
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    for _ in range(20):
        x = rng.randint(1, t.n)
        q = tuple(rng.randint(0, t.n + 1) for _ in range(d))
        streamed = []
        assert idx.query(x, q) == oracle_dominance(o, x, q)
        idx.query(x, q, sink=streamed.append)
        assert sorted(streamed) == oracle_dominance(o, x, q)
        assert len(streamed) == len(set(streamed))
    assert idx.query(1, (1,) * d) == [1]
    leaf = t.n
    assert idx.query(leaf, (1,) * d) == sorted(oracle_ancestors(o, leaf))


def test_index_needs_two_dimensions():
    with pytest.raises(VectorDimensionMismatch):
        AncestorDominanceIndex(build_tree([1]), [(1,), (2,)])
