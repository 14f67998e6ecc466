import random

import pytest
from hypothesis import given, strategies as st

from pathqueries import PathSuccessorIndex, build_tree
from pathqueries.errors import InvalidNode, VectorDimensionMismatch
from pathqueries.framework import QueryStats
from pathqueries.harness import rank_space_reduce
from pathqueries.oracle import OracleTree, oracle_successor
from pathqueries.successor import SuccessorBase, iteration_bound, query_path_successor_1d
from pathqueries.weights import pad_weights
from strategies import T1_PARENTS, T1_WEIGHTS, weighted_trees


@pytest.fixture
def t1_base():
    t = build_tree(T1_PARENTS)
    return SuccessorBase(t, pad_weights(t, [(w,) for w in T1_WEIGHTS]), list(range(6)))


def test_t1_successor(t1_base):
    assert query_path_successor_1d(t1_base, 3, 5, 2) == 1
    assert query_path_successor_1d(t1_base, 3, 5, 1) == 2
    assert query_path_successor_1d(t1_base, 3, 5, 6) is None
    assert query_path_successor_1d(t1_base, 3, 5, 5) == 3


def test_t1_invalid_node(t1_base):
    with pytest.raises(InvalidNode):
        query_path_successor_1d(t1_base, 0, 5, 1)


def test_index_on_t1():
    idx = PathSuccessorIndex(build_tree(T1_PARENTS), [(w,) for w in T1_WEIGHTS])
    assert idx.query(3, 5, 2) == 1
    assert idx.query(3, 5, 2, q1_hi=2) is None
    with pytest.raises(VectorDimensionMismatch):
        idx.query(3, 5, 2, rest=((1, 2),))


def test_empty_second_dimension():
    vecs = [(1, 1), (2, 2), (3, 3)]
    idx = PathSuccessorIndex(build_tree([1, 2]), vecs)
    assert idx.query(3, 1, 1, rest=((3, 2),)) is None
    assert idx.query(3, 1, 1, rest=((2, 3),)) == 2


def test_iteration_bound_values():
    assert iteration_bound(2) == 3
    assert iteration_bound(512) == 6


@pytest.mark.parametrize("explicit", [True, False])
@given(data=weighted_trees(max_n=60), seed=st.integers(0, 10**6))
def test_base_matches_oracle_with_ties(explicit, data, seed):
    # raw weights with repeats: ties must go to the smallest preorder rank
    parents, weights = data
    t = build_tree(parents)
    n = t.n
    base = SuccessorBase(t, pad_weights(t, weights), list(range(n + 1)), explicit_views=explicit)
    o = OracleTree(parents, weights)
    rng = random.Random(seed)
    bound = iteration_bound(n)
    for _ in range(30):
        x, y, q = rng.randint(1, n), rng.randint(1, n), rng.randint(0, n + 1)
        stats = QueryStats()
        assert query_path_successor_1d(base, x, y, q, stats) == oracle_successor(o, x, y, q)
        assert all(i <= bound for i in stats.iterations)


@pytest.mark.parametrize("d", [2, 3])
@given(data=st.data())
def test_index_matches_oracle(d, data):
    parents, weights = data.draw(weighted_trees(d=d, max_n=30))
    ranked, _ = rank_space_reduce(weights)
    t = build_tree(parents)
    idx = PathSuccessorIndex(t, ranked)
    o = OracleTree(parents, ranked)
    n = t.n
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    for _ in range(20):
        x, y, q1 = rng.randint(1, n), rng.randint(1, n), rng.randint(0, n + 1)
        rest = []
        for _ in range(d - 1):
            a, b = rng.randint(0, n + 1), rng.randint(0, n + 1)
            rest.append((min(a, b), max(a, b)))
        assert idx.query(x, y, q1, tuple(rest)) == oracle_successor(o, x, y, q1, rest)
