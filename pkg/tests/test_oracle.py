import pytest

from pathqueries.errors import InvalidNode
from pathqueries.oracle import (OracleTree, oracle_ancestors, oracle_count, oracle_dominance,
                                oracle_path, oracle_query, oracle_report, oracle_successor)
from strategies import T1_PARENTS, T1_VECTORS, T1_WEIGHTS


@pytest.fixture
def t1():
    return OracleTree(T1_PARENTS, [(w,) for w in T1_WEIGHTS])


def test_paths(t1):
    assert oracle_path(t1, 3, 5) == [3, 2, 1, 5]
    assert oracle_path(t1, 4, 4) == [4]
    assert oracle_path(t1, 1, 4) == [1, 2, 4]
    assert oracle_ancestors(t1, 4) == [4, 2, 1]
    with pytest.raises(InvalidNode):
        oracle_path(t1, 0, 1)


def test_definitions_on_t1(t1):
    assert oracle_count(t1, 3, 5, ((2, 4),)) == 2
    assert oracle_report(t1, 3, 5, ((2, 4),)) == [1, 5]
    assert oracle_successor(t1, 3, 5, 2) == 1
    assert oracle_successor(t1, 3, 5, 6) is None
    assert oracle_successor(t1, 3, 5, 2, q1_hi=2) is None


def test_dominance_on_vectors():
    t = OracleTree(T1_PARENTS, T1_VECTORS)
    assert oracle_dominance(t, 4, (1, 3)) == [2, 4]
    assert oracle_query(t, "dom", (4, (1, 3))) == [2, 4]


def test_successor_tie_goes_to_smallest_rank():
    t = OracleTree([1, 2], [(4,), (2,), (2,)])
    assert oracle_successor(t, 3, 1, 1) == 2


def test_three_node_definitions():
    t = OracleTree([1, 1], [(1, 9), (5, 5), (3, 1)])
    assert oracle_query(t, "count", (2, 3, ((1, 5), (1, 5)))) == 2
    assert oracle_query(t, "report", (2, 3, ((3, 5), (1, 9)))) == [2, 3]
    assert oracle_query(t, "succ", (2, 3, 2, ((2, 9),))) == 2
    with pytest.raises(ValueError):
        oracle_query(t, "nope", ())
