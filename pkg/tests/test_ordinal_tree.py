import random

import pytest
from hypothesis import given, strategies as st

from pathqueries import build_tree
from pathqueries.errors import (ChildIndexOutOfRange, CycleOrForwardParent, InvalidNode,
                                LabelOutOfRange)
from strategies import T1_PARENTS, parent_lists


@pytest.fixture
def t1():
    return build_tree(T1_PARENTS, labels=[1, 2, 1, 2, 1], sigma=2)


def naive_ancestors(parent, x):
    out = []
    while x > 0:
        out.append(x)
        x = parent[x]
    return out


def test_single_node():
    t = build_tree([])
    assert t.n == 1 and t.depth(1) == 1


def test_t1_shape(t1):
    t = t1.base
    assert t.parent[1:] == [-1, 1, 2, 2, 1]
    assert t.children[1] == [2, 5] and t.children[2] == [3, 4]


def test_forward_parent_rejected():
    with pytest.raises(CycleOrForwardParent):
        build_tree([2])


def test_non_preorder_rejected():
    # node 4 under 2 after node 3 closed the subtree of 2
    with pytest.raises(CycleOrForwardParent):
        build_tree([1, 1, 2])


def test_label_out_of_range():
    with pytest.raises(LabelOutOfRange):
        build_tree([1], labels=[1, 3], sigma=2)


@pytest.mark.parametrize("x,y,z", [(3, 4, 2), (4, 5, 1), (3, 3, 3), (1, 4, 1)])
def test_lca_t1(t1, x, y, z):
    assert t1.base.lca(x, y) == z


def test_lca_invalid(t1):
    with pytest.raises(InvalidNode):
        t1.base.lca(0, 3)
    with pytest.raises(InvalidNode):
        t1.base.lca(1, 6)


def test_level_anc_label(t1):
    assert t1.level_anc_label(4, 1, 1) == 1
    assert t1.level_anc_label(4, 2, 1) == 4
    assert t1.level_anc_label(4, 2, 2) == 2
    assert t1.level_anc_label(1, 2, 1) is None


def test_pre_rank_select(t1):
    assert t1.pre_rank(4, 1) == 2
    assert t1.pre_rank(1, 1) == 0
    assert t1.pre_rank(5, 2) == 2
    assert t1.pre_select(3, 1) == 5
    assert t1.pre_select(3, 2) is None


def test_node_info(t1):
    t = t1.base
    assert t.depth(3) == 3 and t.depth(1) == 1
    assert t.child(1, 2) == 5
    info = t.node_info(2)
    assert info.parent == 1 and info.children == (3, 4)
    with pytest.raises(ChildIndexOutOfRange):
        t.child(3, 1)


@given(parent_lists(max_n=60))
def test_lca_matches_naive(parents):
    t = build_tree(parents)
    rng = random.Random(len(parents))
    for _ in range(30):
        x, y = rng.randint(1, t.n), rng.randint(1, t.n)
        ax = naive_ancestors(t.parent, x)
        ay = set(naive_ancestors(t.parent, y))
        assert t.lca(x, y) == next(a for a in ax if a in ay)


@given(parent_lists(max_n=60))
def test_depth_and_level_anc(parents):
    t = build_tree(parents)
    for x in range(2, t.n + 1):
        assert t.depth(x) == t.depth(t.parent[x]) + 1
        anc = naive_ancestors(t.parent, x)
        for i in range(len(anc)):
            y = t.level_anc(x, i)
            assert y == anc[i]
            assert t.lca(x, y) == y
        assert t.level_anc(x, len(anc)) is None


@given(parent_lists(max_n=80), st.integers(1, 8), st.randoms(use_true_random=False))
def test_rank_select_inverse(parents, sigma, rng):
    n = len(parents) + 1
    labels = [rng.randint(1, sigma) for _ in range(n)]
    t = build_tree(parents, labels, sigma)
    for a in range(1, sigma + 1):
        members = [x for x in range(1, n + 1) if labels[x - 1] == a]
        for i, x in enumerate(members, start=1):
            assert t.pre_rank(x, a) == i - 1
            assert t.pre_select(i, a) == x
        assert t.pre_select(len(members) + 1, a) is None


@given(parent_lists(max_n=60), st.randoms(use_true_random=False))
def test_level_anc_label_matches_scan(parents, rng):
    n = len(parents) + 1
    labels = [rng.randint(1, 3) for _ in range(n)]
    t = build_tree(parents, labels, 3)
    for x in range(1, n + 1):
        anc = naive_ancestors(t.base.parent, x)
        for a in (1, 2, 3):
            hits = [y for y in anc if labels[y - 1] == a]
            for i in range(1, len(hits) + 2):
                want = hits[i - 1] if i <= len(hits) else None
                assert t.level_anc_label(x, a, i) == want
