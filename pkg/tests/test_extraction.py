import pytest
from hypothesis import given, strategies as st

from pathqueries import build_tree
from pathqueries.errors import DummyNode, NoSuchView, WeightOutOfRankSpace
from pathqueries.extraction import (RangeHierarchy, RangeNode, child_index, child_ranges,
                                    extract_tree, level_count, marked_spacing)
from strategies import T1_PARENTS, T1_WEIGHTS, parent_lists, weighted_trees


def scalar(weights):
    return [None] + [w[0] for w in weights]


def all_ranges(H):
    out, frontier = [], [H.root_range]
    while frontier:
        u = frontier.pop()
        if u.a > u.b:
            continue
        out.append(u)
        if u.level < H.h and u.a < u.b:
            frontier.extend(H.children(u))
        elif u.level < H.h:
            # singletons pass straight through to the next level
            frontier.append(RangeNode(u.level + 1, u.a, u.b))
    return out


def lowest_in_range(tree, weights, x, a, b):
    while x > 0:
        if a <= weights[x] <= b:
            return x
        x = tree.parent[x]
    return None


def test_extract_keeps_single_tree():
    t = build_tree(T1_PARENTS)
    e = extract_tree(t, [1, 3, 5])
    assert not e.tree.has_dummy
    assert e.source[1:] == [1, 3, 5]
    assert e.tree.parent[1:] == [-1, 1, 1]


def test_extract_forest_gets_dummy():
    t = build_tree(T1_PARENTS)
    e = extract_tree(t, [3, 5])
    assert e.tree.has_dummy
    assert e.tree.parent[1:] == [0, 0]
    with pytest.raises(DummyNode):
        e.source_of(0)


def test_extract_all_is_identity():
    t = build_tree(T1_PARENTS)
    e = extract_tree(t, range(1, 6))
    assert e.tree.parent == t.parent and e.source[1:] == [1, 2, 3, 4, 5]


def test_extract_empty_is_dummy_only():
    e = extract_tree(build_tree(T1_PARENTS), [])
    assert e.tree.n == 0 and e.tree.has_dummy
    assert e.view(3) is None


def test_child_range_formula():
    assert child_ranges(1, 8, 2) == [(1, 4), (5, 8)]
    assert child_index(5, 1, 8, 2) == 2
    assert child_ranges(1, 5, 2) == [(1, 3), (4, 5)]


@given(st.integers(1, 200), st.integers(2, 9))
def test_child_index_agrees_with_ranges(size, f):
    a, b = 7, 6 + size
    ranges = child_ranges(a, b, f)
    for j in range(a, b + 1):
        i = child_index(j, a, b, f)
        lo, hi = ranges[i - 1]
        assert lo <= j <= hi
    # ranges tile [a, b]
    covered = [j for lo, hi in ranges for j in range(lo, hi + 1)]
    assert covered == list(range(a, b + 1))


def test_level_counts():
    assert level_count(1, 2) == 1
    assert level_count(5, 2) == 4
    assert level_count(256, 3) == 7
    assert marked_spacing(2) == 1 and marked_spacing(256) == 3


def test_single_node_hierarchy():
    H = RangeHierarchy(build_tree([]), [None, 1], 2)
    assert H.h == 1 and H.root_range == RangeNode(1, 1, 1)


def test_weight_outside_rank_space():
    with pytest.raises(WeightOutOfRankSpace):
        RangeHierarchy(build_tree([1]), [None, 1, 3], 2)


def test_t1_descend_and_source():
    H = RangeHierarchy(build_tree(T1_PARENTS), [None] + T1_WEIGHTS, 2)
    assert H.h == 4
    x2 = H.descend(1, 3, 2)
    assert H.source_of(2, x2) == 3
    assert H.source_of(1, 4) == 4
    with pytest.raises(DummyNode):
        H.source_of(2, 0)


def test_t1_descend_without_view():
    H = RangeHierarchy(build_tree(T1_PARENTS), [None] + T1_WEIGHTS, 2)
    # ancestors of node 2 have weights 1 and 3, none in the right child [4, 5]
    with pytest.raises(NoSuchView):
        H.descend(1, 2, 2)


def test_t1_view_at():
    H = RangeHierarchy(build_tree(T1_PARENTS), [None] + T1_WEIGHTS, 2)
    u = RangeNode(3, 1, 2)
    assert H.source_of(3, H.view_at(u, 3)) == 2
    assert H.view_at(H.root_range, 3) == 3
    # weight 2 belongs to node 4 only, not an ancestor of 5
    assert H.view_at(RangeNode(4, 2, 2), 5) is None


@pytest.mark.parametrize("explicit", [True, False])
@given(data=weighted_trees(max_n=48), f=st.integers(2, 5))
def test_view_at_matches_brute_force(explicit, data, f):
    parents, weights = data
    t = build_tree(parents)
    w = scalar(weights)
    H = RangeHierarchy(t, w, f, explicit_views=explicit)
    for u in all_ranges(H):
        for x in t.nodes():
            got = H.view_at(u, x)
            want = lowest_in_range(t, w, x, u.a, u.b)
            assert (None if got is None else H.src[u.level][got]) == want


@given(data=weighted_trees(max_n=48), f=st.integers(2, 5))
def test_annotation_intervals_and_sizes(data, f):
    parents, weights = data
    t = build_tree(parents)
    w = scalar(weights)
    H = RangeHierarchy(t, w, f)
    assert sum(H.levels[l].base.n + 1 for l in range(1, H.h + 1)) == t.n * H.h + H.h
    for u in all_ranges(H):
        _, _, s, e = H.annotation(u)
        inside = [i for i in range(1, t.n + 1) if u.a <= w[H.src[u.level][i]] <= u.b]
        assert inside == list(range(s, e + 1))


@given(data=weighted_trees(max_n=48), f=st.integers(2, 4))
def test_labels_and_descend_compose(data, f):
    parents, weights = data
    t = build_tree(parents)
    w = scalar(weights)
    H = RangeHierarchy(t, w, f)
    for l in range(1, H.h):
        T = H.levels[l]
        for i in range(1, t.n + 1):
            s = H.src[l][i]
            u = H.range_at(l, w[s])
            j = T.labels[i]
            lo, hi = child_ranges(u.a, u.b, f)[j - 1]
            assert lo <= w[s] <= hi
            assert H.source_of(l + 1, H.descend(l, i, j)) == s


@given(parent_lists(max_n=40))
def test_extraction_preserves_ancestry(parents):
    t = build_tree(parents)
    keep = [x for x in t.nodes() if x % 3 != 1]
    e = extract_tree(t, keep)
    src = e.source
    for i in range(1, e.tree.n + 1):
        for k in range(1, e.tree.n + 1):
            assert e.tree.is_ancestor(i, k) == t.is_ancestor(src[i], src[k])
    assert sorted(src[1:]) == keep
    assert src[1:] == sorted(src[1:])
