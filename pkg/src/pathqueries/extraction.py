"""Tree extraction and the range hierarchy over one weight dimension.

A :class:`RangeHierarchy` materialises every level of a conceptual range tree
over ``[1, U]`` as one extracted tree ``T_l`` whose nodes are grouped by
level-``l`` range and labeled with the child range they fall into one level
down.  It provides constant-time level descent, ball inheritance (explicit
source arrays) and direct view location through marked levels.
"""
from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence

from .errors import DummyNode, NoSuchView, WeightOutOfRankSpace
from .ordinal_tree import LabeledTree, OrdinalTree


@dataclass
class ExtractedTree:
    tree: OrdinalTree
    source: List[int]          # source[i] is the parent-tree node of copy i; -1 for a dummy
    marker: LabeledTree        # parent topology, label 1 iff extracted

    def view(self, y: int) -> Optional[int]:
        """Copy of the lowest extracted ancestor of ``y``, or None."""
        if y < 0:
            return None
        return self.marker.view(y)

    def source_of(self, i: int) -> int:
        if self.source[i] < 0:
            raise DummyNode("the dummy root has no source")
        return self.source[i]

    @property
    def size(self) -> int:
        return self.tree.n


def extract_tree(tree: OrdinalTree, nodes) -> ExtractedTree:
    """Extract ``nodes`` from ``tree``, splicing children of removed nodes in place.

    A dummy root (id 0) is added unless the survivors form a single tree;
    an empty selection yields a dummy-only tree.
    """
    labels = [0] * (tree.n + 1)
    for x in nodes:
        tree.check(x)
        if x == 0 and tree.has_dummy:
            raise DummyNode("dummy roots cannot be extracted")
        labels[x] = 1
    marker = LabeledTree(tree, labels, 1)
    source = [-1] + [x for x in tree.nodes() if labels[x]]
    near, rank = marker._near[1], marker._rank[1]
    par = [-1] * len(source)
    roots = 0
    for i in range(1, len(source)):
        a = near[tree.parent[source[i]]]
        if a < 0:
            par[i] = 0
            roots += 1
        else:
            par[i] = rank[a] + 1
    root = 1 if roots == 1 else 0
    if root == 1:
        source[0] = -1
    return ExtractedTree(OrdinalTree(par, root=root), source, marker)


# -- range arithmetic -------------------------------------------------------

def child_ranges(a: int, b: int, f: int):
    """The ``f`` child ranges of ``[a, b]`` (some empty when ``b - a + 1 < f``)."""
    s = b - a + 1
    return [(-(-(i - 1) * s // f) + a, -(-i * s // f) + a - 1) for i in range(1, f + 1)]


def child_index(j: int, a: int, b: int, f: int) -> int:
    """1-based index of the child range of ``[a, b]`` containing ``j``."""
    return (j - a) * f // (b - a + 1) + 1


def level_count(universe: int, f: int) -> int:
    """``ceil(log_f U) + 1`` computed exactly."""
    k, p = 0, 1
    while p < universe:
        p *= f
        k += 1
    return k + 1


def marked_spacing(n: int) -> int:
    if n <= 2:
        return 1
    return max(1, math.ceil(math.log2(math.log2(n))))


class RangeNode(NamedTuple):
    level: int
    a: int
    b: int


class RangeHierarchy:
    """Hierarchical tree extraction over ``weights`` (``None`` for a dummy root).

    ``levels[l]`` is the labeled tree ``T_l`` (index 0 unused), always with a
    dummy root 0, and ``src[l][i]`` maps a copy back to its node in ``tree``.
    """

    def __init__(self, tree: OrdinalTree, weights: Sequence, f: int,
                 universe: Optional[int] = None, explicit_views: bool = True):
        if f < 2:
            raise ValueError("branching factor must be at least 2")
        n = tree.n
        U = universe if universe is not None else n
        self.tree, self.f, self.U, self.n = tree, f, U, n
        self.weights = weights
        cnt = [0] * (U + 1)
        for x in range(1, n + 1):
            w = weights[x]
            if w is None or not 1 <= w <= U:
                raise WeightOutOfRankSpace(f"weight {w!r} of node {x} not in [1, {U}]")
            cnt[w] += 1
        for j in range(1, U + 1):
            cnt[j] += cnt[j - 1]
        self.cnt_le = cnt
        self.h = level_count(U, f)
        self.spacing = marked_spacing(n)
        self.explicit_views = explicit_views
        self.levels: List[Optional[LabeledTree]] = [None]
        self.src: List[Optional[list]] = [None]
        self.views = {}
        self._build()

    def _build(self):
        tree, f, n, w = self.tree, self.f, self.n, self.weights
        size = tree.size
        lo = [1] * (n + 1)
        hi = [self.U] * (n + 1)
        order = list(range(1, n + 1))
        for l in range(1, self.h + 1):
            order = sorted(order, key=lo.__getitem__)
            pos = [0] * (n + 1)
            for i, x in enumerate(order, start=1):
                pos[x] = i
            par = [-1] * (n + 1)
            stacks = {}
            for x in range(1, n + 1):
                st = stacks.setdefault(lo[x], [])
                while st and st[-1] + size[st[-1]] <= x:
                    st.pop()
                par[pos[x]] = pos[st[-1]] if st else 0
                st.append(x)
            labels = [0] * (n + 1)
            for x in range(1, n + 1):
                a, b = lo[x], hi[x]
                j = (w[x] - a) * f // (b - a + 1) + 1
                labels[pos[x]] = j
                s = b - a + 1
                lo[x] = -(-(j - 1) * s // f) + a
                hi[x] = -(-j * s // f) + a - 1
            t_l = OrdinalTree(par, root=0)
            self.levels.append(LabeledTree(t_l, labels, f))
            self.src.append([-1] + order)
            if self.explicit_views and self.is_marked(l) and l > 1:
                self.views[l] = self._explicit_arrays(l)

    def _explicit_arrays(self, l):
        src = self.src[l]
        arrays, i = {}, 1
        while i <= self.n:
            w = self.weights[src[i]]
            u = self.range_at(l, w)
            _, _, s, t = self.annotation(u)
            arrays[u.a] = src[s:t + 1]
            i = t + 1
        return arrays

    # -- range tree navigation --------------------------------------------
    @property
    def root_range(self) -> RangeNode:
        return RangeNode(1, 1, self.U)

    def children(self, u: RangeNode):
        return [RangeNode(u.level + 1, a, b) for a, b in child_ranges(u.a, u.b, self.f)]

    def range_at(self, level: int, value: int) -> RangeNode:
        a, b, f = 1, self.U, self.f
        for _ in range(level - 1):
            j = (value - a) * f // (b - a + 1) + 1
            s = b - a + 1
            a, b = -(-(j - 1) * s // f) + a, -(-j * s // f) + a - 1
        return RangeNode(level, a, b)

    def path_to(self, value: int) -> List[RangeNode]:
        """Root-to-leaf ranges containing ``value``; index ``l - 1`` is level ``l``."""
        return [self.range_at(l, value) for l in range(1, self.h + 1)]

    def annotation(self, u: RangeNode):
        """``(a_u, b_u, s_u, t_u)``: copies of weights in ``[a_u, b_u]`` fill ``[s_u, t_u]`` of ``T_l``."""
        if u.a > u.b:
            return u.a, u.b, 1, 0
        return u.a, u.b, self.cnt_le[u.a - 1] + 1, self.cnt_le[u.b]

    def is_marked(self, l: int) -> bool:
        return l % self.spacing == 0

    # -- level maps ---------------------------------------------------------
    def down(self, l: int, y: int, j: int, a: int, b: int) -> int:
        """Copy in ``T_{l+1}`` of ``j``-labeled node ``y`` of ``T_l`` lying in range ``[a, b]``."""
        rank = self.levels[l]._rank[j]
        s = b - a + 1
        aj = -(-(j - 1) * s // self.f) + a
        return self.cnt_le[aj - 1] + 1 + rank[y] - rank[self.cnt_le[a - 1] + 1]

    def descend(self, l: int, x: int, j: int) -> int:
        """Map ``x`` in ``T_l`` to the ``T_{l+1}`` copy of its lowest ``j``-labeled ancestor."""
        if not 1 <= l < self.h:
            raise ValueError(f"level {l} has no level below it")
        t_l = self.levels[l]
        y = t_l.level_anc_label(x, j, 1)
        if y is None or y == 0:
            raise NoSuchView(f"node {x} of T_{l} has no {j}-labeled ancestor")
        u = self.range_at(l, self.weights[self.src[l][y]])
        return self.down(l, y, j, u.a, u.b)

    def source_of(self, l: int, x: int) -> int:
        src = self.src[l]
        if not 0 <= x < len(src):
            raise NoSuchView(f"node {x} not in T_{l}")
        if x == 0:
            raise DummyNode("dummy root of T_l has no source")
        return src[x]

    def view_at(self, u: RangeNode, x: int) -> Optional[int]:
        """``T_l`` copy of the lowest ancestor of ``x`` with weight in ``u``'s range."""
        if u.a > u.b or x <= 0 and self.tree.has_dummy:
            return None
        l = u.level
        if l == 1:
            return x
        base = (l // self.spacing) * self.spacing
        if base <= 1:
            chi, base = x, 1
        else:
            chi = self._marked_view(self.range_at(base, u.a), x)
        a, b, f = None, None, self.f
        for lev in range(base, l):
            if chi is None:
                return None
            if a is None:
                a, b = self.range_at(lev, u.a)[1:]
            j = (u.a - a) * f // (b - a + 1) + 1
            y = self.levels[lev]._near[j][chi]
            if y <= 0:
                return None
            chi = self.down(lev, y, j, a, b)
            s = b - a + 1
            a, b = -(-(j - 1) * s // f) + a, -(-j * s // f) + a - 1
        return chi

    def _marked_view(self, u: RangeNode, x: int) -> Optional[int]:
        _, _, s, t = self.annotation(u)
        if s > t:
            return None
        if self.explicit_views:
            arr, lo, hi = self.views[u.level][u.a], 0, t - s + 1
        else:
            arr, lo, hi = self.src[u.level], s, t + 1
        i = bisect_right(arr, x, lo, hi) - 1
        if i < lo:
            return None
        chi = self.tree.lca(x, arr[i])
        wc = self.weights[chi]
        if wc is not None and u.a <= wc <= u.b:
            return bisect_left(arr, chi, lo, hi) - lo + s
        k = bisect_right(arr, chi, lo, hi)
        p = self.levels[u.level].base.parent[k - lo + s]
        return p if p > 0 else None
