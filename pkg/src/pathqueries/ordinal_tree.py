"""Ordinal trees identified by preorder rank, with labeled rank/select.

Node ``i`` is the node with preorder rank ``i``.  A tree either has a real
root with id 1, or a dummy root with id 0 (depth 0) gluing a forest together.
Every array is indexed by node id; slot 0 is unused when there is no dummy.
"""
from __future__ import annotations

from bisect import bisect_left
from functools import cached_property
from itertools import accumulate
from typing import NamedTuple, Optional, Sequence

from .errors import (ChildIndexOutOfRange, CycleOrForwardParent, InvalidNode,
                     LabelOutOfRange)


class NodeInfo(NamedTuple):
    depth: int
    parent: Optional[int]
    children: tuple


class OrdinalTree:
    """Static ordinal tree on nodes ``root..n``.

    ``parent[root]`` is -1.  Construction trusts its input; use
    :func:`build_tree` for validated construction from user data.
    """

    def __init__(self, parent: Sequence[int], root: int = 1):
        if root not in (0, 1):
            raise ValueError("root must be 0 (dummy) or 1")
        self.root = root
        self.n = len(parent) - 1
        parent = list(parent)
        parent[root] = -1
        if root == 1:
            parent[0] = -1
        self.parent = parent
        depth = [0] * (self.n + 1)
        depth[root] = 1 if root == 1 else 0
        for x in range(root + 1, self.n + 1):
            depth[x] = depth[parent[x]] + 1
        self.depth_of = depth
        size = [1] * (self.n + 1)
        for x in range(self.n, root, -1):
            size[parent[x]] += size[x]
        self.size = size

    @property
    def has_dummy(self) -> bool:
        return self.root == 0

    def __len__(self):
        return self.n + 1 - self.root

    def nodes(self):
        return range(self.root, self.n + 1)

    def check(self, x: int) -> int:
        if not (self.root <= x <= self.n):
            raise InvalidNode(f"node {x} not in [{self.root}, {self.n}]")
        return x

    def is_ancestor(self, a: int, x: int) -> bool:
        """True when ``a`` is an ancestor of ``x`` (a node is its own ancestor)."""
        return a <= x < a + self.size[a]

    def depth(self, x: int) -> int:
        return self.depth_of[self.check(x)]

    def parent_of(self, x: int) -> Optional[int]:
        p = self.parent[self.check(x)]
        return None if p < 0 else p

    @cached_property
    def children(self) -> list:
        ch = [[] for _ in range(self.n + 1)]
        par = self.parent
        for x in range(self.root + 1, self.n + 1):
            ch[par[x]].append(x)
        return ch

    def child(self, x: int, i: int) -> int:
        ch = self.children[self.check(x)]
        if not 1 <= i <= len(ch):
            raise ChildIndexOutOfRange(f"node {x} has {len(ch)} children, asked for {i}")
        return ch[i - 1]

    def node_info(self, x: int) -> NodeInfo:
        return NodeInfo(self.depth(x), self.parent_of(x), tuple(self.children[x]))

    # -- LCA: Euler tour + sparse table over depths ------------------------
    @cached_property
    def _euler(self):
        children = self.children
        tour, first = [], [0] * (self.n + 1)
        stack = [(self.root, 0)]
        while stack:
            x, i = stack.pop()
            if i == 0:
                first[x] = len(tour)
            tour.append(x)
            if i < len(children[x]):
                stack.append((x, i + 1))
                stack.append((children[x][i], 0))
        depth = self.depth_of
        table = [tour]
        j = 1
        while 2 * j <= len(tour):
            prev = table[-1]
            table.append([a if depth[a] <= depth[b] else b
                          for a, b in zip(prev, prev[j:])])
            j *= 2
        return first, table

    def lca(self, x: int, y: int) -> int:
        self.check(x)
        self.check(y)
        first, table = self._euler
        i, j = first[x], first[y]
        if i > j:
            i, j = j, i
        k = (j - i + 1).bit_length() - 1
        a, b = table[k][i], table[k][j - (1 << k) + 1]
        return a if self.depth_of[a] <= self.depth_of[b] else b

    # -- heavy path decomposition ------------------------------------------
    @cached_property
    def hld(self):
        """``(head, pos, order)``: heavy-path heads, HLD positions and their inverse."""
        n, root, size, children = self.n, self.root, self.size, self.children
        head = [0] * (n + 1)
        pos = [0] * (n + 1)
        order = []
        stack = [root]
        head[root] = root
        while stack:
            x = stack.pop()
            pos[x] = len(order)
            order.append(x)
            ch = children[x]
            if not ch:
                continue
            heavy = max(ch, key=lambda c: size[c])
            for c in reversed(ch):
                if c != heavy:
                    head[c] = c
                    stack.append(c)
            head[heavy] = head[x]
            stack.append(heavy)
        return head, pos, order

    def level_anc(self, x: int, i: int) -> Optional[int]:
        """The ``i``-th lowest proper ancestor of ``x``, or None."""
        self.check(x)
        if i < 0:
            raise ValueError("i must be non-negative")
        return self.ancestor_at_depth(x, self.depth_of[x] - i)

    def ancestor_at_depth(self, x: int, d: int) -> Optional[int]:
        depth = self.depth_of
        if d < depth[self.root] or d > depth[x]:
            return None
        head, pos, order = self.hld
        parent = self.parent
        while depth[head[x]] > d:
            x = parent[head[x]]
        return order[pos[x] - (depth[x] - d)]


class LabeledTree:
    """An :class:`OrdinalTree` whose nodes carry labels in ``[sigma]``.

    Label 0 means "unlabeled" and is used for dummy roots and for the
    unmarked side of 0/1 marker trees.
    """

    def __init__(self, base: OrdinalTree, labels: Sequence[int], sigma: int):
        if len(labels) != base.n + 1:
            raise ValueError("one label per node slot expected")
        self.base = base
        self.labels = labels
        self.sigma = sigma
        n, par = base.n, base.parent
        self._rank = [None]
        self._near = [None]
        for a in range(1, sigma + 1):
            self._rank.append([0] + list(accumulate(int(lab == a) for lab in labels)))
            near = [-1] * (n + 2)
            for x in range(base.root, n + 1):
                near[x] = x if labels[x] == a else near[par[x]]
            self._near.append(near)

    def label(self, x: int) -> int:
        return self.labels[self.base.check(x)]

    def _alpha(self, a: int) -> int:
        if not 1 <= a <= self.sigma:
            raise LabelOutOfRange(f"label {a} not in [1, {self.sigma}]")
        return a

    def count(self, a: int) -> int:
        return self._rank[self._alpha(a)][-1]

    def pre_rank(self, x: int, a: int) -> int:
        """Number of ``a``-nodes with preorder rank strictly less than ``x``."""
        return self._rank[self._alpha(a)][self.base.check(x)]

    def pre_select(self, i: int, a: int) -> Optional[int]:
        """Preorder rank of the ``i``-th ``a``-node, or None."""
        rank = self._rank[self._alpha(a)]
        if i < 1 or i > rank[-1]:
            return None
        return bisect_left(rank, i) - 1

    def level_anc_label(self, x: int, a: int, i: int = 1) -> Optional[int]:
        """The ``i``-th lowest ``a``-ancestor of ``x``; ``x`` itself is a candidate."""
        near = self._near[self._alpha(a)]
        y = near[self.base.check(x)]
        par = self.base.parent
        while y >= 0 and i > 1:
            y = near[par[y]]
            i -= 1
        return None if y < 0 else y

    def nearest(self, x: int, a: int) -> int:
        """Unchecked ``level_anc_label(x, a, 1)`` returning -1 for none."""
        return self._near[a][x]

    def view(self, x: int, a: int = 1) -> Optional[int]:
        """Id of ``x``'s view in the tree extracted from the ``a``-nodes."""
        y = self._near[a][x]
        return None if y < 0 else self._rank[a][y] + 1


def build_tree(parents: Sequence[int], labels: Optional[Sequence[int]] = None,
               sigma: Optional[int] = None):
    """Build a tree on ``len(parents) + 1`` nodes; ``parents[i]`` is the parent of node ``i + 2``.

    Returns a :class:`LabeledTree` when labels are given, else an :class:`OrdinalTree`.
    """
    n = len(parents) + 1
    parent = [-1, -1]
    stack = [1]
    for i, p in enumerate(parents, start=2):
        if not 1 <= p < i:
            raise CycleOrForwardParent(f"parent {p} of node {i} must lie in [1, {i - 1}]")
        while stack and stack[-1] != p:
            stack.pop()
        if not stack:
            raise CycleOrForwardParent(f"node {i} breaks preorder numbering under parent {p}")
        stack.append(i)
        parent.append(p)
    tree = OrdinalTree(parent, root=1)
    if labels is None:
        return tree
    if len(labels) != n:
        raise ValueError(f"expected {n} labels, got {len(labels)}")
    sigma = sigma if sigma is not None else max(labels)
    for x, lab in enumerate(labels, start=1):
        if not 1 <= lab <= sigma:
            raise LabelOutOfRange(f"label {lab} of node {x} not in [1, {sigma}]")
    return LabeledTree(tree, [0] + list(labels), sigma)
