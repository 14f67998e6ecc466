"""Path reporting.

:class:`ReportingBase1D` is a binary range hierarchy whose canonical level
trees are walked directly: every node on a walked subpath lies in the query
interval, so the walk costs O(1) per reported node.  :class:`ReportingCatalog`
adds small-universe weights with one extraction per orthogonal pattern, and
:class:`PathReportingIndex` reaches it through wide reductions.
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from itertools import combinations_with_replacement, product
from typing import Callable, List, Optional, Sequence

from .errors import VectorDimensionMismatch
from .extraction import extract_tree
from .framework import (BinaryReduction, PathWalk, QueryStats, SinkFold,
                        WideReduction, in_box, wide_factor)
from .weights import pad_weights


class ReportingBase1D:
    """Reports path nodes with scalar weight in ``[q, q']``; weights are ranked internally."""

    def __init__(self, tree, weights: Sequence, payload: Optional[Sequence] = None):
        self.tree = tree
        n = tree.n
        self.payload = payload if payload is not None else list(range(n + 1))
        real = [x for x in tree.nodes() if weights[x] is not None]
        order = sorted(real, key=lambda x: (weights[x][0], x))
        self.sorted_w = [weights[x][0] for x in order]
        ranked = [None] * (n + 1)
        for i, x in enumerate(order, start=1):
            ranked[x] = (i,)
        self.ranked = ranked
        self.m = len(order)
        self.engine = None
        if self.m:
            self.engine = BinaryReduction(tree, ranked, self.payload, PathWalk, universe=self.m)

    def _ranks(self, lo, hi):
        return bisect_left(self.sorted_w, lo) + 1, bisect_right(self.sorted_w, hi)

    def query_up(self, x, z, box, fold, stats):
        if self.engine is None:
            return
        a, b = self._ranks(*box[0])
        if a <= b:
            self.engine.query_up(x, z, ((a, b),), fold, stats)

    def query(self, x: int, y: int, lo, hi, stats: Optional[QueryStats] = None) -> List[int]:
        t = self.tree
        t.check(x)
        t.check(y)
        stats = stats if stats is not None else QueryStats()
        out: List[int] = []
        fold = SinkFold(out.append)
        z = t.lca(x, y)
        self.query_up(x, z, ((lo, hi),), fold, stats)
        self.query_up(y, z, ((lo, hi),), fold, stats)
        a, b = self._ranks(lo, hi)
        if self.ranked[z] is not None and a <= self.ranked[z][0] <= b:
            fold.push_node(self.payload[z])
        return sorted(out)


def small_intervals(c: int):
    """All nonempty intervals of ``[1, c]``."""
    return list(combinations_with_replacement(range(1, c + 1), 2))


class ReportingCatalog:
    """Reporting for ``(w1, g_2..g_d)`` vectors, ``g_i`` in ``[c]``: one 1D base per orthogonal pattern."""

    def __init__(self, tree, weights: Sequence, c: int, payload: Optional[Sequence] = None):
        self.tree = tree
        self.c = c
        real = next((w for w in weights if w is not None), None)
        self.d = 1 if real is None else len(real)
        pay = payload if payload is not None else list(range(tree.n + 1))
        nodes = [x for x in tree.nodes() if weights[x] is not None]
        self.catalog = {}
        for G in product(small_intervals(c), repeat=self.d - 1):
            marked = [x for x in nodes
                      if all(lo <= v <= hi for v, (lo, hi) in zip(weights[x][1:], G))]
            if not marked:
                continue
            ext = extract_tree(tree, marked)
            base = ReportingBase1D(
                ext.tree, [None if s < 0 else weights[s][:1] for s in ext.source],
                [None if s < 0 else pay[s] for s in ext.source])
            self.catalog[G] = (ext, base)

    def query_up(self, x, z, box, fold, stats):
        G = []
        for lo, hi in box[1:]:
            lo, hi = max(lo, 1), min(hi, self.c)
            if lo > hi:
                return
            G.append((lo, hi))
        entry = self.catalog.get(tuple(G))
        if entry is None:
            return
        ext, base = entry
        xv = ext.view(x)
        if xv is None:
            return
        zv = ext.view(z) if z is not None and z >= 0 else None
        base.query_up(xv, -1 if zv is None else zv, box[:1], fold, stats)


class PathReportingIndex:
    """``d``-dimensional path reporting: wide reductions over dims ``d..2`` onto :class:`ReportingCatalog`."""

    def __init__(self, tree, weights, epsilon: float = 0.5, branching: Optional[int] = None):
        self.tree = tree
        self.weights = W = pad_weights(tree, weights)
        n = tree.n
        self.d = d = len(W[n])
        self.f = f = branching or wide_factor(n, epsilon)

        def level(k):
            if k < 1:
                return lambda t, w, p: ReportingCatalog(t, w, f, p)
            return lambda t, w, p: WideReduction(t, w, p, level(k - 1), k, f, universe=n)

        self.root = level(d - 1)(tree, W, list(range(n + 1)))

    def query(self, x: int, y: int, box, stats: Optional[QueryStats] = None,
              sink: Optional[Callable[[int], None]] = None) -> Optional[List[int]]:
        """Nodes of ``P_{x,y}`` with vectors in ``box``, ascending; streamed to ``sink`` when given."""
        if len(box) != self.d:
            raise VectorDimensionMismatch(f"expected {self.d} ranges, got {len(box)}")
        t = self.tree
        t.check(x)
        t.check(y)
        stats = stats if stats is not None else QueryStats()
        out: List[int] = []
        fold = SinkFold(sink if sink is not None else out.append)
        box = tuple(box)
        z = t.lca(x, y)
        self.root.query_up(x, z, box, fold, stats)
        self.root.query_up(y, z, box, fold, stats)
        if in_box(self.weights[z], box):
            fold.push_node(z)
        return None if sink is not None else sorted(out)


def query_reporting_1d(base: ReportingBase1D, x, y, lo, hi, stats=None):
    return base.query(x, y, lo, hi, stats)


def query_reporting_1de(cat: ReportingCatalog, x, y, box, stats=None) -> List[int]:
    t = cat.tree
    t.check(x)
    t.check(y)
    if len(box) != cat.d:
        raise VectorDimensionMismatch(f"expected {cat.d} ranges, got {len(box)}")
    stats = stats if stats is not None else QueryStats()
    out: List[int] = []
    fold = SinkFold(out.append)
    z = t.lca(x, y)
    cat.query_up(x, z, box, fold, stats)
    cat.query_up(y, z, box, fold, stats)
    zp = t.parent[z]
    cat.query_up(z, zp if zp >= 0 else -1, box, fold, stats)
    return sorted(out)


def query_path_reporting(index: PathReportingIndex, x, y, box, stats=None):
    return index.query(x, y, box, stats)
