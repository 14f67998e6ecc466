"""Path successor: the smallest first weight at least ``q1`` on a path.

:class:`SuccessorBase` answers the one-dimensional case with a binary
hierarchy over the weights, per-level path min/max indices and a binary search
over the root-to-leaf range path of ``q1``.  :class:`PathSuccessorIndex` lifts
it to ``d`` dimensions through the binary reduction with an argmin semigroup.
"""
from __future__ import annotations

import math
from typing import Optional, Sequence

from .errors import VectorDimensionMismatch
from .extraction import RangeHierarchy, child_ranges
from .framework import (BinaryReduction, Fold, QueryStats, argmin_by, path_query)
from .path_aggregates import PathExtremumIndex
from .weights import pad_weights


def iteration_bound(n: int) -> int:
    lg = math.ceil(math.log2(n)) if n > 1 else 0
    return math.ceil(math.log2(lg + 1)) + 2


class SuccessorBase:
    """One-dimensional path successor over ``tree`` with scalar weights in ``[1, U]``.

    ``weights[x]`` is a 1-tuple (or None for a dummy root).  Ties on the weight
    are broken by the smaller payload, so answers agree across nested trees.
    """

    def __init__(self, tree, weights: Sequence, payload: Sequence,
                 universe: Optional[int] = None, explicit_views: bool = True):
        self.tree = tree
        self.payload = payload
        w1 = [None if w is None else w[0] for w in weights]
        self.w1 = w1
        self.hierarchy = H = RangeHierarchy(tree, w1, 2, universe, explicit_views)
        self.U = H.U
        self.index = [None]
        for l in range(1, H.h + 1):
            src = H.src[l]
            keyed = [None] + [(w1[s], payload[s]) for s in src[1:]]
            self.index.append(PathExtremumIndex(H.levels[l].base, keyed))

    def _source_weight(self, l, v):
        return self.w1[self.hierarchy.src[l][v]]

    def query_up(self, x, z, box, fold, stats):
        v = self.successor_up(x, z, box[0][0], stats)
        if v is not None and self.w1[v] <= box[0][1]:
            fold.push_node(self.payload[v])

    def successor_up(self, x: int, z: int, q1, stats: Optional[QueryStats] = None) -> Optional[int]:
        """Base-tree node on ``A_{x,z}`` with the least weight ``>= q1``, or None."""
        if x == z:
            return None
        q1 = max(1, math.ceil(q1))
        if q1 > self.U:
            return None
        H = self.hierarchy
        h = H.h
        pi = H.path_to(q1)

        def views(l):
            xv = H.view_at(pi[l - 1], x)
            zv = H.view_at(pi[l - 1], z) if z > 0 or not self.tree.has_dummy else None
            return xv, (0 if zv is None else zv)

        # leaf: weight q1 itself on the path
        xl, zl = views(h)
        if xl is not None and xl != zl:
            best = self.index[h].extremum_up(xl, zl, "min")
            return H.src[h][best]
        if h == 1:
            return None
        top = self.index[1].extremum_up(x, z, "max")
        if self._source_weight(1, top) < q1:
            return None
        high, low, iterations = 1, h, 0
        xh, zh = x, z
        while low - high > 1:
            iterations += 1
            mid = (low + high) // 2
            xm, zm = views(mid)
            if xm is None or xm == zm:
                low = mid
                continue
            mu = self.index[mid].extremum_up(xm, zm, "max")
            if self._source_weight(mid, mu) >= q1:
                high, xh, zh = mid, xm, zm
            else:
                low = mid
        if stats is not None:
            stats.iterations.append(iterations)
        u = pi[high - 1]
        (la, lb), (ra, rb) = child_ranges(u.a, u.b, 2)
        assert la <= q1 <= lb, "the range path must continue through the left child"
        near = H.levels[high]._near[2]
        y = near[xh]
        if y <= 0:
            return None
        xs = H.down(high, y, 2, u.a, u.b)
        yz = near[zh]
        zs = H.down(high, yz, 2, u.a, u.b) if yz > 0 else 0
        if xs == zs:
            return None
        best = self.index[high + 1].extremum_up(xs, zs, "min")
        return H.src[high + 1][best]


class PathSuccessorIndex:
    """``d``-dimensional path successor: binary reductions over dims ``d..2`` onto :class:`SuccessorBase`."""

    def __init__(self, tree, weights, explicit_views: bool = True):
        self.tree = tree
        self.weights = W = pad_weights(tree, weights)
        self.d = len(W[tree.n]) if tree.n else 1
        n = tree.n

        def base(t, w, p):
            return SuccessorBase(t, w, p, universe=n, explicit_views=explicit_views)

        def level(k):
            if k == 1:
                return base
            return lambda t, w, p: BinaryReduction(t, w, p, level(k - 1), universe=n,
                                                   explicit_views=explicit_views)

        self.root = level(self.d)(tree, W, list(range(n + 1)))

    def _key(self, v):
        return (self.weights[v][0], v)

    def query(self, x: int, y: int, q1, rest=(), q1_hi=math.inf,
              stats: Optional[QueryStats] = None) -> Optional[int]:
        """Node of ``P_{x,y}`` with least first weight in ``[q1, q1_hi]`` among vectors in ``rest``."""
        if len(rest) != self.d - 1:
            raise VectorDimensionMismatch(f"expected {self.d - 1} ranges after q1, got {len(rest)}")
        self.tree.check(x)
        self.tree.check(y)
        box = ((q1, q1_hi),) + tuple(rest)
        fold = Fold(argmin_by(self._key))
        return path_query(self.root, self.tree, self.weights, x, y, box, fold,
                          stats if stats is not None else QueryStats())


def query_path_successor_1d(base: SuccessorBase, x: int, y: int, q1,
                            stats: Optional[QueryStats] = None) -> Optional[int]:
    tree = base.tree
    tree.check(x)
    tree.check(y)
    z = tree.lca(x, y)
    cands = [base.successor_up(x, z, q1, stats), base.successor_up(y, z, q1, stats)]
    if base.w1[z] is not None and base.w1[z] >= q1:
        cands.append(z)
    cands = [c for c in cands if c is not None]
    if not cands:
        return None
    return min(cands, key=lambda v: (base.w1[v], base.payload[v]))


def query_path_successor(index: PathSuccessorIndex, x, y, q1, rest=(), **kw):
    return index.query(x, y, q1, rest, **kw)
