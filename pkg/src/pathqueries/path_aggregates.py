"""Path extremum and weighted-ancestor indices over scalarly weighted trees.

Both sit on the heavy path decomposition of the tree.  The extremum index
keeps one segment tree over the HLD order holding argmin/argmax node ids,
so it answers with a node and touches O(log n) heavy paths.
"""
from __future__ import annotations

from bisect import bisect_left
from typing import Optional, Sequence

from .errors import MonotonicityViolation
from .ordinal_tree import OrdinalTree

NEG_INF = float("-inf")
POS_INF = float("inf")


class PathExtremumIndex:
    """Argmin/argmax over tree paths; ties go to the smallest node id.

    ``weights[x]`` may be None (dummy root); it loses every comparison.
    """

    def __init__(self, tree: OrdinalTree, weights: Sequence, modes=("min", "max")):
        self.tree = tree
        self.weights = weights
        head, pos, order = tree.hld
        self.head, self.pos, self.order = head, pos, order
        m = len(order)
        self.m = m
        self.seg = {}
        self._keys = {}
        for mode in modes:
            key = self._key(mode)
            seg = [-1] * (2 * m)
            seg[m:] = order
            for i in range(m - 1, 0, -1):
                a, b = seg[2 * i], seg[2 * i + 1]
                seg[i] = a if key(a) <= key(b) else b
            self.seg[mode] = seg

    def _key(self, mode):
        """Integer rank of each node under ``mode``; ties by node id, None last."""
        if mode not in self._keys:
            w = self.weights
            real = [x for x in self.order if w[x] is not None]
            real.sort()
            real.sort(key=w.__getitem__, reverse=(mode == "max"))
            rank = [len(w) + 1] * len(w)
            for i, x in enumerate(real):
                rank[x] = i
            self._keys[mode] = rank
        return self._keys[mode].__getitem__

    def _range(self, mode, lo, hi, best, key):
        """Fold positions ``[lo, hi)`` of the HLD order into ``best``."""
        seg, m = self.seg[mode], self.m
        lo += m
        hi += m
        while lo < hi:
            if lo & 1:
                c = seg[lo]
                if best < 0 or key(c) < key(best):
                    best = c
                lo += 1
            if hi & 1:
                hi -= 1
                c = seg[hi]
                if best < 0 or key(c) < key(best):
                    best = c
            lo >>= 1
            hi >>= 1
        return best

    def extremum_up(self, x: int, z: Optional[int], mode: str = "max",
                    best: int = -1) -> int:
        """Extremal node on ``A_{x,z}``; ``z=None`` means the whole root path.

        Returns -1 when the path is empty.
        """
        head, pos, parent = self.head, self.pos, self.tree.parent
        key = self._key(mode)
        zd = -1 if z is None else self.tree.depth_of[z]
        depth = self.tree.depth_of
        while x >= 0 and depth[x] > zd:
            hx = head[x]
            if depth[hx] > zd:
                best = self._range(mode, pos[hx], pos[x] + 1, best, key)
                x = parent[hx]
            else:
                best = self._range(mode, pos[x] - (depth[x] - zd) + 1, pos[x] + 1, best, key)
                break
        return best

    def path_extremum(self, x: int, y: int, mode: str = "min") -> int:
        t = self.tree
        t.check(x)
        t.check(y)
        z = t.lca(x, y)
        best = self.extremum_up(x, z, mode)
        best = self.extremum_up(y, z, mode, best)
        key = self._key(mode)
        if best < 0 or key(z) < key(best):
            best = z
        return best


class WeightedAncestorIndex:
    """Highest ancestor with weight at least ``kappa`` on upward-decreasing trees."""

    def __init__(self, tree: OrdinalTree, weights: Sequence):
        self.tree = tree
        self.weights = weights
        par = tree.parent
        for x in tree.nodes():
            p = par[x]
            if p >= 0 and weights[p] is not None and not weights[x] > weights[p]:
                raise MonotonicityViolation(
                    f"weight of {x} ({weights[x]}) must exceed its parent's ({weights[p]})")
        head, pos, order = tree.hld
        self.head, self.pos, self.order = head, pos, order
        self.hw = [NEG_INF if weights[v] is None else weights[v] for v in order]

    def weighted_ancestor(self, x: int, kappa) -> Optional[int]:
        self.tree.check(x)
        head, pos, parent, hw = self.head, self.pos, self.tree.parent, self.hw
        if hw[pos[x]] < kappa:
            return None
        # heavy-path segments from x upwards; weights increase downwards along each
        segs = []
        while x >= 0:
            hx = head[x]
            segs.append((pos[hx], pos[x]))
            x = parent[hx]
        for lo, hi in reversed(segs):
            if hw[hi] >= kappa:
                return self.order[bisect_left(hw, kappa, lo, hi + 1)]
        return None
