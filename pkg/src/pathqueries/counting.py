"""Path counting.

The base case counts over weight vectors whose every coordinate lies in a
small universe ``[c]``.  The tree is covered by mini-trees, each mini-tree by
micro-trees; a root-path count is then three reads: the micro-tree table
entry, the micro-tree's count array and the mini-tree's count array.
:class:`PathCountingIndex` reaches the base through ``d`` wide reductions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import VectorDimensionMismatch, WeightOutOfSmallUniverse
from .framework import (COUNT, Fold, QueryStats, WideReduction, in_box,
                        path_query, wide_factor)
from .weights import pad_weights


# -- tree covering ------------------------------------------------------------

@dataclass
class Component:
    root: int
    nodes: List[int]          # preorder; nodes[0] is the root


def greedy_cover(root: int, children, L: int) -> List[Component]:
    """Bottom-up cover into connected pieces sharing at most their roots.

    Every piece has at most ``2L`` nodes and every node other than ``root``
    is a non-root member of exactly one piece.
    """
    post, stack = [], [root]
    while stack:
        v = stack.pop()
        post.append(v)
        stack.extend(children(v))
    post.reverse()
    comps: List[Component] = []
    pending: Dict[int, Tuple[list, int]] = {}     # node -> (chunks, size) of its open piece
    for v in post:
        group, gsize = [], 0
        keep, ksize = [[v]], 1
        for c in children(v):
            chunks, size = pending.pop(c)
            group.extend(chunks)
            gsize += size
            if gsize >= L:
                comps.append(_close(v, group))
                group, gsize = [], 0
        keep.extend(group)
        pending[v] = (keep, ksize + gsize)
    chunks, _ = pending.pop(root)
    comps.append(_close(root, chunks[1:]))
    return comps


def _close(root, chunks) -> Component:
    nodes = sorted(x for ch in chunks for x in ch)
    return Component(root, [root] + nodes)


# -- count arrays -------------------------------------------------------------

def interval_matrix(c: int) -> np.ndarray:
    """``B[(i, j), v] = 1`` iff ``i <= v <= j`` over ``[c]``; empty intervals give zero rows."""
    B = np.zeros((c * c, c), dtype=np.int64)
    for i in range(c):
        for j in range(i, c):
            B[i * c + j, i:j + 1] = 1
    return B


class CountingBase:
    """Path counting over ``(0, d, eps)`` vectors: all coordinates in ``[1, c]``.

    ``weights[x]`` is a ``d``-tuple (None for a dummy root); ``payload`` is
    accepted for factory compatibility and ignored.
    """

    def __init__(self, tree, weights: Sequence, c: int, payload=None,
                 mini: Optional[int] = None, micro: Optional[int] = None):
        self.tree = tree
        self.weights = weights
        self.c = c
        real = next((w for w in weights if w is not None), ())
        self.d = d = len(real)
        for x in tree.nodes():
            w = weights[x]
            if w is None:
                continue
            if len(w) != d:
                raise VectorDimensionMismatch(f"node {x} has {len(w)} weights, expected {d}")
            if not all(1 <= v <= c for v in w):
                raise WeightOutOfSmallUniverse(f"weights {w} of node {x} not in [1, {c}]")
        n = max(tree.n, 2)
        self.L = mini or max(2, c ** (2 * d) * math.ceil(math.log2(n)))
        self.Lm = micro or max(2, c ** (2 * d))
        self._B = interval_matrix(c)
        self._build()

    # Q-index of per-dimension intervals; first dimension most significant
    def q_index(self, box) -> int:
        c, idx = self.c, 0
        for lo, hi in box:
            lo, hi = max(lo, 1), min(hi, c)
            if lo > hi:
                return -1
            idx = idx * c * c + (lo - 1) * c + (hi - 1)
        return idx

    def _counts(self, hist: np.ndarray) -> list:
        t = hist
        for axis in range(self.d):
            t = np.moveaxis(np.tensordot(self._B, t, axes=([1], [axis])), 0, axis)
        return t.reshape(-1).tolist()

    def _build(self):
        tree, c, d, W = self.tree, self.c, self.d, self.weights
        ch = tree.children
        rho = tree.root
        self.minis = greedy_cover(rho, ch.__getitem__, self.L)
        n1 = tree.n + 1
        self.mini_of = [-1] * n1
        self.micro_of = [-1] * n1
        self.local = [-1] * n1
        for bi, comp in enumerate(self.minis):
            for x in comp.nodes[1:]:
                self.mini_of[x] = bi
        self.micros: List[Component] = []
        self.micro_parent: List[int] = []
        for bi, comp in enumerate(self.minis):
            member = set(comp.nodes)
            kids = lambda v, member=member: [u for u in ch[v] if u in member]
            for mc in greedy_cover(comp.root, kids, self.Lm):
                if len(mc.nodes) == 1:
                    continue
                mi = len(self.micros)
                self.micros.append(mc)
                self.micro_parent.append(bi)
                for k, x in enumerate(mc.nodes):
                    if k:
                        self.micro_of[x] = mi
                        self.local[x] = k
        # root-path histograms at piece roots via one DFS
        shape = (c,) * d
        want = {comp.root for comp in self.minis} | {mc.root for mc in self.micros}
        hist = np.zeros(shape, dtype=np.int64)
        snap = {}
        stack = [(rho, False)]
        while stack:
            v, leaving = stack.pop()
            w = W[v]
            if leaving:
                if w is not None and v != rho:
                    hist[tuple(k - 1 for k in w)] -= 1
                continue
            if w is not None and v != rho:
                hist[tuple(k - 1 for k in w)] += 1
            if v in want:
                snap[v] = hist.copy()
            stack.append((v, True))
            stack.extend((u, False) for u in reversed(ch[v]))
        self.mini_cnt = [self._counts(snap[comp.root]) for comp in self.minis]
        self.micro_cnt = [self._counts(snap[mc.root] - snap[self.minis[b].root])
                          for mc, b in zip(self.micros, self.micro_parent)]
        # shared micro-tree table keyed by (topology, labeling)
        self.table: Dict[tuple, list] = {}
        self.micro_key: List[tuple] = []
        for mc in self.micros:
            pos = {x: k for k, x in enumerate(mc.nodes)}
            topo = tuple(pos[tree.parent[x]] for x in mc.nodes[1:])
            lab = tuple(W[x] for x in mc.nodes[1:])
            key = (topo, lab)
            if key not in self.table:
                self.table[key] = self._micro_table(topo, lab)
            self.micro_key.append(key)
        self.micro_rows = [self.table[k] for k in self.micro_key]

    def _micro_table(self, topo, lab) -> list:
        """Row per local node: counts on the path from it up to the micro root (exclusive)."""
        shape = (self.c,) * self.d
        hists = [np.zeros(shape, dtype=np.int64)]
        rows = [None]
        for k, (p, w) in enumerate(zip(topo, lab), start=1):
            h = hists[p].copy()
            h[tuple(v - 1 for v in w)] += 1
            hists.append(h)
            rows.append(self._counts(h))
        return rows

    # -- queries ------------------------------------------------------------
    def root_count(self, x: int, qi: int) -> Tuple[int, int]:
        """``(count on A_{x,rho}, lookups)`` for Q-index ``qi``."""
        b = self.mini_of[x]
        if b < 0:
            return 0, 0
        total = self.mini_cnt[b][qi]
        m = self.micro_of[x]
        if m < 0:
            return total, 1
        return total + self.micro_cnt[m][qi] + self.micro_rows[m][self.local[x]][qi], 3

    def query_up(self, x, z, box, fold, stats):
        if x == z:
            return
        qi = self.q_index(box)
        if qi < 0:
            stats.lookups.append(0)
            return
        a, la = self.root_count(x, qi)
        b, lb = self.root_count(z, qi)
        stats.lookups.append(la + lb)
        if a - b:
            fold.push(a - b)

    def query(self, x: int, y: int, box, stats: Optional[QueryStats] = None) -> int:
        """``|{v in P_{x,y} : w(v) in box}|`` as a difference of root-path counts."""
        if len(box) != self.d:
            raise VectorDimensionMismatch(f"expected {self.d} ranges, got {len(box)}")
        t = self.tree
        t.check(x)
        t.check(y)
        z = t.lca(x, y)
        own = int(in_box(self.weights[z], box))
        qi = self.q_index(box)
        if qi < 0:
            if stats is not None:
                stats.lookups.append(1)
            return 0
        cx, l1 = self.root_count(x, qi)
        cy, l2 = self.root_count(y, qi)
        cz, l3 = self.root_count(z, qi)
        if stats is not None:
            stats.lookups.append(l1 + l2 + l3 + 1)
        return cx + cy - 2 * cz + own

    # -- structural checks ----------------------------------------------------
    def cover_violations(self) -> List[str]:
        """Problems with the mini/micro cover; empty when the cover is valid."""
        out = []
        t = self.tree
        for level, comps, L in (("mini", self.minis, self.L), ("micro", self.micros, self.Lm)):
            seen = {}
            home = {x: k for k, comp in enumerate(comps) for x in comp.nodes[1:]}
            for k, comp in enumerate(comps):
                if len(comp.nodes) > 2 * L:
                    out.append(f"{level} {k} has {len(comp.nodes)} > 2L nodes")
                members = set(comp.nodes)
                for x in comp.nodes[1:]:
                    if x in seen:
                        out.append(f"node {x} is a non-root member of two {level} pieces")
                    seen[x] = k
                    if t.parent[x] not in members:
                        out.append(f"{level} {k} is not connected at {x}")
                leaving = sum(1 for x in comp.nodes[1:] for u in t.children[x]
                              if u not in members and (u not in home or comps[home[u]].root != x))
                if leaving > 1:
                    out.append(f"{level} {k} has {leaving} non-root external edges")
            if level == "mini":
                missing = [x for x in t.nodes() if x != t.root and x not in seen]
                if missing:
                    out.append(f"nodes {missing[:5]} are in no mini piece")
        return out


class PathCountingIndex:
    """``d``-dimensional path counting: wide reductions over every dimension onto :class:`CountingBase`."""

    def __init__(self, tree, weights, epsilon: float = 0.5, branching: Optional[int] = None):
        self.tree = tree
        self.weights = W = pad_weights(tree, weights)
        n = tree.n
        self.d = d = len(W[n]) if n else 1
        self.f = f = branching or wide_factor(n, epsilon)

        def level(k):
            if k < 0:
                return lambda t, w, p: CountingBase(t, w, f)
            return lambda t, w, p: WideReduction(t, w, p, level(k - 1), k, f, universe=n)

        self.root = level(d - 1)(tree, W, list(range(n + 1)))

    def query(self, x: int, y: int, box, stats: Optional[QueryStats] = None) -> int:
        if len(box) != self.d:
            raise VectorDimensionMismatch(f"expected {self.d} ranges, got {len(box)}")
        self.tree.check(x)
        self.tree.check(y)
        v = path_query(self.root, self.tree, self.weights, x, y, tuple(box), Fold(COUNT),
                       stats if stats is not None else QueryStats())
        return v or 0


def query_counting_0de(base: CountingBase, x, y, box, stats=None) -> int:
    return base.query(x, y, box, stats)


def query_path_counting(index: PathCountingIndex, x, y, box, stats=None) -> int:
    return index.query(x, y, box, stats)
