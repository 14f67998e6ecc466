"""Ancestor dominance reporting.

Report every ancestor ``v`` of ``x`` (``x`` included) whose weight vector
dominates ``q`` coordinate-wise.

* :class:`PathDominanceBase` handles vectors whose first weight is arbitrary
  and whose remaining weights come from a small universe ``[c]``: one
  extracted tree per small pattern ``g`` plus a path-maximum index, queried by
  repeatedly splitting the path at its maximum.
* :class:`AncestorDominance2D` handles two weights with a wide range tree over
  the second weight and per-level bundles built from 2-maximal nodes.
* :class:`AncestorDominance2E` adds small-universe weights by cataloguing
  2D structures per pattern.
* :class:`AncestorDominanceIndex` composes these with a reduction engine.
"""
from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass
from itertools import product
from typing import Callable, List, Optional, Sequence

from .errors import VectorDimensionMismatch
from .extraction import ExtractedTree, RangeHierarchy, child_index, extract_tree
from .framework import (BinaryReduction, QueryStats, SinkFold,
                        WideReduction, wide_factor)
from .path_aggregates import PathExtremumIndex, WeightedAncestorIndex
from .weights import pad_weights

INF = math.inf


def compute_2maximal(tree, w1: Sequence) -> set:
    """Nodes whose first weight exceeds that of every proper ancestor."""
    best = [-INF] * (tree.n + 1)
    out = set()
    par = tree.parent
    for x in tree.nodes():
        p = par[x]
        above = -INF if p < 0 else max(best[p], -INF if w1[p] is None else w1[p])
        best[x] = above
        if w1[x] is not None and w1[x] > above:
            out.add(x)
    return out


class PathDominanceBase:
    """Path dominance reporting for ``(w1, g_2..g_d)`` vectors with ``g_i`` in ``[c]``.

    One entry per pattern ``g``: the extraction of nodes whose small weights
    dominate ``g`` and a path-maximum index over their first weights.
    """

    def __init__(self, tree, weights: Sequence, c: int, payload: Optional[Sequence] = None):
        self.tree = tree
        self.c = c
        self.payload = payload
        real = next((w for w in weights if w is not None), None)
        self.d = 1 if real is None else len(real)
        self.w1 = [None if w is None else w[0] for w in weights]
        self.catalog = {}
        nodes = [x for x in tree.nodes() if weights[x] is not None]
        for g in product(range(1, c + 1), repeat=self.d - 1):
            marked = [x for x in nodes if all(v >= gi for v, gi in zip(weights[x][1:], g))]
            if not marked:
                continue
            ext = extract_tree(tree, marked)
            ew = [None if s < 0 else self.w1[s] for s in ext.source]
            self.catalog[g] = (ext, PathExtremumIndex(ext.tree, ew, modes=("max",)), ew)

    def report_up(self, x: int, z: Optional[int], q, emit: Callable[[int], None],
                  stats: Optional[QueryStats] = None) -> int:
        """Emit nodes of ``A_{x,z}`` dominating ``q``; ``z`` None or negative means up to the root inclusive."""
        if len(q) != self.d:
            raise VectorDimensionMismatch(f"expected {self.d} query weights, got {len(q)}")
        g = tuple(max(1, v) for v in q[1:])
        entry = None if any(v > self.c for v in g) else self.catalog.get(g)
        if entry is None:
            if stats is not None:
                stats.probes.append((0, 0))
            return 0
        ext, idx, ew = entry
        q1 = q[0]
        xv = ext.view(x)
        zv = None if z is None or z < 0 else ext.view(z)
        par = ext.tree.parent
        k = probes = 0
        stack = [(xv, zv)]
        while stack:
            a, b = stack.pop()
            if a is None or a < 0 or a == b:
                continue
            probes += 1
            t = idx.extremum_up(a, b, "max")
            if t < 0 or ew[t] is None or ew[t] < q1:
                continue
            emit(ext.source[t])
            k += 1
            stack.append((a, t))
            stack.append((par[t], b))
        if stats is not None:
            stats.probes.append((k, probes))
        return k

    def query_up(self, x, z, box, fold, stats):
        pay = self.payload
        self.report_up(x, z, tuple(lo for lo, _ in box),
                       lambda v: fold.push_node(v if pay is None else pay[v]), stats)

    def query(self, x: int, y: int, q, stats: Optional[QueryStats] = None) -> List[int]:
        """Nodes of ``P_{x,y}`` dominating ``q``, ascending."""
        t = self.tree
        t.check(x)
        t.check(y)
        z = t.lca(x, y)
        out: List[int] = []
        self.report_up(x, z, q, out.append, stats)
        self.report_up(y, z, q, out.append, stats)
        zp = t.parent[z]
        self.report_up(z, zp if zp >= 0 else None, q, out.append, stats)
        return sorted(out)


@dataclass
class _Level:
    M: ExtractedTree
    P: list                   # M_l node -> tree node
    D: PathDominanceBase      # over M_l, second weight (rank space)
    E: PathDominanceBase      # over M_l, first weight
    A: WeightedAncestorIndex  # over M_l, first weight
    N: Optional[ExtractedTree]
    F: Optional[PathDominanceBase]  # over N_l, (first weight, child label)


class AncestorDominance2D:
    """Two-dimensional ancestor dominance over ``tree`` (dummy root allowed).

    Second weights are ranked internally (ties by node id) so that every leaf
    of the range tree holds one node.
    """

    def __init__(self, tree, weights: Sequence, payload: Optional[Sequence] = None,
                 f: Optional[int] = None, epsilon: float = 0.5):
        self.tree = tree
        self.payload = payload
        n = tree.n
        real = [x for x in tree.nodes() if weights[x] is not None]
        self.m = m = len(real)
        self.w1 = w1 = [None if w is None else w[0] for w in weights]
        order = sorted(real, key=lambda x: (weights[x][1], x))
        self.r2 = r2 = [None] * (n + 1)
        for i, x in enumerate(order, start=1):
            r2[x] = i
        self.sorted_w2 = [weights[x][1] for x in order]
        self.f = f or wide_factor(max(m, 2), epsilon)
        self.levels: List[Optional[_Level]] = [None]
        self.lev = [0] * (n + 1)
        if m == 0:
            self.hierarchy = None
            return
        self.hierarchy = H = RangeHierarchy(tree, r2, self.f, universe=m)
        lev = self.lev
        for l in range(1, H.h + 1):
            T, src = H.levels[l].base, H.src[l]
            best = [-INF] * (n + 1)
            for i in range(1, n + 1):
                p = T.parent[i]
                if p > 0:
                    best[i] = max(best[p], w1[src[p]])
                s = src[i]
                if not lev[s] and w1[s] > best[i]:
                    lev[s] = l
        for l in range(1, H.h + 1):
            self.levels.append(self._build_level(l))

    def _build_level(self, l) -> _Level:
        H, w1, r2, lev = self.hierarchy, self.w1, self.r2, self.lev
        T, src, labels = H.levels[l].base, H.src[l], H.levels[l].labels
        n = T.n
        M = extract_tree(T, [i for i in range(1, n + 1) if lev[src[i]] == l])
        P = [None if s < 0 else src[s] for s in M.source]
        D = PathDominanceBase(M.tree, [None if v is None else (r2[v],) for v in P], 1)
        E = PathDominanceBase(M.tree, [None if v is None else (w1[v],) for v in P], 1)
        A = WeightedAncestorIndex(M.tree, [None if v is None else w1[v] for v in P])
        N = F = None
        if l < H.h:
            N = extract_tree(T, [i for i in range(1, n + 1) if lev[src[i]] > l])
            F = PathDominanceBase(N.tree, [None if s < 0 else (w1[src[s]], labels[s])
                                           for s in N.source], self.f)
        return _Level(M, P, D, E, A, N, F)

    def m_sets(self):
        """``{(level, a, b): tree nodes}``: the 2-maximal sets assigned to range-tree nodes."""
        out = {}
        H = self.hierarchy
        if H is None:
            return out
        for x in range(1, self.tree.n + 1):
            if self.w1[x] is None:
                continue
            u = H.range_at(self.lev[x], self.r2[x])
            out.setdefault(u, []).append(x)
        return out

    def report(self, x: int, q1, q2, emit: Callable[[int], None],
               stats: Optional[QueryStats] = None) -> None:
        """Emit (as tree nodes) all ancestors of ``x`` with ``w1 >= q1`` and ``w2 >= q2``."""
        H = self.hierarchy
        if H is None:
            return
        r = bisect_left(self.sorted_w2, q2) + 1
        if r > self.m:
            return
        stats = stats if stats is not None else QueryStats()
        h, f, lev = H.h, self.f, self.lev
        stack = [(1, 1, self.m, x, True, True)]
        while stack:
            l, a, b, xv, on, run_e = stack.pop()
            lv = self.levels[l]
            P = lv.P
            xm = lv.M.view(xv)
            if on:
                calls = 0
                if xm is not None:
                    calls = 1
                    y = lv.A.weighted_ancestor(xm, q1)
                    if y is not None:
                        py = lv.M.tree.parent[y]
                        lv.D.report_up(xm, py if py >= 0 else None, (r,),
                                       lambda s: emit(P[s]), stats)
                stats.weighted_ancestor.append((l, calls))
            elif run_e:
                k = lv.E.report_up(xm, None, (q1,), lambda s: emit(P[s]), stats)
                stats.e_reports.append(k)
            if l == h:
                continue
            kappa = child_index(r, a, b, f) if on else 0
            flags = {}
            xn = lv.N.view(xv)
            if xn is not None:
                src, labels = H.src[l], H.levels[l].labels
                found: List[int] = []
                lv.F.report_up(xn, None, (q1, kappa + 1), found.append, stats)
                for t in found:
                    i = lv.N.source[t]
                    j = labels[i]
                    flags[j] = flags.get(j, False) or lev[src[i]] == l + 1
            near = H.levels[l]._near
            targets = [(kappa, True, True)] if on else []
            targets += [(j, False, direct) for j, direct in sorted(flags.items())]
            s = b - a + 1
            for j, child_on, direct in targets:
                y = near[j][xv]
                if y <= 0:
                    continue
                ca, cb = -(-(j - 1) * s // f) + a, -(-j * s // f) + a - 1
                stack.append((l + 1, ca, cb, H.down(l, y, j, a, b), child_on, direct))

    def query_up(self, x, z, box, fold, stats):
        if x == z or x <= 0:
            return
        pay, depth = self.payload, self.tree.depth_of
        if z is not None and z > 0:
            dz = depth[z]
            emit = lambda v: depth[v] > dz and fold.push_node(v if pay is None else pay[v])
        else:
            emit = lambda v: fold.push_node(v if pay is None else pay[v])
        self.report(x, box[0][0], box[1][0], emit, stats)

    def query(self, x: int, q, stats: Optional[QueryStats] = None) -> List[int]:
        self.tree.check(x)
        out: List[int] = []
        self.report(x, q[0], q[1], out.append, stats)
        return sorted(out)


class AncestorDominance2E:
    """Ancestor dominance for ``(w1, w2, g_3..g_d)`` with ``g_i`` in ``[c]``: one 2D structure per pattern."""

    def __init__(self, tree, weights: Sequence, payload: Optional[Sequence], c: int,
                 f: Optional[int] = None, epsilon: float = 0.5):
        self.tree = tree
        self.c = c
        real = next((w for w in weights if w is not None), None)
        self.d = 2 if real is None else len(real)
        nodes = [x for x in tree.nodes() if weights[x] is not None]
        pay = payload if payload is not None else list(range(tree.n + 1))
        self.catalog = {}
        for g in product(range(1, c + 1), repeat=self.d - 2):
            marked = [x for x in nodes if all(v >= gi for v, gi in zip(weights[x][2:], g))]
            if not marked:
                continue
            ext = extract_tree(tree, marked)
            V = AncestorDominance2D(
                ext.tree, [None if s < 0 else weights[s][:2] for s in ext.source],
                [None if s < 0 else pay[s] for s in ext.source], f=f, epsilon=epsilon)
            self.catalog[g] = (ext, V)

    def query_up(self, x, z, box, fold, stats):
        g = tuple(max(1, lo) for lo, _ in box[2:])
        if any(v > self.c for v in g) or g not in self.catalog:
            return
        ext, V = self.catalog[g]
        xv = ext.view(x)
        if xv is None:
            return
        zv = ext.view(z) if z is not None and z > 0 else None
        V.query_up(xv, -1 if zv is None else zv, box[:2], fold, stats)


class AncestorDominanceIndex:
    """``d``-dimensional ancestor dominance reporting (``d >= 2``).

    ``variant="theorem1"`` reduces dimensions ``d..3`` with binary range trees
    onto :class:`AncestorDominance2D`; ``"theorem2"`` uses wide range trees onto
    :class:`AncestorDominance2E`.
    """

    def __init__(self, tree, weights, variant: str = "theorem1", epsilon: float = 0.5,
                 branching: Optional[int] = None):
        if variant not in ("theorem1", "theorem2"):
            raise ValueError(f"unknown variant {variant!r}")
        self.tree = tree
        self.variant = variant
        self.weights = W = pad_weights(tree, weights)
        n = tree.n
        self.d = d = len(W[n])
        if d < 2:
            raise VectorDimensionMismatch("ancestor dominance needs at least two weights")
        self.f = f = branching or wide_factor(n, epsilon)
        ids = list(range(n + 1))
        if variant == "theorem1":
            def level(k):
                if k < 2:
                    return lambda t, w, p: AncestorDominance2D(t, w, p, f=f)
                return lambda t, w, p: BinaryReduction(t, w, p, level(k - 1), universe=n)
        else:
            def level(k):
                if k < 2:
                    return lambda t, w, p: AncestorDominance2E(t, w, p, f, f=f)
                return lambda t, w, p: WideReduction(t, w, p, level(k - 1), k, f, universe=n)
        self.root = level(d - 1)(tree, W, ids)

    def query(self, x: int, q, stats: Optional[QueryStats] = None,
              sink: Optional[Callable[[int], None]] = None) -> Optional[List[int]]:
        """Ancestors of ``x`` dominating ``q``, ascending; streamed to ``sink`` when given."""
        if len(q) != self.d:
            raise VectorDimensionMismatch(f"expected {self.d} query weights, got {len(q)}")
        self.tree.check(x)
        box = tuple((v, INF) for v in q)
        stats = stats if stats is not None else QueryStats()
        if sink is not None:
            self.root.query_up(x, -1, box, SinkFold(sink), stats)
            return None
        out: List[int] = []
        self.root.query_up(x, -1, box, SinkFold(out.append), stats)
        return sorted(out)


def query_pdr_1de(base: PathDominanceBase, x, y, q, stats=None):
    return base.query(x, y, q, stats)


def query_adr_2d(index: AncestorDominance2D, x, q, stats=None):
    return index.query(x, q, stats)


def query_ancestor_dominance(index: AncestorDominanceIndex, x, q, stats=None):
    return index.query(x, q, stats)
