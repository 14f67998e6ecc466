"""Semigroup path sums and the two dimension-reduction engines.

Every structure in the package answers ``query_up(x, z, box, fold, stats)``:
fold into ``fold`` the elements of the nodes on ``A_{x,z}`` (``z`` an ancestor
of ``x``, excluded) whose weight vectors lie in ``box``.  ``box`` holds one
``(lo, hi)`` pair per remaining dimension, ``hi`` possibly ``inf``.

:class:`BinaryReduction` removes the last dimension with a binary range tree;
:class:`WideReduction` replaces one dimension by the child label of a range
tree with branching factor ``f``.  Children are built by a factory over each
level tree ``T_l`` with the remaining weights and the same payloads.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable, List, Optional, Sequence

from .extraction import RangeHierarchy, child_ranges

INF = math.inf


@dataclass(frozen=True)
class Semigroup:
    combine: Callable[[Any, Any], Any]
    element: Callable[[int], Any]   # g(node), node being an original tree id


def _concat(a, b):
    a.extend(b)
    return a


COUNT = Semigroup(lambda a, b: a + b, lambda v: 1)
REPORT = Semigroup(_concat, lambda v: [v])


def argmin_by(key: Callable[[int], Any]) -> Semigroup:
    return Semigroup(lambda a, b: a if key(a) <= key(b) else b, lambda v: v)


class Fold:
    """Running semigroup sum; ``None`` is the neutral sentinel."""

    def __init__(self, sg: Semigroup):
        self.sg = sg
        self.value = None

    def push(self, e):
        self.value = e if self.value is None else self.sg.combine(self.value, e)

    def push_node(self, v: int):
        self.push(self.sg.element(v))


class SinkFold(Fold):
    """Streams reported nodes to ``sink`` instead of materialising them."""

    def __init__(self, sink: Callable[[int], None]):
        super().__init__(REPORT)
        self.sink = sink
        self.k = 0

    def push(self, e):
        for v in e:
            self.sink(v)
        self.k += len(e)

    def push_node(self, v: int):
        self.sink(v)
        self.k += 1


@dataclass
class QueryStats:
    """Per-query instrumentation; never shared between queries."""
    framework: List[tuple] = field(default_factory=list)   # (variant, h, child queries) per subpath
    probes: List[tuple] = field(default_factory=list)      # (reported, extremum probes) per path-dominance call
    lookups: List[int] = field(default_factory=list)       # table/array reads per counting base call
    iterations: List[int] = field(default_factory=list)    # successor binary-search rounds
    weighted_ancestor: List[tuple] = field(default_factory=list)  # (level, calls) per visited range node
    e_reports: List[int] = field(default_factory=list)     # nodes reported by each off-path E_l query
    work: int = 0

    def child_queries(self) -> int:
        return sum(c for _, _, c in self.framework)


def in_box(w, box) -> bool:
    if w is None:
        return False
    for v, (lo, hi) in zip(w, box):
        if not lo <= v <= hi:
            return False
    return True


def decompose_path(tree, x: int, y: int):
    """``(A_{x,z}, z, A_{y,z})`` with ``z = lca(x, y)``, paths listed bottom-up."""
    z = tree.lca(x, y)

    def up(v):
        out = []
        while v != z:
            out.append(v)
            v = tree.parent[v]
        return out

    return up(x), z, up(y)


def path_query(struct, tree, weights, x: int, y: int, box, fold: Fold,
               stats: Optional[QueryStats] = None, payload=None):
    """Fold over ``P_{x,y}``: two ``query_up`` calls plus the LCA itself."""
    stats = stats if stats is not None else QueryStats()
    z = tree.lca(x, y)
    struct.query_up(x, z, box, fold, stats)
    struct.query_up(y, z, box, fold, stats)
    if in_box(weights[z], box):
        fold.push_node(z if payload is None else payload[z])
    return fold.value


class PathWalk:
    """Zero-dimensional path sum: every node of ``A_{x,z}`` qualifies."""

    def __init__(self, tree, weights, payload):
        self.parent = tree.parent
        self.payload = payload

    def query_up(self, x, z, box, fold, stats):
        par, pay = self.parent, self.payload
        while x != z:
            fold.push_node(pay[x])
            stats.work += 1
            x = par[x]


def _drop(w, dim):
    return w[:dim] + w[dim + 1:]


class _Reduction:
    """Shared construction; ``query_up`` accepts ``z < 0`` for "through the root"."""
    variant = ""

    def __init__(self, tree, weights: Sequence, payload: Sequence, factory: Callable,
                 dim: int, f: int, universe: Optional[int] = None,
                 explicit_views: bool = True):
        self.tree = tree
        self.dim = dim
        self.f = f
        scalar = [None if w is None else w[dim] for w in weights]
        self.hierarchy = H = RangeHierarchy(tree, scalar, f, universe, explicit_views)
        self.U = H.U
        self.children = {}
        for l in self._child_levels():
            t_l, src = H.levels[l], H.src[l]
            cw = [None] + [self._child_weight(weights[s], t_l.labels[i])
                           for i, s in enumerate(src[1:], start=1)]
            cp = [None] + [payload[s] for s in src[1:]]
            self.children[l] = factory(t_l.base, cw, cp)

    @property
    def h(self):
        return self.hierarchy.h

    def _clip(self, box):
        lo, hi = box[self.dim]
        return max(lo, 1), min(hi, self.U)


class BinaryReduction(_Reduction):
    """Reduce the last dimension through a binary range tree (one child per level)."""
    variant = "binary"

    def __init__(self, tree, weights, payload, factory, universe=None, explicit_views=True):
        d = len(next(w for w in weights if w is not None))
        super().__init__(tree, weights, payload, factory, d - 1, 2, universe, explicit_views)

    def _child_levels(self):
        return range(1, self.hierarchy.h + 1)

    def _child_weight(self, w, label):
        return w[:-1]

    def query_up(self, x, z, box, fold, stats):
        z = 0 if z is None or z < 0 else z      # level trees hang off dummy root 0
        if x == z:
            return
        lo, hi = self._clip(box)
        if lo > hi:
            return
        H, rest, count = self.hierarchy, box[:-1], 0
        stack = [(1, 1, self.U, x, z)]
        while stack:
            l, a, b, xv, zv = stack.pop()
            if lo <= a and b <= hi:
                count += 1
                self.children[l].query_up(xv, zv, rest, fold, stats)
                continue
            near = H.levels[l]._near
            for j, (ca, cb) in enumerate(child_ranges(a, b, 2), start=1):
                if ca > cb or cb < lo or ca > hi:
                    continue
                y = near[j][xv]
                if y <= 0:
                    continue
                nx = H.down(l, y, j, a, b)
                yz = near[j][zv]
                nz = H.down(l, yz, j, a, b) if yz > 0 else 0
                if nx != nz:
                    stack.append((l + 1, ca, cb, nx, nz))
        stats.framework.append((self.variant, H.h, count))


class WideReduction(_Reduction):
    """Replace dimension ``dim`` by child labels of an ``f``-ary range tree."""
    variant = "wide"

    def _child_levels(self):
        return range(1, max(self.hierarchy.h - 1, 1) + 1)

    def _child_weight(self, w, label):
        return w[:self.dim] + (label,) + w[self.dim + 1:]

    def query_up(self, x, z, box, fold, stats):
        z = 0 if z is None or z < 0 else z      # level trees hang off dummy root 0
        if x == z:
            return
        lo, hi = self._clip(box)
        if lo > hi:
            return
        H, f, dim, count = self.hierarchy, self.f, self.dim, 0
        if lo <= 1 and self.U <= hi:
            sub = box[:dim] + ((1, f),) + box[dim + 1:]
            self.children[1].query_up(x, z, sub, fold, stats)
            stats.framework.append((self.variant, H.h, 1))
            return
        stack = [(1, 1, self.U, x, z)]
        while stack:
            l, a, b, xv, zv = stack.pop()
            near = H.levels[l]._near
            iv = jv = 0
            for j, (ca, cb) in enumerate(child_ranges(a, b, f), start=1):
                if ca > cb or cb < lo or ca > hi:
                    continue
                if lo <= ca and cb <= hi:
                    iv = iv or j
                    jv = j
                    continue
                y = near[j][xv]
                if y <= 0:
                    continue
                nx = H.down(l, y, j, a, b)
                yz = near[j][zv]
                nz = H.down(l, yz, j, a, b) if yz > 0 else 0
                if nx != nz:
                    stack.append((l + 1, ca, cb, nx, nz))
            if iv:
                count += 1
                sub = box[:dim] + ((iv, jv),) + box[dim + 1:]
                self.children[l].query_up(xv, zv, sub, fold, stats)
        stats.framework.append((self.variant, H.h, count))


def build_binary(tree, weights, payload, factory, **kw) -> BinaryReduction:
    return BinaryReduction(tree, weights, payload, factory, **kw)


def build_wide(tree, weights, payload, factory, dim, f, **kw) -> WideReduction:
    return WideReduction(tree, weights, payload, factory, dim, f, **kw)


def wide_factor(n: int, epsilon: float) -> int:
    """``max(2, ceil(lg^eps n))``."""
    if n <= 2:
        return 2
    return max(2, math.ceil(math.log2(n) ** epsilon))
