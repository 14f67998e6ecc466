"""Brute-force reference answers by walking explicit paths.

Deliberately independent of the indexed structures: its own tree walk, its
own LCA by depth equalisation, plain linear scans.
"""
from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from .errors import InvalidNode


class OracleTree:
    """Parent array (``parent[1] = 0``) and raw weight vectors for nodes ``1..n``."""

    def __init__(self, parents: Sequence[int], weights: Sequence[Sequence[int]]):
        self.n = len(parents) + 1
        self.parent = [0, 0] + list(parents)
        self.weights = [None] + [tuple(w) for w in weights]
        self.depth = [0] * (self.n + 1)
        for x in range(2, self.n + 1):
            self.depth[x] = self.depth[self.parent[x]] + 1

    def _check(self, x):
        if not 1 <= x <= self.n:
            raise InvalidNode(f"node {x} not in [1, {self.n}]")


def oracle_path(t: OracleTree, x: int, y: int) -> List[int]:
    """``P_{x,y}`` listed from ``x`` to ``y``."""
    t._check(x)
    t._check(y)
    up, down = [], []
    a, b = x, y
    while t.depth[a] > t.depth[b]:
        up.append(a)
        a = t.parent[a]
    while t.depth[b] > t.depth[a]:
        down.append(b)
        b = t.parent[b]
    while a != b:
        up.append(a)
        down.append(b)
        a, b = t.parent[a], t.parent[b]
    return up + [a] + down[::-1]


def oracle_ancestors(t: OracleTree, x: int) -> List[int]:
    t._check(x)
    out = []
    while x:
        out.append(x)
        x = t.parent[x]
    return out


def _inside(w, box) -> bool:
    return all(lo <= v <= hi for v, (lo, hi) in zip(w, box))


def oracle_count(t, x, y, box) -> int:
    return sum(1 for v in oracle_path(t, x, y) if _inside(t.weights[v], box))


def oracle_report(t, x, y, box) -> List[int]:
    return sorted(v for v in oracle_path(t, x, y) if _inside(t.weights[v], box))


def oracle_successor(t, x, y, q1, rest=(), q1_hi=float("inf")) -> Optional[int]:
    best = None
    for v in oracle_path(t, x, y):
        w = t.weights[v]
        if q1 <= w[0] <= q1_hi and _inside(w[1:], rest):
            if best is None or (w[0], v) < (t.weights[best][0], best):
                best = v
    return best


def oracle_dominance(t, x, q) -> List[int]:
    return sorted(v for v in oracle_ancestors(t, x)
                  if all(a >= b for a, b in zip(t.weights[v], q)))


def oracle_query(t: OracleTree, kind: str, params: Tuple):
    """Dispatch on ``count|report|succ|dom`` with the same parameters as the indexes."""
    if kind == "count":
        return oracle_count(t, *params)
    if kind == "report":
        return oracle_report(t, *params)
    if kind == "succ":
        return oracle_successor(t, *params)
    if kind == "dom":
        return oracle_dominance(t, *params)
    raise ValueError(f"unknown query kind {kind!r}")
