"""File formats, rank-space reduction and a query engine over raw weights."""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .counting import PathCountingIndex
from .dominance import AncestorDominanceIndex
from .errors import ParseError, VectorDimensionMismatch
from .ordinal_tree import build_tree
from .reporting import PathReportingIndex
from .successor import PathSuccessorIndex

KINDS = ("count", "report", "succ", "dom")


# -- tree files -----------------------------------------------------------------

@dataclass
class TreeFile:
    n: int
    d: int
    parents: List[int]                 # parents of nodes 2..n
    weights: List[Tuple[int, ...]]     # node i at index i - 1

    def dump(self) -> str:
        lines = [f"{self.n} {self.d}", " ".join(map(str, self.parents))]
        lines += [" ".join(map(str, w)) for w in self.weights]
        return "\n".join(lines) + "\n"


def _ints(text: str, lineno: int) -> List[int]:
    try:
        return [int(tok) for tok in text.split()]
    except ValueError as exc:
        raise ParseError(str(exc), lineno) from None


def parse_tree(text: str) -> TreeFile:
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty tree file", 1)
    head = _ints(lines[0], 1)
    if len(head) != 2 or head[0] < 1 or head[1] < 1:
        raise ParseError("header must be 'n d' with n, d >= 1", 1)
    n, d = head
    if len(lines) < n + 2:
        raise ParseError(f"expected {n + 2} lines, found {len(lines)}", len(lines))
    parents = _ints(lines[1], 2)
    if len(parents) != n - 1:
        raise ParseError(f"expected {n - 1} parents, found {len(parents)}", 2)
    for i, p in enumerate(parents, start=2):
        if not 1 <= p < i:
            raise ParseError(f"parent {p} of node {i} must lie in [1, {i - 1}]", 2)
    weights = []
    for k in range(n):
        w = _ints(lines[k + 2], k + 3)
        if len(w) != d:
            raise ParseError(f"expected {d} weights, found {len(w)}", k + 3)
        weights.append(tuple(w))
    for k in range(n + 2, len(lines)):
        if lines[k].strip():
            raise ParseError("trailing content after weight lines", k + 1)
    return TreeFile(n, d, parents, weights)


# -- query files ------------------------------------------------------------------

@dataclass
class Query:
    kind: str
    nodes: Tuple[int, ...]
    args: Tuple            # count/report: box; succ: (q1, rest box); dom: q

    def dump(self) -> str:
        if self.kind in ("count", "report"):
            vals = [v for iv in self.args for v in iv]
        elif self.kind == "succ":
            vals = [self.args[0]] + [v for iv in self.args[1] for v in iv]
        else:
            vals = list(self.args)
        return " ".join([self.kind] + [str(v) for v in (*self.nodes, *vals)])


def parse_query_line(line: str, d: int, lineno: int = 1) -> Optional[Query]:
    parts = line.split("#", 1)[0].split()
    if not parts:
        return None
    kind, vals = parts[0], _ints(" ".join(parts[1:]), lineno)
    expected = {"count": 2 + 2 * d, "report": 2 + 2 * d, "succ": 3 + 2 * (d - 1), "dom": 1 + d}
    if kind not in expected:
        raise ParseError(f"unknown query kind {kind!r}", lineno)
    if len(vals) != expected[kind]:
        raise ParseError(f"{kind} takes {expected[kind]} integers for d={d}, got {len(vals)}",
                         lineno)
    if kind in ("count", "report"):
        box = tuple(zip(vals[2::2], vals[3::2]))
        return Query(kind, tuple(vals[:2]), box)
    if kind == "succ":
        rest = tuple(zip(vals[3::2], vals[4::2]))
        return Query(kind, tuple(vals[:2]), (vals[2], rest))
    return Query(kind, (vals[0],), tuple(vals[1:]))


def parse_queries(text: str, d: int) -> List[Query]:
    out = []
    for i, line in enumerate(text.splitlines(), start=1):
        q = parse_query_line(line, d, i)
        if q is not None:
            out.append(q)
    return out


# -- rank space ---------------------------------------------------------------------

@dataclass
class RankMaps:
    """Per-dimension raw values sorted by (value, node); rank ``i`` is position ``i - 1``."""
    values: List[List[int]]

    def interval(self, dim: int, lo, hi) -> Tuple[int, int]:
        """Ranks of exactly the raw values in ``[lo, hi]`` (possibly empty)."""
        vals = self.values[dim]
        return bisect_left(vals, lo) + 1, bisect_right(vals, hi)

    def lower(self, dim: int, lo) -> int:
        """Smallest rank whose raw value is ``>= lo``."""
        return bisect_left(self.values[dim], lo) + 1


def rank_space_reduce(weights: Sequence[Sequence[int]]):
    """Replace each dimension by ranks ``1..n``; ties broken by node order."""
    n = len(weights)
    d = len(weights[0]) if n else 0
    ranked = [[0] * d for _ in range(n)]
    values = []
    for k in range(d):
        order = sorted(range(n), key=lambda i: (weights[i][k], i))
        for r, i in enumerate(order, start=1):
            ranked[i][k] = r
        values.append([weights[i][k] for i in order])
    return [tuple(w) for w in ranked], RankMaps(values)


# -- engine -------------------------------------------------------------------------

@dataclass
class EngineConfig:
    epsilon: float = 0.5
    counting_epsilon: Optional[float] = 0.2
    branching: Optional[int] = None
    variant: str = "theorem1"
    explicit_views: bool = True


class QueryEngine:
    """All four query families over one raw weighted tree, built lazily per kind."""

    def __init__(self, tf: TreeFile, config: EngineConfig = None):
        self.file = tf
        self.config = config or EngineConfig()
        self.tree = build_tree(tf.parents)
        self.weights, self.maps = rank_space_reduce(tf.weights)
        self.d = tf.d
        self._index: Dict[str, object] = {}

    def index(self, kind: str):
        if kind not in self._index:
            c = self.config
            if kind == "count":
                eps = c.counting_epsilon if c.counting_epsilon is not None else c.epsilon
                idx = PathCountingIndex(self.tree, self.weights, eps, c.branching)
            elif kind == "report":
                idx = PathReportingIndex(self.tree, self.weights, c.epsilon, c.branching)
            elif kind == "succ":
                idx = PathSuccessorIndex(self.tree, self.weights, c.explicit_views)
            elif kind == "dom":
                idx = AncestorDominanceIndex(self.tree, self.weights, c.variant, c.epsilon,
                                             c.branching)
            else:
                raise ValueError(f"unknown query kind {kind!r}")
            self._index[kind] = idx
        return self._index[kind]

    def build_all(self, kinds=KINDS):
        for k in kinds:
            if k == "dom" and self.d < 2:
                continue
            self.index(k)
        return self

    def _box(self, box):
        if len(box) != self.d:
            raise VectorDimensionMismatch(f"expected {self.d} ranges, got {len(box)}")
        return tuple(self.maps.interval(k, lo, hi) for k, (lo, hi) in enumerate(box))

    def run(self, q: Query, stats=None):
        if q.kind == "count":
            return self.index("count").query(*q.nodes, self._box(q.args), stats)
        if q.kind == "report":
            return self.index("report").query(*q.nodes, self._box(q.args), stats)
        if q.kind == "succ":
            q1, rest = q.args
            if len(rest) != self.d - 1:
                raise VectorDimensionMismatch(f"expected {self.d - 1} ranges after q1")
            rest = tuple(self.maps.interval(k + 1, lo, hi) for k, (lo, hi) in enumerate(rest))
            return self.index("succ").query(*q.nodes, self.maps.lower(0, q1), rest, stats=stats)
        if q.kind == "dom":
            if len(q.args) != self.d:
                raise VectorDimensionMismatch(f"expected {self.d} query weights")
            qq = tuple(self.maps.lower(k, v) for k, v in enumerate(q.args))
            return self.index("dom").query(q.nodes[0], qq, stats)
        raise ValueError(f"unknown query kind {q.kind!r}")

    @staticmethod
    def format(answer) -> str:
        if answer is None:
            return "-"
        if isinstance(answer, list):
            return " ".join(map(str, answer))
        return str(answer)
