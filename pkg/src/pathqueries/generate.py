"""Deterministic generators for weighted trees."""
from __future__ import annotations

import random
from typing import List, Tuple

SHAPES = ("random", "path", "star", "caterpillar")


def preorder_relabel(parents: List[int]) -> List[int]:
    """Renumber an arbitrary rooted tree (``parents[i]`` for node ``i + 2``, root 1) in preorder."""
    n = len(parents) + 1
    children = [[] for _ in range(n + 1)]
    for i, p in enumerate(parents, start=2):
        children[p].append(i)
    new_id = [0] * (n + 1)
    order, stack = [], [1]
    while stack:
        x = stack.pop()
        new_id[x] = len(order) + 1
        order.append(x)
        stack.extend(reversed(children[x]))
    out = [0] * (n - 1)
    for i, p in enumerate(parents, start=2):
        out[new_id[i] - 2] = new_id[p]
    return out


def tree_parents(n: int, shape: str, rng: random.Random) -> List[int]:
    if shape == "path":
        return list(range(1, n))
    if shape == "star":
        return [1] * (n - 1)
    if shape == "caterpillar":
        # spine of about half the nodes, the rest hang off random spine nodes
        spine = max(1, (n + 1) // 2)
        raw = list(range(1, spine)) + [rng.randint(1, spine) for _ in range(n - spine)]
        return preorder_relabel(raw)
    if shape == "random":
        return preorder_relabel([rng.randint(1, i - 1) for i in range(2, n + 1)])
    raise ValueError(f"unknown shape {shape!r}; expected one of {SHAPES}")


def generate(n: int, d: int, seed: int = 0, shape: str = "random",
             universe: int = None) -> Tuple[List[int], List[Tuple[int, ...]]]:
    """``(parents, weights)``: parents of nodes 2..n and one d-vector per node.

    Weights are drawn from ``[1, universe]`` (default ``n``) and are not
    rank-reduced; pass them through :func:`rank_space_reduce` when needed.
    """
    if n < 1:
        raise ValueError("n must be positive")
    rng = random.Random(seed)
    parents = tree_parents(n, shape, rng)
    u = universe or n
    weights = [tuple(rng.randint(1, u) for _ in range(d)) for _ in range(n)]
    return parents, weights


def random_query(kind: str, n: int, d: int, rng: random.Random, universe: int = None):
    """One random query over raw weights drawn from ``[0, universe + 1]``."""
    from .harness import Query
    u = (universe or n) + 1

    def interval():
        a, b = rng.randint(0, u), rng.randint(0, u)
        return (min(a, b), max(a, b))

    if kind in ("count", "report"):
        return Query(kind, (rng.randint(1, n), rng.randint(1, n)),
                     tuple(interval() for _ in range(d)))
    if kind == "succ":
        return Query(kind, (rng.randint(1, n), rng.randint(1, n)),
                     (rng.randint(0, u), tuple(interval() for _ in range(d - 1))))
    if kind == "dom":
        return Query(kind, (rng.randint(1, n),), tuple(rng.randint(0, u) for _ in range(d)))
    raise ValueError(f"unknown query kind {kind!r}")
