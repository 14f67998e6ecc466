"""Acceptance checks: oracle equivalence grids, instrumentation bounds, invariants, space growth.

Each ``criterion_*`` function returns a :class:`CriterionResult`; the grid
runs are shared so the counter-based criteria reuse the statistics gathered
while checking answers.
"""
from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Tuple

from .counting import CountingBase
from .dominance import AncestorDominance2D, AncestorDominanceIndex
from .extraction import RangeHierarchy, RangeNode, level_count
from .framework import QueryStats, wide_factor
from .generate import generate, random_query
from .harness import EngineConfig, QueryEngine, TreeFile, rank_space_reduce
from .oracle import OracleTree, oracle_query
from .ordinal_tree import build_tree
from .space import measure_bytes
from .successor import iteration_bound
from .weights import pad_weights

GRID_N = (1, 2, 17, 64, 256, 512)
GRID_SHAPES = ("random", "path", "caterpillar")
QUERIES = 1000


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} criterion {self.number} ({self.name}): {self.detail}"


@dataclass
class GridRun:
    """Answers checked against the oracle plus every counter seen along the way."""
    queries: int = 0
    mismatches: List[str] = field(default_factory=list)
    seconds: float = 0.0
    framework: List[Tuple[int, int, str, int, int]] = field(default_factory=list)  # (n, f, variant, h, count)
    probes: List[Tuple[int, int]] = field(default_factory=list)
    lookups: List[int] = field(default_factory=list)
    iterations: List[Tuple[int, int]] = field(default_factory=list)             # (n, rounds)


def _params(q):
    if q.kind in ("count", "report"):
        return (*q.nodes, q.args)
    if q.kind == "succ":
        return (*q.nodes, q.args[0], q.args[1])
    return (q.nodes[0], q.args)


def _seed(n: int, d: int, shape_index: int) -> int:
    return n * 100 + d * 10 + shape_index


def run_grid(kind: str, dims, config: EngineConfig, queries: int = QUERIES,
             grid_n=GRID_N, shapes=GRID_SHAPES) -> GridRun:
    run = GridRun()
    t0 = time.perf_counter()
    for d in dims:
        for n in grid_n:
            for si, shape in enumerate(shapes):
                seed = _seed(n, d, si + 1)
                parents, weights = generate(n, d, seed, shape)
                tf = TreeFile(n, d, parents, weights)
                engine = QueryEngine(tf, config)
                idx = engine.index(kind)
                f = getattr(idx, "f", 2)
                oracle = OracleTree(parents, weights)
                rng = random.Random(seed + 1)
                for _ in range(queries):
                    q = random_query(kind, n, d, rng)
                    stats = QueryStats()
                    got = engine.run(q, stats)
                    want = oracle_query(oracle, kind, _params(q))
                    run.queries += 1
                    if got != want and len(run.mismatches) < 5:
                        run.mismatches.append(f"{shape} n={n} d={d}: {q.dump()} -> {got} != {want}")
                    run.framework += [(n, f, v, h, c) for v, h, c in stats.framework]
                    run.probes += stats.probes
                    run.lookups += stats.lookups
                    run.iterations += [(n, i) for i in stats.iterations]
    run.seconds = time.perf_counter() - t0
    return run


@lru_cache(maxsize=None)
def counting_grid() -> GridRun:
    return run_grid("count", (1, 2), EngineConfig(counting_epsilon=0.2))


@lru_cache(maxsize=None)
def other_grids() -> Dict[str, GridRun]:
    return {
        "report": run_grid("report", (2, 3), EngineConfig()),
        "dom/theorem1": run_grid("dom", (2, 3), EngineConfig(variant="theorem1")),
        "dom/theorem2": run_grid("dom", (2, 3), EngineConfig(variant="theorem2")),
        "succ": run_grid("succ", (1, 2, 3), EngineConfig()),
    }


# -- criteria --------------------------------------------------------------------

def criterion_1() -> CriterionResult:
    run = counting_grid()
    ok = not run.mismatches and run.seconds < 60
    detail = f"{run.queries} queries, {len(run.mismatches)} mismatches, {run.seconds:.1f}s (target < 60s)"
    if run.mismatches:
        detail += "; first: " + run.mismatches[0]
    return CriterionResult(1, "counting oracle equivalence", ok, detail)


def criterion_2() -> CriterionResult:
    grids = other_grids()
    total = sum(g.seconds for g in grids.values())
    bad = [m for g in grids.values() for m in g.mismatches]
    ok = not bad and total < 120
    parts = ", ".join(f"{k} {g.queries}q/{g.seconds:.0f}s" for k, g in grids.items())
    detail = f"{parts}; {len(bad)} mismatches, {total:.1f}s (target < 120s)"
    if bad:
        detail += "; first: " + bad[0]
    return CriterionResult(2, "reporting/dominance/successor oracle equivalence", ok, detail)


def criterion_3() -> CriterionResult:
    grids = other_grids()
    probes = grids["dom/theorem1"].probes + grids["dom/theorem2"].probes
    worst = max((p - 2 * k for k, p in probes), default=-1)
    ok = bool(probes) and worst <= 1
    return CriterionResult(3, "path-maximum probes <= 2k+1", ok,
                           f"{len(probes)} base calls, max probes - 2k = {worst}")


def _top_levels(n: int, f: int, variant: str) -> int:
    """``ceil(lg n) + 1`` for binary trees, ``ceil(log_f n) + 1`` for wide ones."""
    if variant == "binary":
        return math.ceil(math.log2(n)) + 1 if n > 1 else 1
    return level_count(n, f)


def criterion_4() -> CriterionResult:
    entries = list(counting_grid().framework)
    for g in other_grids().values():
        entries += g.framework
    worst = 0
    bad = 0
    for n, f, variant, h, c in entries:
        h_top = _top_levels(n, f, variant)
        # at a single level the whole range is one child query
        limit = max(1, 2 * (h_top - 1))
        if h > h_top or c > limit:
            bad += 1
        worst = max(worst, c - limit)
    ok = bool(entries) and bad == 0
    return CriterionResult(4, "framework child queries <= 2(h-1)", ok,
                           f"{len(entries)} subpath dispatches, {bad} over the bound, "
                           f"max excess {worst}")


def criterion_5(queries: int = QUERIES) -> CriterionResult:
    run = counting_grid()
    up_worst = max(run.lookups, default=0)
    direct, wrong = [], 0
    for d in (1, 2):
        for n in GRID_N:
            for si, shape in enumerate(GRID_SHAPES):
                seed = _seed(n, d, si + 1)
                parents, _ = generate(n, d, seed, shape)
                t = build_tree(parents)
                c = wide_factor(n, 0.2)
                rng = random.Random(seed + 2)
                w = [None] + [tuple(rng.randint(1, c) for _ in range(d)) for _ in range(n)]
                base = CountingBase(t, w, c)
                oracle = OracleTree(parents, w[1:])
                for _ in range(queries):
                    box = tuple(tuple(sorted((rng.randint(1, c), rng.randint(1, c))))
                                for _ in range(d))
                    x, y = rng.randint(1, n), rng.randint(1, n)
                    stats = QueryStats()
                    wrong += base.query(x, y, box, stats) != oracle_query(oracle, "count", (x, y, box))
                    direct.append(sum(stats.lookups))
    worst = max(direct)
    ok = worst <= 12 and up_worst <= 12 and not wrong
    return CriterionResult(5, "counting base lookups <= 12", ok,
                           f"{len(direct)} direct base queries ({wrong} wrong), max {worst} lookups; "
                           f"{len(run.lookups)} framework base calls, max {up_worst}")


def criterion_6() -> CriterionResult:
    its = other_grids()["succ"].iterations
    bad = [(n, i) for n, i in its if i > iteration_bound(n)]
    worst = max((i for _, i in its), default=0)
    ok = bool(its) and not bad
    return CriterionResult(6, "successor binary-search rounds", ok,
                           f"{len(its)} searches, max {worst} rounds, bound at n=512 is "
                           f"{iteration_bound(512)}, {len(bad)} over")


def _all_ranges(H: RangeHierarchy):
    out, frontier = [], [H.root_range]
    while frontier:
        u = frontier.pop()
        if u.a > u.b:
            continue
        out.append(u)
        if u.level < H.h:
            kids = H.children(u) if u.a < u.b else [RangeNode(u.level + 1, u.a, u.b)]
            frontier.extend(kids)
    return out


def structural_problems(n: int, seed: int, exhaustive: bool, samples: int = 200) -> List[str]:
    """Cover validity, M(v) partition, M_l decrease and contiguous level intervals on one tree."""
    problems: List[str] = []
    parents, weights = generate(n, 2, seed, "random")
    t = build_tree(parents)
    ranked, _ = rank_space_reduce(weights)
    W = pad_weights(t, ranked)
    rng = random.Random(seed)

    c = wide_factor(n, 0.2)
    small = [None] + [tuple(rng.randint(1, c) for _ in range(2)) for _ in range(n)]
    for mini, micro in ((None, None), (4, 2)):
        problems += CountingBase(t, small, c, mini=mini, micro=micro).cover_violations()

    V = AncestorDominance2D(t, W)
    assigned = sorted(x for nodes in V.m_sets().values() for x in nodes)
    if assigned != list(range(1, n + 1)):
        problems.append(f"M(v) sets cover {len(assigned)} slots for {n} nodes")
    for l in range(1, V.hierarchy.h + 1):
        lv = V.levels[l]
        par = lv.M.tree.parent
        for i in range(1, lv.M.tree.n + 1):
            if par[i] > 0 and not V.w1[lv.P[i]] > V.w1[lv.P[par[i]]]:
                problems.append(f"M_{l} not decreasing upwards at {i}")

    w1 = [None] + [r[0] for r in ranked]
    for f in (2, wide_factor(n, 0.5)):
        H = RangeHierarchy(t, w1, f)
        ranges = _all_ranges(H)
        if not exhaustive:
            ranges = rng.sample(ranges, min(samples, len(ranges)))
        for u in ranges:
            _, _, s, e = H.annotation(u)
            src = H.src[u.level]
            inside = [i for i in range(1, n + 1) if u.a <= w1[src[i]] <= u.b]
            if inside != list(range(s, e + 1)):
                problems.append(f"f={f} range {u} not the interval [{s}, {e}]")
    return problems


def criterion_7() -> CriterionResult:
    problems, trees = [], 0
    for n in (1, 2, 5, 17, 33, 64, 100, 128):
        for seed in range(3):
            problems += structural_problems(n, seed, exhaustive=True)
            trees += 1
    for n in (1024, 4096):
        problems += structural_problems(n, 11, exhaustive=False)
        trees += 1
    ok = not problems
    detail = f"{trees} trees, {len(problems)} violations"
    if problems:
        detail += "; first: " + problems[0]
    return CriterionResult(7, "structural invariants", ok, detail)


def space_series(sizes=(4096, 8192, 16384, 32768), seeds=(0, 1, 2)):
    """Mean measured bytes ``(counting base, dominance 2D)`` per size."""
    out = []
    for n in sizes:
        cb = dm = 0
        for seed in seeds:
            parents, weights = generate(n, 2, seed, "random")
            t = build_tree(parents)
            c = wide_factor(n, 0.2)
            rng = random.Random(seed)
            small = [None] + [(rng.randint(1, c),) for _ in range(n)]
            cb += measure_bytes(CountingBase(t, small, c))
            ranked, _ = rank_space_reduce(weights)
            dm += measure_bytes(AncestorDominanceIndex(t, ranked, "theorem1"))
        out.append((n, cb / len(seeds), dm / len(seeds)))
    return out


def criterion_8() -> CriterionResult:
    series = space_series()
    ratios_c = [b[1] / a[1] for a, b in zip(series, series[1:])]
    ratios_d = [b[2] / a[2] for a, b in zip(series, series[1:])]
    ok = max(ratios_c) <= 2.5 and max(ratios_d) <= 2.5
    fmt = lambda rs: "/".join(f"{r:.2f}" for r in rs)
    return CriterionResult(8, "space growth per doubling <= 2.5", ok,
                           f"counting base {fmt(ratios_c)}, dominance {fmt(ratios_d)}")


CRITERIA = (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8)


def run_all(verbose: bool = True) -> List[CriterionResult]:
    results = []
    for crit in CRITERIA:
        r = crit()
        results.append(r)
        if verbose:
            print(r.line(), flush=True)
    return results
