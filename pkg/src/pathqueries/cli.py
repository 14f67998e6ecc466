"""Command line harness: ``build``, ``query``, ``verify`` and ``bench``."""
from __future__ import annotations

import argparse
import csv
import pickle
import random
import sys
import time
from typing import List, Optional, Sequence

from .errors import PathQueryError
from .framework import QueryStats
from .generate import SHAPES, generate, random_query
from .harness import (KINDS, EngineConfig, Query, QueryEngine, TreeFile, parse_queries,
                      parse_tree)
from .oracle import OracleTree, oracle_query

FORMAT_VERSION = 1


def _config(args) -> EngineConfig:
    return EngineConfig(epsilon=args.epsilon, counting_epsilon=args.counting_epsilon,
                        branching=args.branching, variant=args.variant)


def _kinds(args, d: int) -> List[str]:
    kinds = args.kinds.split(",") if args.kinds else list(KINDS)
    for k in kinds:
        if k not in KINDS:
            raise SystemExit(f"unknown query kind {k!r}; expected a subset of {','.join(KINDS)}")
    return [k for k in kinds if not (k == "dom" and d < 2)]


def _read_tree(path: str) -> TreeFile:
    with open(path) as fh:
        return parse_tree(fh.read())


def _load_engine(args) -> QueryEngine:
    if args.index:
        with open(args.index, "rb") as fh:
            blob = pickle.load(fh)
        if not isinstance(blob, dict) or blob.get("version") != FORMAT_VERSION:
            raise SystemExit(f"{args.index}: not a version {FORMAT_VERSION} index file")
        return blob["engine"]
    if not args.tree:
        raise SystemExit("either --tree or --index is required")
    return QueryEngine(_read_tree(args.tree), _config(args))


def _oracle_params(q: Query):
    if q.kind in ("count", "report"):
        return (*q.nodes, q.args)
    if q.kind == "succ":
        return (*q.nodes, q.args[0], q.args[1])
    return (q.nodes[0], q.args)


def _answer_size(kind: str, ans) -> int:
    if kind == "count":
        return ans
    if kind == "succ":
        return 0 if ans is None else 1
    return len(ans)


# -- subcommands --------------------------------------------------------------------

def cmd_generate(args) -> int:
    parents, weights = generate(args.n, args.d, args.seed, args.shape)
    text = TreeFile(args.n, args.d, parents, weights).dump()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.queries and args.query_out:
        rng = random.Random(args.seed + 1)
        kinds = _kinds(args, args.d)
        lines = [random_query(rng.choice(kinds), args.n, args.d, rng).dump()
                 for _ in range(args.queries)]
        with open(args.query_out, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    return 0


def cmd_build(args) -> int:
    engine = QueryEngine(_read_tree(args.tree), _config(args))
    engine.build_all(_kinds(args, engine.d))
    with open(args.out, "wb") as fh:
        pickle.dump({"version": FORMAT_VERSION, "engine": engine}, fh,
                    protocol=pickle.HIGHEST_PROTOCOL)
    return 0


def cmd_query(args) -> int:
    engine = _load_engine(args)
    src = open(args.queries_file) if args.queries_file != "-" else sys.stdin
    with src:
        queries = parse_queries(src.read(), engine.d)
    out = sys.stdout
    for q in queries:
        out.write(engine.format(engine.run(q)) + "\n")
    return 0


def minimize(tf: TreeFile, q: Query, config: EngineConfig) -> TreeFile:
    """Smallest prefix tree (nodes ``1..m``) on which ``q`` still disagrees with the oracle."""
    lo = max(q.nodes)
    for m in range(lo, tf.n + 1):
        sub = TreeFile(m, tf.d, tf.parents[:m - 1], tf.weights[:m])
        if mismatch(sub, q, config) is not None:
            return sub
    return tf


def mismatch(tf: TreeFile, q: Query, config: EngineConfig, engine=None, oracle=None):
    """``(got, expected)`` when the engine and the oracle disagree on ``q``, else None."""
    engine = engine or QueryEngine(tf, config)
    oracle = oracle or OracleTree(tf.parents, tf.weights)
    try:
        got = engine.run(q)
    except PathQueryError as exc:
        got = f"error: {exc}"
    want = oracle_query(oracle, q.kind, _oracle_params(q))
    return None if got == want else (got, want)


def verify(tf: TreeFile, queries: Sequence[Query], config: EngineConfig):
    """First failing query with its minimized reproducer, or None."""
    engine = QueryEngine(tf, config)
    oracle = OracleTree(tf.parents, tf.weights)
    for q in queries:
        bad = mismatch(tf, q, config, engine, oracle)
        if bad is not None:
            small = minimize(tf, q, config)
            got, want = mismatch(small, q, config)
            return q, small, got, want
    return None


def cmd_verify(args) -> int:
    if args.tree:
        tf = _read_tree(args.tree)
    else:
        parents, weights = generate(args.n, args.d, args.seed, args.shape)
        tf = TreeFile(args.n, args.d, parents, weights)
    if args.queries_file:
        with open(args.queries_file) as fh:
            queries = parse_queries(fh.read(), tf.d)
    else:
        rng = random.Random(args.seed + 1)
        kinds = _kinds(args, tf.d)
        queries = [random_query(kinds[i % len(kinds)], tf.n, tf.d, rng)
                   for i in range(args.queries)]
    failure = verify(tf, queries, _config(args))
    if failure is None:
        print(f"ok: {len(queries)} queries on n={tf.n} d={tf.d}")
        return 0
    q, small, got, want = failure
    print("MISMATCH", file=sys.stderr)
    print(f"query: {q.dump()}", file=sys.stderr)
    print(f"got:      {QueryEngine.format(got)}", file=sys.stderr)
    print(f"expected: {QueryEngine.format(want)}", file=sys.stderr)
    print("tree:", file=sys.stderr)
    sys.stderr.write(small.dump())
    return 1


def bench_rows(tf: TreeFile, queries: Sequence[Query], config: EngineConfig):
    engine = QueryEngine(tf, config)
    for q in queries:
        engine.index(q.kind)
    for q in queries:
        stats = QueryStats()
        t0 = time.perf_counter_ns()
        ans = engine.run(q, stats)
        dt = time.perf_counter_ns() - t0
        variant = config.variant if q.kind == "dom" else "default"
        yield {
            "query_kind": q.kind, "n": tf.n, "d": tf.d, "variant": variant, "time_ns": dt,
            "child_queries": stats.child_queries(),
            "probes": sum(p for _, p in stats.probes),
            "k": _answer_size(q.kind, ans),
        }


def cmd_bench(args) -> int:
    parents, weights = generate(args.n, args.d, args.seed, args.shape)
    tf = TreeFile(args.n, args.d, parents, weights)
    rng = random.Random(args.seed + 1)
    kinds = _kinds(args, tf.d)
    queries = [random_query(kinds[i % len(kinds)], tf.n, tf.d, rng) for i in range(args.queries)]
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    cols = ["query_kind", "n", "d", "variant", "time_ns", "child_queries", "probes", "k"]
    writer = csv.DictWriter(out, fieldnames=cols)
    writer.writeheader()
    for row in bench_rows(tf, queries, _config(args)):
        writer.writerow(row)
    if out is not sys.stdout:
        out.close()
    return 0


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--epsilon", type=float, default=0.5,
                        help="exponent for the wide branching factor (default 0.5)")
    common.add_argument("--counting-epsilon", type=float, default=0.2,
                        help="epsilon of the counting base structure (default 0.2)")
    common.add_argument("--branching", type=int, default=None, help="override the branching factor")
    common.add_argument("--variant", choices=("theorem1", "theorem2"), default="theorem1",
                        help="ancestor dominance construction")
    common.add_argument("--kinds", default=None, help="comma separated subset of " + ",".join(KINDS))

    gen = argparse.ArgumentParser(add_help=False)
    gen.add_argument("--n", type=int, default=64)
    gen.add_argument("--d", type=int, default=2)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--shape", choices=SHAPES, default="random")
    gen.add_argument("--queries", type=int, default=1000, help="number of random queries")

    p = argparse.ArgumentParser(prog="pathqueries",
                                description="Multidimensional path queries on weighted trees.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("generate", parents=[common, gen], help="write a random tree file")
    s.add_argument("--out", help="tree file (default stdout)")
    s.add_argument("--query-out", help="also write --queries random queries here")
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("build", parents=[common], help="build and serialize all indices")
    s.add_argument("--tree", required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_build)

    s = sub.add_parser("query", parents=[common], help="answer a query file")
    s.add_argument("--tree", help="tree file (indices built on the fly)")
    s.add_argument("--index", help="index file written by build")
    s.add_argument("queries_file", help="query file, or - for stdin")
    s.set_defaults(func=cmd_query)

    s = sub.add_parser("verify", parents=[common, gen], help="cross-check against the oracle")
    s.add_argument("--tree", help="use this tree file instead of generating one")
    s.add_argument("--queries-file", help="use this query file instead of random queries")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("bench", parents=[common, gen], help="per-query timings and counters as CSV")
    s.add_argument("--out", help="CSV file (default stdout)")
    s.set_defaults(func=cmd_bench)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PathQueryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
