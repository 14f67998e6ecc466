#!/usr/bin/env python3
"""Per-query timings and counters over a grid of tree sizes, written as one CSV.

Each (n, d, variant) cell is independent, so cells run on a process pool.
"""
import argparse
import csv
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from itertools import product

from pathqueries.cli import bench_rows
from pathqueries.generate import generate, random_query
from pathqueries.harness import KINDS, EngineConfig, TreeFile

COLUMNS = ["query_kind", "n", "d", "variant", "time_ns", "child_queries", "probes", "k"]


def cell(job):
    n, d, variant, queries, seed, shape = job
    parents, weights = generate(n, d, seed, shape)
    tf = TreeFile(n, d, parents, weights)
    rng = random.Random(seed + 1)
    kinds = [k for k in KINDS if d >= 2 or k != "dom"]
    if variant == "theorem2":
        kinds = ["dom"]
    qs = [random_query(kinds[i % len(kinds)], n, d, rng) for i in range(queries)]
    return list(bench_rows(tf, qs, EngineConfig(variant=variant)))


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--sizes", type=int, nargs="+", default=[64, 128, 256, 512, 1024])
    p.add_argument("--dims", type=int, nargs="+", default=[1, 2, 3])
    p.add_argument("--queries", type=int, default=400)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--shape", default="random")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--out", default=None, help="CSV path (default stdout)")
    args = p.parse_args()

    jobs = [(n, d, v, args.queries, args.seed, args.shape)
            for n, d, v in product(args.sizes, args.dims, ("theorem1", "theorem2"))
            if not (v == "theorem2" and d < 2)]
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    writer = csv.DictWriter(out, fieldnames=COLUMNS)
    writer.writeheader()
    with ProcessPoolExecutor(args.workers) as pool:
        for rows in pool.map(cell, jobs):
            writer.writerows(rows)
    if args.out:
        out.close()


if __name__ == "__main__":
    main()
