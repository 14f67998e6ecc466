#!/usr/bin/env python3
"""Measured space of the counting base and the 2D dominance structure under doubling n."""
import argparse

from pathqueries.acceptance import space_series


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--start", type=int, default=4096)
    p.add_argument("--doublings", type=int, default=3)
    p.add_argument("--seeds", type=int, default=3)
    args = p.parse_args()
    sizes = [args.start << i for i in range(args.doublings + 1)]
    series = space_series(sizes, tuple(range(args.seeds)))
    print(f"{'n':>8} {'count bytes':>14} {'ratio':>6} {'dom bytes':>14} {'ratio':>6}")
    prev = None
    for n, cb, dm in series:
        rc = f"{cb / prev[1]:.2f}" if prev else "-"
        rd = f"{dm / prev[2]:.2f}" if prev else "-"
        print(f"{n:>8} {cb:>14.0f} {rc:>6} {dm:>14.0f} {rd:>6}")
        prev = (n, cb, dm)


if __name__ == "__main__":
    main()
