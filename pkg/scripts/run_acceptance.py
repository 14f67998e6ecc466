#!/usr/bin/env python3
"""Run the acceptance criteria and print one PASS/FAIL line each; exit 1 on any failure."""
import argparse
import sys

from pathqueries import acceptance


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--only", type=int, nargs="*", help="criterion numbers to run (default all)")
    args = p.parse_args()
    chosen = [c for i, c in enumerate(acceptance.CRITERIA, start=1)
              if not args.only or i in args.only]
    failed = 0
    for crit in chosen:
        r = crit()
        print(r.line(), flush=True)
        failed += not r.passed
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
