#!/usr/bin/env python3
"""Run the small-complex census and print a per-size breakdown.

Usage:
    python3 scripts/census_report.py [--max-vertices N] [--workers W]
"""

import argparse
import time

from treeres.census import antichain_covers, check_complex, run_census


def per_size_table(max_vertices: int):
    print(f"{'n':>3} {'complexes':>10} {'quasi-forests':>14} "
          f"{'forests':>8} {'pd<=1':>6} {'violations':>11}")
    for n in range(1, max_vertices + 1):
        total = qf = sf = pd1 = bad = 0
        for masks in antichain_covers(n):
            rep = check_complex((n, masks))
            total += 1
            qf += rep.quasi_forest
            sf += rep.simplicial_forest
            pd1 += rep.pd_ideal is not None and rep.pd_ideal <= 1
            bad += len(rep.violations)
        print(f"{n:>3} {total:>10} {qf:>14} {sf:>8} {pd1:>6} {bad:>11}")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-vertices", type=int, default=4)
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args()

    t0 = time.perf_counter()
    per_size_table(args.max_vertices)
    result = run_census(args.max_vertices, workers=args.workers)
    print()
    print("\n".join(result.summary_lines()))
    print(f"\nelapsed: {time.perf_counter() - t0:.1f}s")
    if result.violations:
        raise SystemExit(2)


if __name__ == "__main__":
    main()
