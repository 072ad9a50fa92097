#!/usr/bin/env python3
"""Run the three algebraic law suites and print a per-group summary.

Useful for eyeballing skip rates and overflow (truncation) pressure at
different sample sizes and seeds.
"""

import argparse
import sys
import time
from collections import defaultdict

from relrew.laws import SampleConfig, run_all


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--density", type=float, default=0.15)
    ap.add_argument("--verbose", action="store_true",
                    help="one line per law instead of per group")
    args = ap.parse_args()

    cfg = SampleConfig(seed=args.seed, samples=args.samples,
                       density=args.density)
    t0 = time.time()
    reports = run_all(cfg)
    elapsed = time.time() - t0

    if args.verbose:
        for r in reports:
            print(f"{r.law_id:34} {r.verdict:5} skips={r.skips:4} "
                  f"unconfirmed={r.unconfirmed:3} dropped={r.overflow_dropped}")
    else:
        groups = defaultdict(lambda: [0, 0, 0, 0])
        for r in reports:
            g = groups[r.group]
            g[0] += 1
            g[1] += r.verdict == "pass"
            g[2] += r.skips
            g[3] += r.unconfirmed
        print(f"{'group':20} {'laws':>5} {'pass':>5} {'skips':>7} {'unconf':>7}")
        for name in sorted(groups):
            n, p, s, u = groups[name]
            print(f"{name:20} {n:>5} {p:>5} {s:>7} {u:>7}")

    failing = [r.law_id for r in reports if r.verdict != "pass"]
    print(f"\n{len(reports)} laws, {len(failing)} failing, {elapsed:.1f}s")
    if failing:
        print("failing:", ", ".join(failing))
    return 1 if failing else 0


if __name__ == "__main__":
    sys.exit(main())
