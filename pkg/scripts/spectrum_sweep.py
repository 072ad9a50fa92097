#!/usr/bin/env python3
"""Sweep the reduction spectrum of a rewrite system over seed depths.

For each depth: size of the reachable closure, pointwise step inclusions,
star equality, and the gap between the one-step full relation and the
sequential star (the full step is strictly coarser than a single parallel
step but strictly finer than the star).
"""

import argparse
import sys
import time

from relrew.analysis import closure_nodes, seed_terms, spectrum_survey
from relrew.rewrite import ground_instances, parse_trs
from relrew.syntax import Universe
from relrew.termrel import full_closure, rt_closure, sequential_closure

DEFAULT_TRS = """\
sig 0/0 S/1 A/2 M/2
var x y
rule A(0,x) -> x
rule A(S(x),y) -> S(A(x,y))
rule M(0,x) -> 0
rule M(S(x),y) -> A(M(x,y),y)
"""


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--file", default=None, help="TRS file (default: arithmetic)")
    ap.add_argument("--max-depth", type=int, default=3)
    args = ap.parse_args()

    text = open(args.file).read() if args.file else DEFAULT_TRS
    trs = parse_trs(text)

    print(f"{'depth':>5} {'nodes':>7} {'ok':>3} {'full':>8} {'seq-star':>9} "
          f"{'gap':>6} {'time':>7}")
    for depth in range(1, args.max_depth + 1):
        t0 = time.time()
        seeds = seed_terms(trs, depth)
        report = spectrum_survey(trs, seeds)

        nodes = closure_nodes(trs, seeds)
        u = Universe.from_terms(trs.signature, trs.variables, nodes)
        g = ground_instances(trs, u)
        gh = full_closure(g)
        star = rt_closure(sequential_closure(g))
        gap = len(star.pairs - gh.pairs)
        print(f"{depth:>5} {report.nodes:>7} {'y' if report.ok else 'N':>3} "
              f"{len(gh.pairs):>8} {len(star.pairs):>9} {gap:>6} "
              f"{time.time() - t0:>6.1f}s")
        if not report.ok:
            print("  violations:", report.inclusion_violations[:5])
            return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
