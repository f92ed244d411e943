#!/usr/bin/env python3
"""Membership corpus experiment: engine vs closed-form samplers vs the
bounded brute-force oracle, for every fixture in the zoo."""

import argparse
import time

from gfgpda import analysis
from gfgpda.zoo import all_fixtures


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--count", type=int, default=20, help="lassos per fixture")
    ap.add_argument("--height", type=int, default=8, help="oracle height bound")
    args = ap.parse_args()

    total = bad = inconclusive = 0
    started = time.monotonic()
    print(f"{'fixture':<12} {'lassos':>6} {'in':>4} {'engine=closed-form':>19} {'oracle':>10}")
    for fx in all_fixtures():
        sample = fx.sample(seed=args.seed, count=args.count)
        agree = 0
        oracle_checked = 0
        for w, flag in sample:
            total += 1
            got = analysis.lasso_membership(fx.automaton, w)
            if got == flag:
                agree += 1
            else:
                bad += 1
                print(f"  DISAGREE {fx.name} {w}: engine={got} closed-form={flag}")
            verdict = analysis.brute_force_lasso_oracle(fx.automaton, w, args.height, 30_000)
            if verdict == analysis.UNKNOWN:
                inconclusive += 1
            else:
                oracle_checked += 1
                if verdict != got:
                    bad += 1
                    print(f"  ORACLE DISAGREES {fx.name} {w}")
        n_in = sum(1 for _, f in sample if f)
        print(f"{fx.name:<12} {len(sample):>6} {n_in:>4} {agree:>16}/{len(sample)} "
              f"{oracle_checked:>7} ok")
    elapsed = time.monotonic() - started
    print(f"\n{total} checks, {bad} disagreements, {inconclusive} oracle-inconclusive, "
          f"{elapsed:.1f}s")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
