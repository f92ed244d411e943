#!/usr/bin/env python3
"""Synthesis experiment: build a winning strategy transducer for the
universality game of a fixture and play it against periodic adversaries."""

import argparse
import random

from gfgpda import analysis, zoo
from gfgpda.core import LassoWord
from gfgpda.games import make_universality_spec, simulate_play, synthesize_strategy_pdt


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--fixture", default="figure1")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--adversaries", type=int, default=20)
    args = ap.parse_args()

    fx = zoo.get(args.fixture)
    spec = make_universality_spec(fx.automaton)
    strategy = synthesize_strategy_pdt(spec)
    print(f"strategy transducer: {len(strategy.machine.states)} states, "
          f"{len(strategy.machine.rules)} rules")

    rng = random.Random(args.seed)
    losses = 0
    for i in range(args.adversaries):
        u = tuple(rng.choice(spec.sigma1) for _ in range(rng.randint(0, 3)))
        v = tuple(rng.choice(spec.sigma1) for _ in range(rng.randint(1, 3)))
        adam = LassoWord(u, v)
        outcome = simulate_play(strategy, adam)
        won = analysis.lasso_membership(spec.condition, outcome)
        losses += 0 if won else 1
        print(f"  adam={str(adam):<24} outcome={str(outcome):<44} {'WIN' if won else 'LOSS'}")
    print(f"\n{args.adversaries - losses}/{args.adversaries} plays won")
    return 1 if losses else 0


if __name__ == "__main__":
    raise SystemExit(main())
