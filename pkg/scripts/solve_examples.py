#!/usr/bin/env python3
"""Game-solving experiment: universality verdicts for the fixture automata
via the block-game reduction, with solver statistics."""

import argparse
import time

from gfgpda import zoo
from gfgpda.games import EVE, ResourceExceeded, make_universality_spec, solve_gale_stewart


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--budget", type=int, default=5_000_000)
    ap.add_argument("fixtures", nargs="*", default=["figure1", "example23", "lss",
                                                    "parity2", "allodd"])
    args = ap.parse_args()

    print(f"{'fixture':<12} {'verdict':<14} {'height':>6} {'vertices':>9} {'time':>8}")
    for name in args.fixtures:
        fx = zoo.get(name)
        started = time.monotonic()
        try:
            result = solve_gale_stewart(make_universality_spec(fx.automaton), args.budget)
        except ResourceExceeded as exc:
            print(f"{name:<12} {'resource':<14} {exc}")
            continue
        verdict = "universal" if result.winner == EVE else "non-universal"
        stats = result.solve.stats
        print(f"{name:<12} {verdict:<14} {stats['height']:>6} {stats['vertices']:>9} "
              f"{time.monotonic() - started:>7.2f}s")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
