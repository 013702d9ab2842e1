"""Worst-case mistakes of the clique-union learner over a windowed Fiso_2.

Every target and every presentation order of the window pairs is covered
exactly.  Size rules use the CLI syntax (all:N, arith:START,STEP,
periodic:PREFIX|CYCLE).
"""

import argparse
import json

from graphlearn.cli import parse_sizes
from graphlearn.graph_oracle import CliqueUnion
from graphlearn.learners import clique_fiso2_learner, fiso_targets, sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", nargs="+", default=["all:2", "all:3", "periodic:|2,3"])
    ap.add_argument("--window", type=int, default=6)
    ap.add_argument("--k", type=int, default=2)
    args = ap.parse_args()

    for text in args.sizes:
        base = CliqueUnion(parse_sizes(text))
        res = sweep(lambda: clique_fiso2_learner(base), fiso_targets(base, args.k, args.window), args.window)
        print(json.dumps({"sizes": text, **res}))


if __name__ == "__main__":
    main()
