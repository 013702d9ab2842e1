"""Classify the built-in graph families and re-verify every report."""

import argparse
import json
import time

from graphlearn import certificates
from graphlearn.classifier import Budgets, classify
from graphlearn.graph_oracle import (
    Anticlique,
    AutoTrivial,
    Clique,
    CliqueUnion,
    Complement,
    Oplus,
    Rado,
    RGraph,
    SizeRule,
)

FAMILIES = {
    "clique": Clique(),
    "anticlique": Anticlique(),
    "auto-trivial": AutoTrivial(2, frozenset({(0, 1)}), frozenset({0}), "anticlique"),
    "rado": Rado(),
    "rgraph": RGraph(),
    "clique-union i+1": CliqueUnion(SizeRule("arithmetic", start=1, step=1)),
    "clique-union all 2": CliqueUnion(SizeRule("constant", size=2)),
    "rgraph + clique-union": Oplus(RGraph(), CliqueUnion(SizeRule("constant", size=2))),
    "complement of rgraph": Complement(RGraph()),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--d-max", type=int, default=3)
    ap.add_argument("--n-max", type=int, default=3)
    ap.add_argument("--window", type=int, default=64)
    args = ap.parse_args()
    budgets = Budgets(args.d_max, args.n_max, args.window)

    for name, spec in FAMILIES.items():
        t = time.perf_counter()
        rep = classify(spec, budgets)
        problems = certificates.verify_text(json.dumps(rep.to_dict()))
        print(f"{name:24s} {rep.verdict:26s} {rep.basis:10s} verify={'ok' if not problems else problems}"
              f"  {time.perf_counter() - t:.2f}s")
        for r in rep.reasons:
            print(f"{'':24s} {r}")


if __name__ == "__main__":
    main()
