"""Worst-case mistakes of the automorphically trivial learner.

Enumerates every AutoTrivial spec with |S0| <= M (all S0 edge sets, all
tail-joined subsets, both tails), every target in the windowed class, and
presentation orders: exact over all orders for |S0| <= EXACT_M, seeded
random orders for everything.  Prints one JSON line per spec.
"""

import argparse
import itertools
import json

import numpy as np

from graphlearn.learners import ATLearnerConfig, at_sampled_orders, at_worst_case, hypothesis_matrix


def at_configs(max_m):
    for m in range(max_m + 1):
        pairs = list(itertools.combinations(range(m), 2))
        for ne in range(len(pairs) + 1):
            for edges in itertools.combinations(pairs, ne):
                for n_prime in range(m + 1):
                    for prime in itertools.combinations(range(m), n_prime):
                        for tail in ("anticlique", "clique"):
                            yield ATLearnerConfig(m, frozenset(edges), frozenset(prime), tail)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-m", type=int, default=3)
    ap.add_argument("--exact-m", type=int, default=2, help="exact sweep over orders up to this |S0|")
    ap.add_argument("--k", type=int, default=3)
    ap.add_argument("--window", type=int, default=8)
    ap.add_argument("--orders", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    over = 0
    for cfg in at_configs(args.max_m):
        rows = np.unique(hypothesis_matrix(cfg.spec(), args.k, args.window), axis=0)
        worst = int(at_sampled_orders(cfg, rows.astype(np.int64), args.window, args.orders, args.seed).max())
        exact = cfg.m <= args.exact_m
        if exact:
            worst = max(worst, max(at_worst_case(cfg, r.tolist(), args.window) for r in rows))
        over += worst > cfg.claimed_bound()
        print(json.dumps({
            "m": cfg.m, "s0_edges": sorted(cfg.s0_edges), "s0_prime": sorted(cfg.s0_prime), "tail": cfg.tail,
            "labelings": len(rows), "max_mistakes": worst, "exact": exact,
            "bound_edges_plus_m2": cfg.claimed_bound(), "bound_counting": cfg.proven_bound(),
        }))
    print(json.dumps({"summary": True, "specs_over_edges_plus_m2": over}))


if __name__ == "__main__":
    main()
