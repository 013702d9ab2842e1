"""Stage traces of the prefix-driven constructions, with witness levels."""

import argparse

from graphlearn.classes import BudgetExceeded
from graphlearn.classifier import almost_random_witness
from graphlearn.dimensions import lemma56_witness
from graphlearn.reductions import reduce_prefix


def max_level(search, spec, W, top):
    level = 0
    for n in range(1, top + 1):
        if search(spec, n, W) is None:
            break
        level = n
    return level


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("which", choices=("h", "f", "g", "fg", "hf"))
    ap.add_argument("prefixes", nargs="+", help="0/1 strings; for fg and hf pass P:Q")
    ap.add_argument("--levels", type=int, default=4, help="highest witness level to search")
    ap.add_argument("--stages", action="store_true", help="print every stage record")
    args = ap.parse_args()

    for text in args.prefixes:
        p, _, q = text.partition(":")
        try:
            g = reduce_prefix(args.which, p, q or None)
        except BudgetExceeded as e:
            print(f"{text}: {e}")
            continue
        spec, W = g.to_spec(), max(g.n_vertices, 1)
        stair = max_level(lemma56_witness, spec, W, args.levels)
        rand = max_level(almost_random_witness, spec, W, args.levels)
        print(f"{args.which}({text}): {g.n_vertices} vertices, {len(g.edges)} edges, "
              f"{len(g.isolated())} isolated, staircase level {stair}, almost-random level {rand}")
        if args.stages:
            for st in g.stages:
                print(f"  stage {st.stage} bit {st.bit}: +{len(st.vertices)} vertices, +{len(st.edges)} edges"
                      + (f", unused {list(st.unused)}" if st.unused else "") + (f" ({st.note})" if st.note else ""))


if __name__ == "__main__":
    main()
