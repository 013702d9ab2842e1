"""Command line entry point: ``graphlearn <subcommand> ...``.

Exit codes: 0 verdict or witness found, 1 usage error or malformed input,
2 search budget exceeded, 3 no witness within the window.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import certificates
from .classes import Budget, BudgetExceeded
from .classifier import Budgets, Pattern, almost_random_witness, classify, find_induced
from .dimensions import contains_thresholds, lemma56_witness, vc_lower_bound
from .graph_oracle import (
    Anticlique,
    AutoTrivial,
    Clique,
    CliqueUnion,
    Complement,
    FiniteSupportPermutation,
    PresentedCopy,
    Rado,
    RGraph,
    SizeRule,
    m_core,
    n_core,
    spec_from_json,
    spec_to_json,
)
from .learners import (
    ATLearner,
    ATLearnerConfig,
    CliqueFiso2Learner,
    ConstantLearner,
    FixedOrder,
    VersionSpaceAdversary,
    fiso_targets,
    lex_order,
    random_order,
    run_game,
    sweep,
)
from .reductions import reduce_prefix

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_NONE = 0, 1, 2, 3

FAMILIES = ("clique", "anticlique", "rado", "rgraph", "m-core", "n-core", "co-m-core", "clique-union", "auto-trivial")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# argument parsing helpers
# ---------------------------------------------------------------------------


def parse_sizes(text: str) -> SizeRule:
    """``all:3``, ``arith:START,STEP`` or ``periodic:PREFIX|CYCLE`` (comma lists)."""
    kind, _, rest = text.partition(":")
    try:
        if kind == "all":
            return SizeRule("constant", size=int(rest))
        if kind == "arith":
            start, step = (int(x) for x in rest.split(","))
            return SizeRule("arithmetic", start=start, step=step)
        if kind == "periodic":
            pre, bar, cyc = rest.partition("|")
            if not bar:
                pre, cyc = "", rest
            ints = lambda s: tuple(int(x) for x in s.split(",") if x)  # noqa: E731
            return SizeRule("periodic", prefix=ints(pre), cycle=ints(cyc))
    except ValueError as e:
        raise UsageError(f"bad --sizes {text!r}: {e}") from None
    raise UsageError(f"bad --sizes {text!r}: use all:N, arith:START,STEP or periodic:PREFIX|CYCLE")


def parse_perm(text: str) -> FiniteSupportPermutation:
    """``identity``/``id`` or cycle notation such as ``(0 3)(1 2)``."""
    t = text.strip()
    if t in ("identity", "id", ""):
        return FiniteSupportPermutation()
    cycles = re.findall(r"\(([^()]*)\)", t)
    if not cycles or re.sub(r"\([^()]*\)", "", t).strip():
        raise UsageError(f"bad permutation {text!r}: use cycle notation like '(0 3)(1 2)'")
    try:
        return FiniteSupportPermutation.from_cycles(*[[int(x) for x in c.replace(",", " ").split()] for c in cycles])
    except ValueError as e:
        raise UsageError(f"bad permutation {text!r}: {e}") from None


def parse_edges(text: str) -> frozenset:
    out = set()
    for part in filter(None, text.split(",")):
        u, _, v = part.partition("-")
        try:
            out.add((int(u), int(v)))
        except ValueError:
            raise UsageError(f"bad edge {part!r}: use U-V") from None
    return frozenset(out)


def build_spec(args, default=None):
    """The graph named by --spec or --family; ``default`` when neither is given."""
    if getattr(args, "spec", None):
        text = sys.stdin.read() if args.spec == "-" else open(args.spec, encoding="utf-8").read()
        return _load_spec(text)
    fam = getattr(args, "family", None)
    if fam is None:
        if default is None:
            raise UsageError("give --family or --spec")
        return default
    d = args.d_param
    if fam == "clique":
        return Clique()
    if fam == "anticlique":
        return Anticlique()
    if fam == "rado":
        return Rado()
    if fam == "rgraph":
        return RGraph()
    if fam in ("m-core", "n-core", "co-m-core"):
        if d is None or d < 1:
            raise UsageError(f"--family {fam} needs --d-param >= 1")
        if fam == "n-core":
            return n_core(d)
        return m_core(d) if fam == "m-core" else Complement(m_core(d))
    if fam == "clique-union":
        return CliqueUnion(parse_sizes(args.sizes or "all:2"))
    if fam == "auto-trivial":
        try:
            return AutoTrivial(
                args.m,
                parse_edges(args.s0_edges or ""),
                frozenset(int(x) for x in (args.s0_prime or "").split(",") if x),
                args.tail,
            )
        except ValueError as e:
            raise UsageError(f"bad auto-trivial spec: {e}") from None
    raise UsageError(f"unknown family {fam!r}")


def _load_spec(text: str):
    try:
        return spec_from_json(text)
    except (ValueError, KeyError, TypeError) as e:
        raise UsageError(f"malformed graph spec: {e}") from None


def _add_spec_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("graph")
    g.add_argument("--family", choices=FAMILIES)
    g.add_argument("--spec", help="graph spec JSON file, '-' for stdin")
    g.add_argument("--d-param", type=int, help="d for m-core, n-core, co-m-core")
    g.add_argument("--sizes", help="clique-union sizes: all:N | arith:START,STEP | periodic:PREFIX|CYCLE")
    g.add_argument("--m", type=int, default=0, help="auto-trivial: |S0|")
    g.add_argument("--s0-edges", help="auto-trivial: edges inside S0, e.g. 0-1,1-2")
    g.add_argument("--s0-prime", help="auto-trivial: S0 vertices joined to the tail, e.g. 0,2")
    g.add_argument("--tail", choices=("clique", "anticlique"), default="anticlique")


def _add_out_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="write the result here instead of stdout")
    p.add_argument("--format", choices=("json", "human"), default="json")
    p.add_argument("--ceiling", type=int, help="search budget (default: $GRAPHLEARN_BUDGET or 1e9)")


def _emit(args, doc, human: str) -> None:
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n" if args.format == "json" else human + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _check_window(k: int, W: int) -> None:
    if k < 0 or W < 1:
        raise UsageError("k must be >= 0 and the window positive")
    if W < k:
        raise UsageError(f"window {W} is smaller than k={k}")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_classify(args) -> int:
    if not args.family and not args.spec:
        spec = _load_spec(sys.stdin.read())
    else:
        spec = build_spec(args)
    report = classify(spec, Budgets(args.d_max, args.n_max, args.window, args.ceiling))
    doc = report.to_dict()
    human = f"{report.verdict} ({report.basis})\n" + "\n".join(report.reasons)
    _emit(args, doc, human)
    return EXIT_OK


def _witness_out(args, kind, spec, params, w, describe) -> int:
    if w is None:
        sys.stderr.write(f"no {kind} witness within window {params.get('window')}\n")
        return EXIT_NONE
    doc = certificates.make_certificate(kind, spec, params, w)
    _emit(args, doc, describe(w))
    return EXIT_OK


def cmd_vc(args) -> int:
    spec = build_spec(args)
    _check_window(args.k, args.window)
    w = vc_lower_bound(spec, args.k, args.d, args.window, Budget(args.ceiling))
    params = {"k": args.k, "d": args.d, "window": args.window}
    return _witness_out(args, "shatter", spec, params, w, lambda w: f"shattered pairs {list(w.pairs)}")


def cmd_thresholds(args) -> int:
    spec = build_spec(args)
    _check_window(args.k, args.window)
    w = contains_thresholds(spec, args.k, args.t, args.window, Budget(args.ceiling))
    params = {"k": args.k, "t": args.t, "window": args.window}
    return _witness_out(
        args, "thresholds", spec, params, w,
        lambda w: f"pairs {list(w.pairs)}; hypotheses {[str(h) for h in w.hypotheses]}",
    )


def cmd_witness(args) -> int:
    spec = build_spec(args)
    b = Budget(args.ceiling)
    W = args.window
    if args.kind == "lemma56":
        w = lemma56_witness(spec, args.n, W, b)
        return _witness_out(args, "lemma56", spec, {"n": args.n, "window": W}, w,
                            lambda w: f"u={w.u} v={w.v}")
    if args.kind == "almost-random":
        w = almost_random_witness(spec, args.n, W, b)
        return _witness_out(args, "almost_random", spec, {"n": args.n, "window": W}, w,
                            lambda w: f"A={w.A} realizers={w.realizers}")
    pattern = Pattern({"md": "Md", "nd": "Nd", "comd": "CoMd"}[args.kind], args.d)
    w = find_induced(spec, pattern, W, b)
    return _witness_out(args, "induced", spec, {"pattern": pattern.kind, "d": pattern.d, "window": W}, w,
                        lambda w: f"{pattern} -> {list(w.embedding)}")


DEFAULT_AT = AutoTrivial(2, frozenset({(0, 1)}), frozenset({0}), "anticlique")
DEFAULT_CLIQUES = CliqueUnion(SizeRule("constant", size=2))


def cmd_game(args) -> int:
    W = args.window
    if args.learner == "at":
        spec = build_spec(args, DEFAULT_AT)
        if not isinstance(spec, AutoTrivial):
            raise UsageError("the at learner needs an auto-trivial spec")
        cfg = ATLearnerConfig.from_spec(spec)
        make = lambda: ATLearner(cfg)  # noqa: E731
        bound = cfg.claimed_bound()
    elif args.learner == "clique-fiso2":
        spec = build_spec(args, DEFAULT_CLIQUES)
        if not isinstance(spec, CliqueUnion):
            raise UsageError("the clique-fiso2 learner needs a clique-union spec")
        make = lambda: CliqueFiso2Learner(spec)  # noqa: E731
        bound = 6
    else:
        spec = build_spec(args, DEFAULT_AT)
        bit = 0 if args.learner == "constant-zero" else 1
        make = lambda: ConstantLearner(bit)  # noqa: E731
        bound = None

    if args.sweep == "exhaustive":
        if args.learner not in ("at", "clique-fiso2"):
            raise UsageError("--sweep exhaustive needs a mistake-driven learner (at, clique-fiso2)")
        k = args.k if args.k is not None else (3 if args.learner == "at" else 2)
        _check_window(k, W)
        res = sweep(make, fiso_targets(spec, k, W), W, Budget(args.ceiling))
        res.update({"learner": args.learner, "k": k, "window": W, "spec": spec.to_dict(), "claimed_bound": bound,
                    "within_bound": None if bound is None else res["max_mistakes"] <= bound})
        _emit(args, res, f"max mistakes {res['max_mistakes']} over {res['targets']} targets and all orders"
                         f" (claimed bound {bound})")
        return EXIT_OK

    learner = make()
    if args.adversary == "halving":
        k = args.k if args.k is not None else 2
        _check_window(k, W)
        adv = VersionSpaceAdversary(spec, k, W, args.strategy, Budget(args.ceiling))
        tr = run_game(learner, adv, None, args.max_rounds)
    else:
        target = PresentedCopy(spec, parse_perm(args.target))
        order = lex_order(W) if args.order == "lex" else random_order(W, args.seed)
        tr = run_game(learner, FixedOrder(order), target, args.max_rounds)
    text = tr.to_jsonl()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    if args.format == "human" or args.out:
        sys.stdout.write(f"{tr.mistakes} mistakes in {len(tr.rounds)} rounds"
                         + (f" (claimed bound {bound})" if bound is not None else "") + "\n")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_reduce(args) -> int:
    try:
        g = reduce_prefix(args.which, args.prefix, args.prefix2)
    except ValueError as e:
        raise UsageError(str(e)) from None
    spec = g.to_spec()
    if args.format == "human":
        text = f"{spec}: {g.n_vertices} vertices, {len(g.edges)} edges, {len(g.isolated())} isolated\n"
    else:
        text = spec_to_json(spec) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    text = sys.stdin.read() if args.file == "-" else open(args.file, encoding="utf-8").read()
    problems = certificates.verify_text(text)
    for p in problems:
        sys.stderr.write(f"invalid: {p}\n")
    if not problems:
        sys.stdout.write("ok\n")
    return EXIT_OK if not problems else EXIT_USAGE


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="graphlearn", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", help="place a graph in the learnability landscape")
    _add_spec_args(c)
    _add_out_args(c)
    c.add_argument("--d-max", type=int, default=3)
    c.add_argument("--n-max", type=int, default=3)
    c.add_argument("--window", type=int, default=64)
    c.set_defaults(func=cmd_classify)

    v = sub.add_parser("vc", help="search a shattered d-tuple of pairs")
    _add_spec_args(v)
    _add_out_args(v)
    v.add_argument("--k", type=int, required=True)
    v.add_argument("--d", type=int, required=True)
    v.add_argument("--window", type=int, default=8)
    v.set_defaults(func=cmd_vc)

    t = sub.add_parser("thresholds", help="search t thresholds")
    _add_spec_args(t)
    _add_out_args(t)
    t.add_argument("--k", type=int, required=True)
    t.add_argument("--t", type=int, required=True)
    t.add_argument("--window", type=int, default=8)
    t.set_defaults(func=cmd_thresholds)

    w = sub.add_parser("witness", help="staircase, almost-random set or induced pattern")
    _add_spec_args(w)
    _add_out_args(w)
    w.add_argument("--kind", required=True, choices=("lemma56", "almost-random", "md", "nd", "comd"))
    w.add_argument("--n", type=int, default=2)
    w.add_argument("--d", type=int, default=1)
    w.add_argument("--window", type=int, default=16)
    w.set_defaults(func=cmd_witness)

    g = sub.add_parser("game", help="play the online learning game")
    _add_spec_args(g)
    _add_out_args(g)
    g.add_argument("--learner", required=True, choices=("at", "clique-fiso2", "constant-zero", "constant-one"))
    g.add_argument("--adversary", choices=("fixed", "halving"), default="fixed")
    g.add_argument("--strategy", choices=("contradict", "majority"), default="contradict",
                   help="halving adversary: how to answer")
    g.add_argument("--target", default="identity", help="target permutation, e.g. '(0 3)'")
    g.add_argument("--order", choices=("lex", "random"), default="lex")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--window", type=int, default=10)
    g.add_argument("--k", type=int, help="support bound for the class (sweep, halving)")
    g.add_argument("--max-rounds", type=int)
    g.add_argument("--sweep", choices=("none", "exhaustive"), default="none")
    g.set_defaults(func=cmd_game)

    r = sub.add_parser("reduce", help="run a staged construction on a prefix")
    r.add_argument("--which", required=True, choices=("h", "f", "g", "fg", "hf"))
    r.add_argument("--prefix", required=True)
    r.add_argument("--prefix2", help="second prefix for fg and hf")
    r.add_argument("--out")
    r.add_argument("--format", choices=("json", "human"), default="json")
    r.set_defaults(func=cmd_reduce)

    f = sub.add_parser("verify", help="re-check a witness file or report")
    f.add_argument("file", help="JSON file, '-' for stdin")
    f.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        sys.stderr.write(f"graphlearn: {e}\n")
        return EXIT_USAGE
    except BudgetExceeded as e:
        sys.stderr.write(f"graphlearn: budget exceeded: {e}\n")
        return EXIT_BUDGET
    except OSError as e:
        sys.stderr.write(f"graphlearn: {e}\n")
        return EXIT_USAGE
    except ValueError as e:
        sys.stderr.write(f"graphlearn: invalid arguments: {e}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

