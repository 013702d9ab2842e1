"""Online learning game between a learner and an opponent.

Each round the opponent names a pair, the learner predicts whether it is an
edge of the hidden copy, and the opponent reveals the truth.  A pair is
asked at most once; a repeated proposal is answered from the transcript and
not shown to the learner.

Learners are small mutable objects with ``predict(u, v)`` and
``feedback(u, v, truth)``.  Both built-in learners only change state
after a mistake, which :func:`worst_case_mistakes` exploits to compute the
maximum over *all* presentation orders exactly.
"""

from __future__ import annotations

import copy
import json
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .classes import Budget, _budget, enumerate_permutations
from .graph_oracle import (
    AutoTrivial,
    CliqueUnion,
    FiniteSupportPermutation,
    GraphSpec,
    Pair,
    PresentedCopy,
    iter_bits,
    norm_pair,
    window_pairs,
)


class Learner:
    name = "learner"

    def predict(self, u: int, v: int) -> int:
        raise NotImplementedError

    def feedback(self, u: int, v: int, truth: int) -> None:
        pass

    def state_key(self):
        """Hashable snapshot of everything ``predict`` depends on."""
        return ()

    def clone(self) -> "Learner":
        return copy.deepcopy(self)


class ConstantLearner(Learner):
    def __init__(self, bit: int):
        self.bit = int(bit)
        self.name = f"constant-{'one' if bit else 'zero'}"

    def predict(self, u, v):
        return self.bit


class FixedHypothesisLearner(Learner):
    """Predicts with one fixed copy; never errs when that copy is the target."""

    name = "consistent"

    def __init__(self, hypothesis: PresentedCopy):
        self.hypothesis = hypothesis

    def predict(self, u, v):
        return int(self.hypothesis.edge(u, v))


# ---------------------------------------------------------------------------
# learner for automorphically trivial graphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ATLearnerConfig:
    m: int
    s0_edges: frozenset = frozenset()
    s0_prime: frozenset = frozenset()
    tail: str = "anticlique"

    @classmethod
    def from_spec(cls, g: AutoTrivial) -> "ATLearnerConfig":
        return cls(g.m, g.s0_edges, g.s0_prime, g.tail)

    def spec(self) -> AutoTrivial:
        return AutoTrivial(self.m, self.s0_edges, self.s0_prime, self.tail)

    def claimed_bound(self) -> int:
        """|E(G[S0])| + |S0|^2."""
        return len(self.s0_edges) + self.m**2

    def proven_bound(self) -> int:
        """|S0|(|S0|+1) + C(|S0|, 2), the bound the counting argument supports
        for the strict ``> |S0|`` trigger."""
        m = self.m
        return m * (m + 1) + m * (m - 1) // 2


class ATLearner(Learner):
    """Predict the tail's default; a vertex that has caused more than |S0|
    mistakes gets the opposite prediction on every later pair."""

    name = "at"

    def __init__(self, config: ATLearnerConfig):
        self.config = config
        self.default = 1 if config.tail == "clique" else 0
        self.errors: dict[int, int] = {}
        self.flipped: set[int] = set()

    def predict(self, u, v):
        if u in self.flipped or v in self.flipped:
            return 1 - self.default
        return self.default

    def feedback(self, u, v, truth):
        if self.predict(u, v) == truth:
            return
        for x in (u, v):
            self.errors[x] = self.errors.get(x, 0) + 1
            if self.errors[x] > self.config.m:
                self.flipped.add(x)

    def state_key(self):
        return (tuple(sorted(self.errors.items())), tuple(sorted(self.flipped)))


def at_learner(config: ATLearnerConfig) -> ATLearner:
    return ATLearner(config)


# ---------------------------------------------------------------------------
# learner for Fiso_2 of a disjoint union of cliques
# ---------------------------------------------------------------------------


class CliqueFiso2Learner(Learner):
    """Counter strategy for copies of a union of cliques moved by one swap.

    Every vertex x has counters c0[x], c1[x] of mistakes made while
    predicting 0 resp. 1 on a pair through x.  While both stay below 2 the
    learner predicts the base graph.  When a mistake with prediction i on
    (v, w) pushes c_i[v] to 2, v is re-anchored:

    * i = 0: predict (v, x) as (w, x) in the base;
    * i = 1 and c0[v] = 0: predict (v, x) as 0;
    * i = 1 and c0[v] = 1: predict (v, x) as (z, x) in the base, where (v, z)
      is the pair of v's first 0-mistake.

    If both endpoints are anchored, the one anchored first decides.
    """

    name = "clique-fiso2"

    def __init__(self, base: GraphSpec):
        self.base = base
        self.c0: dict[int, int] = {}
        self.c1: dict[int, int] = {}
        self.first_zero: dict[int, int] = {}
        # vertex -> (serial, anchor vertex or None for all-zero)
        self.anchor: dict[int, tuple[int, int | None]] = {}
        self._serial = 0

    def _rule(self, v: int, x: int) -> int:
        a = self.anchor[v][1]
        if a is None:
            return 0
        return int(self.base.edge(a, x))

    def predict(self, u, v):
        au, av = self.anchor.get(u), self.anchor.get(v)
        if au is not None and (av is None or au[0] <= av[0]):
            return self._rule(u, v)
        if av is not None:
            return self._rule(v, u)
        return int(self.base.edge(u, v))

    def feedback(self, u, v, truth):
        i = self.predict(u, v)
        if i == truth:
            return
        counters = self.c0 if i == 0 else self.c1
        for x, other in ((u, v), (v, u)):
            counters[x] = counters.get(x, 0) + 1
            if i == 0 and x not in self.first_zero:
                self.first_zero[x] = other
        for x, other in ((u, v), (v, u)):
            if counters[x] != 2:
                continue
            self._serial += 1
            if i == 0:
                self.anchor[x] = (self._serial, other)
            elif self.c0.get(x, 0) == 0:
                self.anchor[x] = (self._serial, None)
            else:
                self.anchor[x] = (self._serial, self.first_zero[x])

    def state_key(self):
        return (
            tuple(sorted(self.c0.items())),
            tuple(sorted(self.c1.items())),
            tuple(sorted(self.first_zero.items())),
            tuple(sorted(self.anchor.items())),
        )


def clique_fiso2_learner(base: CliqueUnion) -> CliqueFiso2Learner:
    return CliqueFiso2Learner(base)


# ---------------------------------------------------------------------------
# opponents
# ---------------------------------------------------------------------------


class Adversary:
    """Proposes pairs; adaptive opponents also decide the truth."""

    adaptive = False

    def propose(self, transcript: "GameTranscript") -> Pair | None:
        raise NotImplementedError

    def decide(self, pair: Pair, prediction: int) -> int:  # pragma: no cover
        raise NotImplementedError


class FixedOrder(Adversary):
    def __init__(self, order: Iterable[Pair]):
        self.order = [norm_pair(*p) for p in order]
        self._i = 0

    def propose(self, transcript):
        if self._i >= len(self.order):
            return None
        p = self.order[self._i]
        self._i += 1
        return p


def lex_order(W: int) -> list[Pair]:
    return window_pairs(W)


def random_order(W: int, seed: int) -> list[Pair]:
    pairs = window_pairs(W)
    random.Random(seed).shuffle(pairs)
    return pairs


class VersionSpaceAdversary(Adversary):
    """Keeps every windowed copy consistent with past reveals.

    Each round it proposes the lexicographically first window pair whose
    labels split the version space most evenly.  With ``strategy="contradict"``
    it reveals the opposite of the prediction whenever both labels keep the
    version space nonempty, so every such round is a forced mistake.  With
    ``strategy="majority"`` it reveals the label held by more survivors
    (ties go to 0).  It stops when one labeling is left or no pair splits.
    """

    adaptive = True

    def __init__(self, base: GraphSpec, k: int, W: int, strategy: str = "contradict",
                 budget: Budget | None = None):
        if strategy not in ("contradict", "majority"):
            raise ValueError(f"unknown strategy {strategy!r}")
        self.strategy = strategy
        self.pairs = window_pairs(W)
        self.labels = hypothesis_matrix(base, k, W, budget)
        self.alive = np.ones(len(self.labels), dtype=bool)
        self._asked: set[int] = set()

    def survivors(self) -> np.ndarray:
        return np.unique(self.labels[self.alive], axis=0)

    def propose(self, transcript):
        live = self.labels[self.alive]
        if len(np.unique(live, axis=0)) <= 1:
            return None
        ones = live.sum(axis=0)
        n = len(live)
        best, best_gap = None, None
        for idx in range(len(self.pairs)):
            if idx in self._asked or ones[idx] == 0 or ones[idx] == n:
                continue
            gap = abs(2 * int(ones[idx]) - n)
            if best_gap is None or gap < best_gap:
                best, best_gap = idx, gap
        if best is None:
            return None
        self._asked.add(best)
        return self.pairs[best]

    def decide(self, pair, prediction):
        idx = self.pairs.index(pair)
        col = self.labels[self.alive, idx]
        ones = int(col.sum())
        zeros = len(col) - ones
        if self.strategy == "contradict":
            truth = 1 - prediction
            if (ones if truth else zeros) == 0:
                truth = prediction
        else:
            truth = 1 if ones > zeros else 0
        self.alive &= self.labels[:, idx] == truth
        return truth


def hypothesis_matrix(base: GraphSpec, k: int, W: int, budget: Budget | None = None) -> np.ndarray:
    """Boolean matrix: one row per permutation of the windowed class, one
    column per window pair, entry = label of that pair in the copy."""
    budget = _budget(budget)
    adj = np.zeros((W, W), dtype=bool)
    for u in range(W):
        for v in range(u + 1, W):
            adj[u, v] = adj[v, u] = base.edge(u, v)
    invs = []
    for h in enumerate_permutations(k, W):
        budget.charge()
        invs.append([h.inv(x) for x in range(W)])
    inv = np.array(invs, dtype=np.int64)
    U = np.array([p[0] for p in window_pairs(W)], dtype=np.int64)
    V = np.array([p[1] for p in window_pairs(W)], dtype=np.int64)
    return adj[inv[:, U], inv[:, V]]


# ---------------------------------------------------------------------------
# the game
# ---------------------------------------------------------------------------


@dataclass
class Round:
    u: int
    v: int
    prediction: int
    truth: int

    @property
    def mistake(self) -> bool:
        return self.prediction != self.truth


@dataclass
class GameTranscript:
    rounds: list[Round] = field(default_factory=list)
    repeats: int = 0
    learner: str = ""
    target: dict | None = None

    @property
    def mistakes(self) -> int:
        return sum(r.mistake for r in self.rounds)

    def asked(self) -> dict[Pair, int]:
        return {(r.u, r.v): r.truth for r in self.rounds}

    def to_jsonl(self) -> str:
        lines = [
            json.dumps({"round": i, "pair": [r.u, r.v], "prediction": r.prediction,
                        "truth": r.truth, "mistake": r.mistake}, sort_keys=True)
            for i, r in enumerate(self.rounds)
        ]
        lines.append(json.dumps({"summary": True, "learner": self.learner, "rounds": len(self.rounds),
                                 "mistakes": self.mistakes, "repeats": self.repeats,
                                 "target": self.target}, sort_keys=True))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_jsonl(cls, text: str) -> "GameTranscript":
        t = cls()
        for line in text.splitlines():
            if not line.strip():
                continue
            rec = json.loads(line)
            if rec.get("summary"):
                t.learner = rec.get("learner", "")
                t.repeats = rec.get("repeats", 0)
                t.target = rec.get("target")
                continue
            u, v = rec["pair"]
            t.rounds.append(Round(u, v, rec["prediction"], rec["truth"]))
        return t


def run_game(
    learner: Learner,
    adversary: Adversary,
    target: PresentedCopy | None = None,
    max_rounds: int | None = None,
) -> GameTranscript:
    """Play until the adversary stops or ``max_rounds`` new pairs were asked.

    With a fixed ``target`` the truth is its edge relation; an adaptive
    adversary without a target decides the truth itself.
    """
    if target is None and not adversary.adaptive:
        raise ValueError("a non-adaptive adversary needs a target")
    tr = GameTranscript(learner=learner.name)
    if target is not None:
        tr.target = {"base": target.base.to_dict(), "perm": target.perm.to_dict()}
    answered: dict[Pair, int] = {}
    while max_rounds is None or len(tr.rounds) < max_rounds:
        pair = adversary.propose(tr)
        if pair is None:
            break
        u, v = norm_pair(*pair)
        if (u, v) in answered:
            tr.repeats += 1
            continue
        pred = int(learner.predict(u, v))
        if target is not None:
            truth = int(target.edge(u, v))
        else:
            truth = int(adversary.decide((u, v), pred))
        learner.feedback(u, v, truth)
        answered[(u, v)] = truth
        tr.rounds.append(Round(u, v, pred, truth))
    return tr


# ---------------------------------------------------------------------------
# exact worst case over presentation orders
# ---------------------------------------------------------------------------


def worst_case_mistakes(
    learner: Learner,
    target: PresentedCopy,
    pairs: Sequence[Pair],
    budget: Budget | None = None,
) -> tuple[int, list[Pair]]:
    """Maximum mistakes over every order of ``pairs``, and an order prefix
    achieving it.

    Valid for learners whose state only changes on mistakes: dropping the
    correctly predicted rounds from any order leaves the mistake rounds
    unchanged, so it suffices to explore sequences of currently mispredicted
    pairs.  The learner's ``state_key`` must capture its state.
    """
    budget = _budget(budget)
    truth = {norm_pair(*p): int(target.edge(*p)) for p in pairs}
    memo: dict = {}

    def go(lrn: Learner, remaining: frozenset) -> tuple[int, tuple]:
        key = (lrn.state_key(), remaining)
        if key in memo:
            return memo[key]
        best: tuple[int, tuple] = (0, ())
        for p in sorted(remaining):
            budget.charge()
            if lrn.predict(*p) == truth[p]:
                continue
            nxt = lrn.clone()
            nxt.feedback(*p, truth[p])
            sub = go(nxt, remaining - {p})
            if sub[0] + 1 > best[0]:
                best = (sub[0] + 1, (p,) + sub[1])
        memo[key] = best
        return best

    n, seq = go(learner.clone(), frozenset(truth))
    return n, list(seq)


def fiso_targets(base: GraphSpec, k: int, W: int) -> list[PresentedCopy]:
    return [PresentedCopy(base, h) for h in enumerate_permutations(k, W)]


def sweep(
    make_learner: Callable[[], Learner],
    targets: Iterable[PresentedCopy],
    W: int,
    budget: Budget | None = None,
) -> dict:
    """Exact worst case of a mistake-driven learner over targets and all orders.

    Targets that label the window identically are played once.
    """
    pairs = window_pairs(W)
    worst, worst_target, worst_seq, n_targets, seen = -1, None, [], 0, set()
    for tgt in targets:
        n_targets += 1
        labels = tuple(int(tgt.edge(*p)) for p in pairs)
        if labels in seen:
            continue
        seen.add(labels)
        m, seq = worst_case_mistakes(make_learner(), tgt, pairs, budget)
        if m > worst:
            worst, worst_target, worst_seq = m, tgt, seq
    return {
        "targets": n_targets,
        "distinct_labelings": len(seen),
        "pairs": len(pairs),
        "max_mistakes": worst,
        "worst_target": None if worst_target is None else str(worst_target.perm),
        "worst_prefix": [list(p) for p in worst_seq],
    }


def at_worst_case(config: ATLearnerConfig, labels: Sequence[int], W: int,
                  budget: Budget | None = None) -> int:
    """:func:`worst_case_mistakes` specialised to :class:`ATLearner`.

    ``labels`` are the target's labels on ``window_pairs(W)``.  The state is
    the tuple of per-vertex error counts capped at ``m + 1`` (beyond that a
    vertex is flipped and the count is irrelevant); the unasked pairs are a
    bitmask.
    """
    budget = _budget(budget)
    pairs = window_pairs(W)
    cap = config.m + 1
    default = 1 if config.tail == "clique" else 0
    memo: dict = {}

    def go(counts: tuple, remaining: int) -> int:
        key = (counts, remaining)
        hit = memo.get(key)
        if hit is not None:
            return hit
        best = 0
        for i in iter_bits(remaining):
            budget.charge()
            u, v = pairs[i]
            pred = 1 - default if counts[u] >= cap or counts[v] >= cap else default
            if pred == labels[i]:
                continue
            c = list(counts)
            c[u] = min(c[u] + 1, cap)
            c[v] = min(c[v] + 1, cap)
            r = 1 + go(tuple(c), remaining & ~(1 << i))
            if r > best:
                best = r
        memo[key] = best
        return best

    return go((0,) * W, (1 << len(pairs)) - 1)


def at_sampled_orders(config: ATLearnerConfig, label_rows: np.ndarray, W: int,
                      n_orders: int, seed: int = 0) -> np.ndarray:
    """Mistakes of :class:`ATLearner` for every target row and ``n_orders``
    seeded random orders, simulated in parallel with numpy.

    Returns an array of shape ``(targets, n_orders)``.
    """
    pairs = np.array(window_pairs(W), dtype=np.int64)
    P = len(pairs)
    rng = np.random.default_rng(seed)
    orders = np.stack([rng.permutation(P) for _ in range(n_orders)])  # (O, P)
    T = len(label_rows)
    default = 1 if config.tail == "clique" else 0
    counts = np.zeros((T, n_orders, W), dtype=np.int64)
    mistakes = np.zeros((T, n_orders), dtype=np.int64)
    ti = np.arange(T)[:, None]
    oi = np.arange(n_orders)[None, :]
    for r in range(P):
        idx = orders[:, r]  # (O,)
        u = pairs[idx, 0][None, :]
        v = pairs[idx, 1][None, :]
        flipped = (counts[ti, oi, u] > config.m) | (counts[ti, oi, v] > config.m)
        pred = np.where(flipped, 1 - default, default)
        truth = label_rows[:, idx]
        wrong = pred != truth
        mistakes += wrong
        counts[ti, oi, u] += wrong
        counts[ti, oi, v] += wrong
    return mistakes


def transposition_targets(base: GraphSpec, W: int) -> list[PresentedCopy]:
    out = [PresentedCopy(base, FiniteSupportPermutation())]
    for a in range(W):
        for b in range(a + 1, W):
            out.append(PresentedCopy(base, FiniteSupportPermutation.transposition(a, b)))
    return out
