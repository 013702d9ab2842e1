"""Witness searches for shattering, thresholds and the staircase pattern.

All searches run over a window ``[0, W)`` and return the first witness in a
fixed order, or ``None``.  ``None`` only means "no witness within the
window"; it says nothing about the infinite class.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .classes import (
    Budget,
    _budget,
    _check_kw,
    class_size,
    induced_labels,
    is_realizable,
    realize_configuration,
)
from .graph_oracle import (
    FiniteSupportPermutation,
    GraphSpec,
    Pair,
    adjacency_bits,
    iter_bits,
    window_pairs,
)


def _bits(tau: Sequence[int]) -> str:
    return "".join(str(int(t)) for t in tau)


@dataclass(frozen=True)
class ShatterWitness:
    pairs: tuple[Pair, ...]
    realizers: dict[str, FiniteSupportPermutation] = field(hash=False)

    def validate(self, base: GraphSpec) -> bool:
        d = len(self.pairs)
        if len(self.realizers) != 2**d:
            return False
        for tau in itertools.product((0, 1), repeat=d):
            h = self.realizers.get(_bits(tau))
            if h is None or induced_labels(base, h, self.pairs) != tau:
                return False
        return True

    def to_dict(self) -> dict:
        return {
            "pairs": [list(p) for p in self.pairs],
            "realizers": {t: h.to_dict() for t, h in sorted(self.realizers.items())},
        }

    @classmethod
    def from_dict(cls, d) -> "ShatterWitness":
        return cls(
            tuple((int(u), int(v)) for u, v in d["pairs"]),
            {t: FiniteSupportPermutation.from_dict(h) for t, h in d["realizers"].items()},
        )


@dataclass(frozen=True)
class ThresholdWitness:
    """Pairs ``p_1..p_{t-1}`` and hypotheses ``H_1..H_t`` with
    ``p_j`` an edge of ``H_i`` iff ``i <= j``."""

    pairs: tuple[Pair, ...]
    hypotheses: tuple[FiniteSupportPermutation, ...]

    @property
    def t(self) -> int:
        return len(self.hypotheses)

    def validate(self, base: GraphSpec) -> bool:
        t = len(self.hypotheses)
        if t < 1 or len(self.pairs) != t - 1:
            return False
        for i, h in enumerate(self.hypotheses, start=1):
            want = tuple(int(i <= j) for j in range(1, t))
            if induced_labels(base, h, self.pairs) != want:
                return False
        return True

    def to_dict(self) -> dict:
        return {
            "pairs": [list(p) for p in self.pairs],
            "hypotheses": [h.to_dict() for h in self.hypotheses],
        }

    @classmethod
    def from_dict(cls, d) -> "ThresholdWitness":
        return cls(
            tuple((int(u), int(v)) for u, v in d["pairs"]),
            tuple(FiniteSupportPermutation.from_dict(h) for h in d["hypotheses"]),
        )


@dataclass(frozen=True)
class Lemma56Witness:
    """Vertices ``u_0..u_n`` and ``v_1..v_n`` with ``v_j ~ u_i`` iff ``j <= i``."""

    u: tuple[int, ...]
    v: tuple[int, ...]

    def validate(self, base: GraphSpec) -> bool:
        n = len(self.v)
        if len(self.u) != n + 1 or len(set(self.u + self.v)) != 2 * n + 1:
            return False
        return all(
            base.edge(self.u[i], self.v[j - 1]) == (j <= i)
            for i in range(n + 1)
            for j in range(1, n + 1)
        )

    def to_dict(self) -> dict:
        return {"u": list(self.u), "v": list(self.v)}

    @classmethod
    def from_dict(cls, d) -> "Lemma56Witness":
        return cls(tuple(int(x) for x in d["u"]), tuple(int(x) for x in d["v"]))


# ---------------------------------------------------------------------------
# shattering
# ---------------------------------------------------------------------------


def shatters(
    base: GraphSpec,
    k: int,
    pairs: Sequence[Pair],
    W: int,
    budget: Budget | None = None,
) -> ShatterWitness | None:
    pairs = tuple(tuple(p) for p in pairs)
    if len(set(pairs)) != len(pairs):
        raise ValueError("pairs must be distinct")
    budget = _budget(budget)
    configs = list(itertools.product((0, 1), repeat=len(pairs)))
    for tau in configs:
        if not is_realizable(base, pairs, tau, k, W, budget):
            return None
    realizers = {_bits(tau): realize_configuration(base, pairs, tau, k, W, budget) for tau in configs}
    return ShatterWitness(pairs, realizers)


def vc_lower_bound(
    base: GraphSpec,
    k: int,
    d: int,
    W: int,
    budget: Budget | None = None,
) -> ShatterWitness | None:
    """First shattered d-tuple of window pairs (lexicographic), or None."""
    if d < 1:
        raise ValueError("d must be >= 1")
    _check_kw(k, W)
    budget = _budget(budget)
    pairs = window_pairs(W)
    # the class restricted to the window has at most class_size labelings
    if d > len(pairs) or 2**d > class_size(k, W):
        return None

    bad_small: dict[tuple, bool] = {}

    def shatterable(sub: tuple) -> bool:
        if sub not in bad_small:
            bad_small[sub] = all(
                is_realizable(base, sub, tau, k, W, budget)
                for tau in itertools.product((0, 1), repeat=len(sub))
            )
        return bad_small[sub]

    for tup in itertools.combinations(pairs, d):
        # shattering is hereditary: prune on single pairs and 2-subsets
        if not all(shatterable((p,)) for p in tup):
            continue
        if d > 2 and not all(shatterable(s) for s in itertools.combinations(tup, 2)):
            continue
        w = shatters(base, k, tup, W, budget)
        if w is not None:
            return w
    return None


# ---------------------------------------------------------------------------
# thresholds
# ---------------------------------------------------------------------------


def _staircase(r: int) -> list[tuple[int, ...]]:
    """Restrictions of the t staircase labelings to the first r pairs."""
    return [tuple([0] * a + [1] * (r - a)) for a in range(r + 1)]


def contains_thresholds(
    base: GraphSpec,
    k: int,
    t: int,
    W: int,
    budget: Budget | None = None,
) -> ThresholdWitness | None:
    """First ordered tuple of t-1 window pairs carrying t thresholds."""
    if t < 1:
        raise ValueError("t must be >= 1")
    _check_kw(k, W)
    if t == 1:
        return ThresholdWitness((), (FiniteSupportPermutation(),))
    budget = _budget(budget)
    pairs = window_pairs(W)
    if t - 1 > len(pairs) or t > class_size(k, W):
        return None

    chosen: list[Pair] = []

    def extend() -> bool:
        r = len(chosen)
        if r == t - 1:
            return True
        for p in pairs:
            if p in chosen:
                continue
            chosen.append(p)
            if all(is_realizable(base, chosen, tau, k, W, budget) for tau in _staircase(r + 1)):
                if extend():
                    return True
            chosen.pop()
        return False

    if not extend():
        return None
    pt = tuple(chosen)
    hyps = tuple(
        realize_configuration(base, pt, tuple(int(i <= j) for j in range(1, t)), k, W, budget)
        for i in range(1, t + 1)
    )
    return ThresholdWitness(pt, hyps)


# ---------------------------------------------------------------------------
# staircase of neighbourhoods
# ---------------------------------------------------------------------------


def lemma56_witness(
    base: GraphSpec,
    n: int,
    W: int,
    budget: Budget | None = None,
) -> Lemma56Witness | None:
    """Distinct ``u_0..u_n, v_1..v_n < W`` with ``v_j ~ u_i`` iff ``j <= i``.

    Vertices are chosen in the order ``u_n, v_n, u_{n-1}, v_{n-1}, ..., v_1,
    u_0`` and the first tuple in lexicographic order of that sequence wins.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    budget = _budget(budget)
    adj = adjacency_bits(base, W)
    full = (1 << W) - 1
    u = [0] * (n + 1)
    v = [0] * (n + 1)  # v[0] unused

    def pick_u(i: int, used: int) -> bool:
        # u_i must miss v_j for j > i
        mask = full & ~used
        for j in range(i + 1, n + 1):
            mask &= ~adj[v[j]]
        # u_i must hit v_j for j <= i; those are not chosen yet except none
        for c in iter_bits(mask):
            budget.charge()
            u[i] = c
            if i == 0:
                return True
            if pick_v(i, used | (1 << c)):
                return True
        return False

    def pick_v(j: int, used: int) -> bool:
        # v_j must hit u_i for i >= j and miss u_i for i < j (checked later)
        mask = full & ~used
        for i in range(j, n + 1):
            mask &= adj[u[i]]
        for c in iter_bits(mask):
            budget.charge()
            v[j] = c
            if pick_u(j - 1, used | (1 << c)):
                return True
        return False

    if pick_u(n, 0):
        return Lemma56Witness(tuple(u), tuple(v[1:]))
    return None


# ---------------------------------------------------------------------------
# collapse lemmas as instance checks
# ---------------------------------------------------------------------------


@dataclass
class CollapseReport:
    kind: str
    premise_size: int
    conclusion_size: int
    premise: bool | None
    conclusion: bool | None
    status: str
    premise_witness: object = None
    conclusion_witness: object = None

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "premise_size": self.premise_size,
            "conclusion_size": self.conclusion_size,
            "premise": self.premise,
            "conclusion": self.conclusion,
            "status": self.status,
        }


def check_collapse_implication(
    base: GraphSpec,
    j: int,
    k: int,
    W_small: int,
    W_large: int,
    kind: str = "vc",
    budget: Budget | None = None,
) -> CollapseReport:
    """Test one instance of the Fiso_k -> Fiso_2 collapse statements.

    ``kind="vc"``: VC(Fiso_k) >= 2(k+1)kj  implies  VC(Fiso_2) >= j.
    ``kind="thresholds"``: 2k(j+1)^(k+1)+1 thresholds in Fiso_k imply
    j+1 thresholds in Fiso_2.  A missing conclusion witness is inconclusive,
    never a refutation.
    """
    if j < 1 or k < 2:
        raise ValueError("need j >= 1 and k >= 2")
    from .classes import BudgetExceeded

    budget = _budget(budget)
    if kind == "vc":
        big, small = 2 * (k + 1) * k * j, j
        search = vc_lower_bound
    elif kind == "thresholds":
        big, small = 2 * k * (j + 1) ** (k + 1) + 1, j + 1
        search = contains_thresholds
    else:
        raise ValueError(f"unknown kind {kind!r}")

    try:
        prem = search(base, k, big, W_small, budget)
    except BudgetExceeded:
        return CollapseReport(kind, big, small, None, None, "inconclusive (budget exceeded on premise)")
    if prem is None:
        return CollapseReport(kind, big, small, False, None, "premise unmet, implication vacuous")
    try:
        concl = search(base, 2, small, W_large, budget)
    except BudgetExceeded:
        return CollapseReport(kind, big, small, True, None, "inconclusive (budget exceeded on conclusion)", prem)
    if concl is None:
        return CollapseReport(kind, big, small, True, False, "inconclusive (window too small)", prem)
    return CollapseReport(kind, big, small, True, True, "premise and conclusion witnessed", prem, concl)
