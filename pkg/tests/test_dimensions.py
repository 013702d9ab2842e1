import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import finite_graphs
from graphlearn.classes import Budget, BudgetExceeded, induced_labels
from graphlearn.dimensions import (
    Lemma56Witness,
    ShatterWitness,
    ThresholdWitness,
    check_collapse_implication,
    contains_thresholds,
    lemma56_witness,
    shatters,
    vc_lower_bound,
)
from graphlearn.graph_oracle import (
    Anticlique,
    Clique,
    CliqueUnion,
    Complement,
    FiniteSupportPermutation,
    Rado,
    RGraph,
    SizeRule,
    m_core,
    n_core,
    window_pairs,
)


def all_cu(size):
    return CliqueUnion(SizeRule("constant", size=size))


# shattering


def test_shatters_examples(m2):
    w = shatters(m2, 8, [(0, 1), (2, 3)], 8)
    assert w is not None and w.validate(m2)
    assert len(w.realizers) == 4
    empty = shatters(m2, 8, [], 8)
    assert empty is not None and list(empty.realizers) == [""]
    assert shatters(Anticlique(), 2, [(0, 1)], 8) is None


def test_shatters_rejects_repeated_pairs(m2):
    with pytest.raises(ValueError):
        shatters(m2, 4, [(0, 1), (0, 1)], 8)


def test_vc_examples():
    w = vc_lower_bound(n_core(3), 6, 3, 7)
    assert w.pairs == ((0, 1), (0, 2), (0, 3))
    assert w.validate(n_core(3))
    assert vc_lower_bound(Clique(), 2, 1, 8) is None
    r = vc_lower_bound(Rado(), 2, 3, 32)
    assert r is not None and r.validate(Rado())


@pytest.mark.parametrize("d", [1, 2, 3])
def test_lemma_shattering_patterns(d):
    wm = vc_lower_bound(m_core(d), 4 * d, d, 4 * d)
    assert wm.pairs == tuple((2 * i, 2 * i + 1) for i in range(d))
    wn = vc_lower_bound(n_core(d), 2 * d, d, 2 * d + 1)
    assert wn.pairs == tuple((0, i) for i in range(1, d + 1))
    co = Complement(m_core(d))
    wc = vc_lower_bound(co, 4 * d, d, 4 * d)
    assert wc.validate(co)


def test_swap_realizers_for_m_core():
    # h_tau swaps the pair of every unwanted edge with a pair of isolated vertices
    d = 3
    base = m_core(d)
    pairs = [(2 * i, 2 * i + 1) for i in range(d)]
    for tau in itertools.product((0, 1), repeat=d):
        cycles = [[2 * n, 2 * (n + d)] for n in range(d) if not tau[n]]
        cycles += [[2 * n + 1, 2 * (n + d) + 1] for n in range(d) if not tau[n]]
        h = FiniteSupportPermutation.from_cycles(*cycles)
        assert h.support_size() <= 4 * d
        assert induced_labels(base, h, pairs) == tau


def test_shatter_witness_round_trip(m2):
    w = shatters(m2, 8, [(0, 1), (2, 3)], 8)
    back = ShatterWitness.from_dict(w.to_dict())
    assert back.pairs == w.pairs and back.realizers == w.realizers
    bad = dict(w.realizers)
    bad["00"] = FiniteSupportPermutation()
    assert not ShatterWitness(w.pairs, bad).validate(m2)


def test_pigeonhole_cut():
    # Fiso_2 on a 4-window has 7 members, fewer than 2^3
    assert vc_lower_bound(Rado(), 2, 3, 4) is None


# thresholds


def test_threshold_examples():
    w1 = contains_thresholds(Rado(), 2, 1, 8)
    assert w1.pairs == () and w1.hypotheses == (FiniteSupportPermutation(),)
    assert contains_thresholds(Anticlique(), 2, 2, 8) is None
    w = contains_thresholds(RGraph(), 2, 3, 12)
    assert w is not None and w.validate(RGraph()) and w.t == 3


def test_threshold_round_trip():
    w = contains_thresholds(RGraph(), 2, 3, 12)
    back = ThresholdWitness.from_dict(w.to_dict())
    assert back == w
    flipped = ThresholdWitness(w.pairs, tuple(reversed(w.hypotheses)))
    assert not flipped.validate(RGraph())


@settings(max_examples=60)
@given(finite_graphs(max_n=5), st.integers(1, 3))
def test_vc_implies_thresholds(base, d):
    W, k = 5, 3
    if vc_lower_bound(base, k, d, W) is not None:
        t = contains_thresholds(base, k, d + 1, W)
        assert t is not None and t.validate(base)


# staircase


def test_lemma56_examples():
    w = lemma56_witness(RGraph(), 2, 8)
    assert (w.u, w.v) == ((4, 2, 0), (3, 1))
    for a, b, e in [(0, 1, True), (0, 3, True), (2, 3, True), (2, 1, False), (4, 3, False), (4, 1, False)]:
        assert RGraph().edge(a, b) == e
    assert lemma56_witness(Anticlique(), 1, 16) is None
    assert lemma56_witness(all_cu(2), 2, 16) is None


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_lemma56_rgraph_levels(n):
    w = lemma56_witness(RGraph(), n, 2 * n + 4)
    assert w is not None and w.validate(RGraph())


def test_lemma56_validate_rejects_repeats():
    assert not Lemma56Witness((0, 0), (1,)).validate(RGraph())
    assert Lemma56Witness((2, 0), (1,)).validate(RGraph())


@settings(max_examples=80)
@given(finite_graphs(max_n=7), st.integers(1, 3))
def test_lemma56_matches_brute_force(base, n):
    W = 7
    got = lemma56_witness(base, n, W)
    found = None
    for verts in itertools.permutations(range(W), 2 * n + 1):
        # order: u_n, v_n, u_{n-1}, ..., v_1, u_0
        u = [None] * (n + 1)
        v = [None] * (n + 1)
        for idx, x in enumerate(verts):
            level = n - idx // 2
            if idx % 2 == 0:
                u[level] = x
            else:
                v[level] = x
        cand = Lemma56Witness(tuple(u), tuple(v[1:]))
        if cand.validate(base):
            found = cand
            break
    assert got == found


# collapse statements


def test_collapse_reports():
    r = check_collapse_implication(Clique(), 1, 3, 24, 24)
    assert r.status == "premise unmet, implication vacuous"
    r = check_collapse_implication(all_cu(3), 2, 3, 24, 24)
    assert r.premise is False
    # a premise of 24 shattered pairs needs 2^24 copies; the 24-window holds 4325
    r = check_collapse_implication(Rado(), 1, 3, 24, 24)
    assert r.status == "premise unmet, implication vacuous"
    r = check_collapse_implication(Clique(), 1, 2, 24, 24, kind="thresholds")
    assert r.premise is False
    # 33 thresholds over a 24-window is a large search; a small budget reports it
    r = check_collapse_implication(Rado(), 1, 2, 24, 24, kind="thresholds", budget=Budget(10_000))
    assert r.premise is None and r.status.startswith("inconclusive")
    with pytest.raises(ValueError):
        check_collapse_implication(Rado(), 0, 3, 8, 8)


def test_witness_monotone_in_k_and_window():
    w = vc_lower_bound(m_core(2), 8, 2, 8)
    assert shatters(m_core(2), 8, w.pairs, 10) is not None
    for h in w.realizers.values():
        assert h.support_size() <= 8 and max(h.support(), default=0) < 8


def test_budget_guard():
    with pytest.raises(BudgetExceeded):
        vc_lower_bound(Rado(), 2, 3, 32, Budget(50))


def test_window_pairs_order():
    assert window_pairs(3) == [(0, 1), (0, 2), (1, 2)]
