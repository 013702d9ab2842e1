import json

import pytest
from hypothesis import given

from conftest import permutations, size_rules, specs
from graphlearn.graph_oracle import (
    Anticlique,
    AutoTrivial,
    Clique,
    CliqueUnion,
    Complement,
    FinitePlusIsolatedTail,
    FiniteSupportPermutation,
    Oplus,
    Permuted,
    PresentedCopy,
    Rado,
    RGraph,
    SizeRule,
    adjacency_bits,
    at_bound,
    at_normal_form,
    complement,
    edge,
    known_not_at,
    m_core,
    n_core,
    oplus,
    presented_edge,
    spec_from_json,
    spec_hash,
    spec_to_json,
    window_pairs,
)


# edge oracle examples


def test_rgraph_examples():
    assert edge(RGraph(), 0, 1)
    assert not edge(RGraph(), 2, 1)


def test_rgraph_rule_by_hand():
    for i in range(6):
        for j in range(6):
            assert RGraph().edge(2 * i, 2 * j + 1) == (i <= j)
    assert not RGraph().edge(0, 2)
    assert not RGraph().edge(1, 3)


def test_no_loops():
    assert not edge(Clique(), 5, 5)
    assert not edge(Rado(), 3, 3)


def test_rado_bit_rule():
    assert edge(Rado(), 1, 3)
    assert not edge(Rado(), 2, 3)
    assert edge(Rado(), 3, 1)
    assert edge(Rado(), 0, 5) and not edge(Rado(), 1, 5)


def test_rado_extension_property_small():
    # every split of every 3-set of [0,8) is cut out by some vertex below 2^8
    W = 8
    for a in range(W):
        for b in range(a + 1, W):
            for c in range(b + 1, W):
                A = (a, b, c)
                seen = set()
                for z in range(256):
                    if z in A:
                        continue
                    seen.add(tuple(Rado().edge(z, x) for x in A))
                assert len(seen) == 8


def test_presented_edge_examples(m2):
    ident = PresentedCopy(m2, FiniteSupportPermutation())
    assert presented_edge(ident, 0, 1)
    swap = PresentedCopy(m2, FiniteSupportPermutation.transposition(0, 4))
    assert presented_edge(swap, 4, 1)
    assert not presented_edge(swap, 0, 1)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_nd_swap_examples(d):
    base = n_core(d)
    for n in range(1, d + 1):
        h = FiniteSupportPermutation.transposition(n, n + d)
        assert presented_edge(PresentedCopy(base, h), 0, n + d)
        assert not presented_edge(PresentedCopy(base, h), 0, n)


def test_oplus_and_complement_examples():
    g = oplus(Clique(), Anticlique())
    assert edge(g, 0, 2)
    assert not edge(g, 1, 3)
    assert not edge(g, 0, 1)
    assert edge(complement(Anticlique()), 3, 7)
    cc = complement(complement(RGraph()))
    assert all(cc.edge(u, v) == RGraph().edge(u, v) for u in range(32) for v in range(32))


def test_m_and_n_cores():
    m = m_core(3)
    assert m.n_named == 12
    assert sorted(m.edges) == [(0, 1), (2, 3), (4, 5)]
    n = n_core(3)
    assert n.n_named == 7
    assert sorted(n.edges) == [(0, 1), (0, 2), (0, 3)]


# size rules and clique unions


def test_size_rules():
    r = SizeRule("arithmetic", start=1, step=1)
    assert [r.size_of(i) for i in range(4)] == [1, 2, 3, 4]
    assert [r.clique_of(v) for v in range(10)] == [0, 1, 1, 2, 2, 2, 3, 3, 3, 3]
    p = SizeRule("periodic", prefix=(1,), cycle=(2, 3))
    assert [p.clique_of(v) for v in range(9)] == [0, 1, 1, 2, 2, 2, 3, 3, 4]
    assert not p.finitely_many_nontrivial()
    assert SizeRule("periodic", prefix=(3,), cycle=(1,)).finitely_many_nontrivial()


@given(size_rules)
def test_clique_of_matches_prefix_sums(rule):
    bounds, total = [], 0
    for i in range(40):
        total += rule.size_of(i)
        bounds.append(total)
    for v in range(bounds[-1]):
        expected = next(i for i, b in enumerate(bounds) if v < b)
        assert rule.clique_of(v) == expected


def test_bad_specs_rejected():
    with pytest.raises(ValueError):
        AutoTrivial(2, {(0, 2)}, set(), "clique")
    with pytest.raises(ValueError):
        AutoTrivial(2, set(), {3}, "clique")
    with pytest.raises(ValueError):
        FinitePlusIsolatedTail({(1, 1)}, 3)
    with pytest.raises(ValueError):
        SizeRule("constant", size=0)
    with pytest.raises(ValueError):
        FiniteSupportPermutation(((0, 1),))
    with pytest.raises(ValueError):
        FiniteSupportPermutation(((0, 0),))


# permutations


def test_permutation_basics():
    h = FiniteSupportPermutation.from_cycles([0, 3, 5])
    assert h(0) == 3 and h(3) == 5 and h(5) == 0 and h(7) == 7
    assert h.inv(3) == 0
    assert h.support() == {0, 3, 5}
    assert str(h) == "(0 3 5)"
    assert h.compose(h.inverse()).is_identity()
    assert FiniteSupportPermutation.from_dict(h.to_dict()) == h


@given(permutations(), permutations())
def test_compose_applies_right_first(a, b):
    c = a.compose(b)
    for x in range(14):
        assert c(x) == a(b(x))
        assert c.inv(c(x)) == x


# invariants over random specs


@given(specs)
def test_symmetric_and_irreflexive(g):
    for u in range(12):
        assert not g.edge(u, u)
        for v in range(u + 1, 12):
            assert g.edge(u, v) == g.edge(v, u)


@given(specs, permutations())
def test_presentation_coherence(g, h):
    p = Permuted(g, h)
    for u in range(10):
        for v in range(10):
            assert p.edge(h(u), h(v)) == g.edge(u, v)


@given(specs, specs)
def test_oplus_isolation(a, b):
    g = Oplus(a, b)
    for x in range(0, 16, 2):
        for y in range(1, 16, 2):
            assert not g.edge(x, y)


@given(specs)
def test_json_round_trip(g):
    text = spec_to_json(g)
    back = spec_from_json(text)
    assert spec_to_json(back) == text
    assert spec_hash(back) == spec_hash(g)
    assert all(back.edge(u, v) == g.edge(u, v) for u in range(10) for v in range(10))


@given(specs)
def test_adjacency_bits_match_oracle(g):
    rows = adjacency_bits(g, 10)
    for u, v in window_pairs(10):
        assert bool(rows[u] >> v & 1) == g.edge(u, v)


def test_spec_json_is_tagged():
    d = json.loads(spec_to_json(Oplus(Rado(), Complement(RGraph()))))
    assert d["family"] == "oplus"
    assert d["right"] == {"family": "complement", "inner": {"family": "rgraph"}}
    with pytest.raises(ValueError):
        spec_from_json('{"family": "nope"}')


# automorphic triviality


def test_auto_trivial_normal_form_by_window():
    g = AutoTrivial(3, {(0, 1)}, {0, 2}, "clique")
    for t in range(3, 20):
        assert [g.edge(t, s) for s in range(3)] == [True, False, True]
        for t2 in range(t + 1, 20):
            assert g.edge(t, t2)


@given(specs)
def test_at_bound_gives_homogeneous_tail(g):
    m = at_bound(g)
    if m is None:
        return
    W = m + 8
    tail = range(m, W)
    ref = g.edge(m, m + 1)
    for t in tail:
        assert [g.edge(t, s) for s in range(m)] == [g.edge(m, s) for s in range(m)]
        for t2 in tail:
            if t2 > t:
                assert g.edge(t, t2) == ref
    nf = at_normal_form(g)
    assert all(nf.edge(u, v) == g.edge(u, v) for u in range(W) for v in range(W))


def test_known_not_at():
    assert known_not_at(Rado()) and known_not_at(RGraph())
    assert known_not_at(CliqueUnion(SizeRule("constant", size=2)))
    assert not known_not_at(CliqueUnion(SizeRule("constant", size=1)))
    assert known_not_at(Oplus(Clique(), Anticlique()))
    assert at_bound(Oplus(Anticlique(), Anticlique())) == 0
    assert not known_not_at(Clique())
