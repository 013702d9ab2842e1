import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from graphlearn.classes import BudgetExceeded
from graphlearn.classifier import Pattern, almost_random_witness, find_induced
from graphlearn.dimensions import lemma56_witness
from graphlearn.graph_oracle import RGraph, spec_from_json, spec_to_json
from graphlearn.reductions import (
    combined_fg,
    combined_hf,
    r_graph_embedding,
    reduce_prefix,
    reduction_f,
    reduction_g,
    reduction_h,
)

bits = st.text(alphabet="01", max_size=9)


def is_prefix_extension(small, big):
    """``big`` keeps every stage of ``small`` and adds no edge among its vertices."""
    if big.stages[: len(small.stages)] != small.stages:
        return False
    verts = {v for st in small.stages for v in st.vertices}
    inner = {e for e in big.edges if e[0] in verts and e[1] in verts}
    return inner == small.edges and big.n_vertices >= small.n_vertices


# traces


def test_h_examples():
    assert reduction_h("").n_vertices == 0
    assert reduction_h("00").n_vertices == 1
    g = reduction_h("01")
    assert g.n_vertices == 1 and g.edges == set()
    assert reduction_h("000000").isolated() == [0, 1, 2, 3, 4]


def test_h_extension_stage():
    g = reduction_h("0011")
    # stage 2 over {0}: U = {} then {0}; stage 3 over {0,1,2}: 8 subsets
    assert g.n_vertices == 3 + 8
    assert g.edges >= {(0, 2)}
    rows = []
    for v in range(3, 11):
        rows.append(tuple(int(g.edge(u, v)) for u in range(3)))
    assert rows == list(itertools.product((0, 1), repeat=3))


def test_h_cap():
    # vertex counts after each 1-stage: 1, 3, 11, 2059, then 2059 + 2^2059
    assert reduction_h("01111").n_vertices == 2059
    with pytest.raises(BudgetExceeded):
        reduction_h("011111")
    with pytest.raises(BudgetExceeded):
        reduction_h("0111", cap=5)


def test_f_examples():
    z = reduction_f("0000")
    assert z.edges == set() and z.unused == set(range(6))
    g = reduction_f("011")
    assert g.used_vertices() == [0, 1, 2, 3]
    assert g.edges == {(0, 3)}
    assert reduction_f("0101").edges == {(0, 5)}


def test_f_all_ones_is_the_half_graph():
    for L in range(1, 10):
        g = reduction_f("1" * L)
        phi = r_graph_embedding(L)
        assert sorted(phi.values()) == list(range(1, 2 * L - 1))
        for u in range(g.n_vertices):
            for v in range(u + 1, g.n_vertices):
                assert g.edge(u, v) == RGraph().edge(phi[u], phi[v])
    g8 = reduction_f("1" * 8)
    assert g8.n_vertices == 14 and len(g8.edges) == 21
    assert g8.isolated() == [1, 12]


def test_g_examples():
    g = reduction_g("0000")
    assert g.n_vertices == 3 and g.edges == set()
    g = reduction_g("0011")
    assert g.n_vertices == 4 and g.edges == {(2, 3)}
    assert g.isolated() == [0, 1]
    # stage 1 with bit 1 adds the empty clique
    assert reduction_g("01").n_vertices == 0


def test_g_cliques_grow_with_ones():
    sizes = []
    for L in range(2, 40):
        g = reduction_g("1" * L)
        sizes.append(max((len(st.vertices) for st in g.stages), default=0))
    assert sizes == sorted(sizes) and sizes[-1] == 37


def test_combined():
    g = combined_fg("0" * 8, "0" * 8)
    assert g.edges == set()
    g = combined_fg("0" * 8, "1" * 8)
    assert g.n_vertices == 42
    assert all(u % 2 == 1 and v % 2 == 1 for u, v in g.edges)
    h = combined_hf("0" * 6, "1" * 6)
    assert h.n_vertices == 20
    assert all(u % 2 == 1 for u, _ in h.edges)
    # padding to equal length
    assert combined_fg("1", "111").prefix == ("100", "111")


def test_combined_keeps_sides_apart():
    g = combined_hf("0111", "0111")
    left, right = reduction_h("0111"), reduction_f("0111")
    assert {(u // 2, v // 2) for u, v in g.edges if u % 2 == 0} == left.edges
    assert {(u // 2, v // 2) for u, v in g.edges if u % 2 == 1} == right.edges


def test_reduce_prefix_dispatch():
    assert reduce_prefix("g", "0011").edges == {(2, 3)}
    assert reduce_prefix("fg", "01", "01").construction == "fg"
    with pytest.raises(ValueError):
        reduce_prefix("fg", "01")
    with pytest.raises(ValueError):
        reduce_prefix("f", "01", "01")
    with pytest.raises(ValueError):
        reduce_prefix("x", "01")
    with pytest.raises(ValueError):
        reduction_f("012")


# monotonicity and determinism


@pytest.mark.parametrize("which", ["h", "f", "g"])
def test_prefix_monotone_small(which):
    for L in range(0, 7):
        for p in itertools.product("01", repeat=L):
            p = "".join(p)
            try:
                small = reduce_prefix(which, p)
            except BudgetExceeded:
                continue
            for b in "01":
                try:
                    big = reduce_prefix(which, p + b)
                except BudgetExceeded:
                    continue
                assert is_prefix_extension(small, big), (which, p, b)


@given(bits, bits)
def test_combined_monotone(p, q):
    n = max(len(p), len(q))
    small = combined_fg(p, q)
    big = combined_fg(p.ljust(n, "0") + "1", q.ljust(n, "0") + "1")
    assert is_prefix_extension(small, big)


@given(st.sampled_from(["f", "g"]), bits)
def test_deterministic_json(which, p):
    a = spec_to_json(reduce_prefix(which, p).to_spec())
    b = spec_to_json(reduce_prefix(which, p).to_spec())
    assert a == b
    back = spec_from_json(a)
    g = reduce_prefix(which, p)
    W = g.n_vertices + 2
    assert all(back.edge(u, v) == g.edge(u, v) for u in range(W) for v in range(W) if u != v)


# classification behaviour at desk scale


def test_h_sparse_prefix_has_bounded_patterns():
    g = reduction_h("0110" + "0" * 20).to_spec()
    W = 40
    assert find_induced(g, Pattern("Md", 1), W) is not None
    assert find_induced(g, Pattern("Md", 2), W) is None
    assert almost_random_witness(g, 2, W) is None


@pytest.mark.parametrize("prefix", ["011100", "010101", "011010", "0111000"])
def test_h_dense_prefix_is_almost_random_at_2(prefix):
    g = reduction_h(prefix).to_spec()
    W = reduction_h(prefix).n_vertices
    w = almost_random_witness(g, 2, W)
    assert w is not None and w.validate(g)


def test_f_staircase_level_tracks_ones():
    for L in range(3, 9):
        g = reduction_f("1" * L)
        spec, W = g.to_spec(), g.n_vertices
        level = max(n for n in range(0, L) if n == 0 or lemma56_witness(spec, n, W) is not None)
        assert level == L - 2
        frozen = reduction_f("1" * L + "0" * 4)
        assert lemma56_witness(frozen.to_spec(), L - 1, frozen.n_vertices) is None
