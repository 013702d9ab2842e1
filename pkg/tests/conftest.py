import itertools

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

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
    Rado,
    RGraph,
    SizeRule,
)

settings.register_profile(
    "repro",
    derandomize=True,
    deadline=None,
    max_examples=200,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("repro")

# filled by tests/test_acceptance.py, printed at the end of the run
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])


# ---------------------------------------------------------------------------
# strategies
# ---------------------------------------------------------------------------


@st.composite
def permutations(draw, max_vertex=12, max_support=4):
    size = draw(st.integers(0, max_support))
    if size == 1:
        size = 0
    pts = draw(st.lists(st.integers(0, max_vertex - 1), min_size=size, max_size=size, unique=True))
    images = draw(st.permutations(pts))
    return FiniteSupportPermutation.from_map(dict(zip(pts, images)))


@st.composite
def finite_graphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return FinitePlusIsolatedTail(frozenset(p for p, b in zip(pairs, mask) if b), n)


@st.composite
def auto_trivial(draw, max_m=3):
    m = draw(st.integers(0, max_m))
    pairs = list(itertools.combinations(range(m), 2))
    edges = frozenset(p for p in pairs if draw(st.booleans()))
    prime = frozenset(v for v in range(m) if draw(st.booleans()))
    tail = draw(st.sampled_from(["clique", "anticlique"]))
    return AutoTrivial(m, edges, prime, tail)


size_rules = st.one_of(
    st.builds(lambda s: SizeRule("constant", size=s), st.integers(1, 4)),
    st.builds(lambda a, b: SizeRule("arithmetic", start=a, step=b), st.integers(1, 3), st.integers(0, 2)),
    st.builds(
        lambda p, c: SizeRule("periodic", prefix=tuple(p), cycle=tuple(c)),
        st.lists(st.integers(1, 4), max_size=3),
        st.lists(st.integers(1, 4), min_size=1, max_size=3),
    ),
)

primitive_specs = st.one_of(
    st.just(Clique()),
    st.just(Anticlique()),
    st.just(Rado()),
    st.just(RGraph()),
    finite_graphs(),
    auto_trivial(),
    st.builds(CliqueUnion, size_rules),
)


def _extend(children):
    return st.one_of(
        st.builds(Oplus, children, children),
        st.builds(Complement, children),
        st.builds(Permuted, children, permutations()),
    )


specs = st.recursive(primitive_specs, _extend, max_leaves=3)


@pytest.fixture
def m2():
    from graphlearn.graph_oracle import m_core

    return m_core(2)
