"""Stage-by-stage graph constructions driven by a binary prefix.

Three constructions read one bit per stage and grow a finite graph; the
rest of the naturals stay isolated.  Stage 0 does nothing and stage
``s+1`` reads ``p[s+1]``, so the first bit of a prefix is never used and a
prefix of length L runs stages 1..L-1.

* ``h``: bit 0 adds one isolated vertex; bit 1 adds, for every subset U of
  the current vertices, one fresh vertex adjacent to exactly U.
* ``f``: stage s+1 adds 2s and 2s+1.  Bit 0 marks both unused (they stay
  isolated forever); bit 1 adds every edge (2i, 2j+1) with i < j <= s whose
  endpoints are not unused.
* ``g``: bit 1 adds a clique on s fresh vertices (nothing at s = 0); bit 0
  adds one isolated vertex.

Fresh vertices are the least unused naturals in order of addition.  In an
h stage the subsets U are taken in increasing order of their characteristic
strings read with vertex 0 as the most significant digit.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .classes import BudgetExceeded
from .graph_oracle import ExplicitStaged, Pair, StageRecord

H_VERTEX_CAP = 2**16


def _check_prefix(prefix: str) -> str:
    if not isinstance(prefix, str) or set(prefix) - {"0", "1"}:
        raise ValueError(f"prefix must be a 0/1 string, got {prefix!r}")
    return prefix


@dataclass
class StagedGraph:
    construction: str
    prefix: tuple[str, ...]
    stages: list[StageRecord] = field(default_factory=list)
    n_vertices: int = 0
    edges: set[Pair] = field(default_factory=set)

    @property
    def unused(self) -> set[int]:
        return {x for st in self.stages for x in st.unused}

    def used_vertices(self) -> list[int]:
        bad = self.unused
        return [v for v in range(self.n_vertices) if v not in bad]

    def edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def isolated(self) -> list[int]:
        touched = {x for e in self.edges for x in e}
        return [v for v in range(self.n_vertices) if v not in touched]

    def to_spec(self) -> ExplicitStaged:
        return ExplicitStaged(self.construction, self.prefix, self.n_vertices, frozenset(self.edges),
                              tuple(self.stages))

    def _add(self, record: StageRecord) -> None:
        self.stages.append(record)
        self.n_vertices = max([self.n_vertices] + [v + 1 for v in record.vertices])
        self.edges.update(record.edges)


def reduction_h(prefix: str, cap: int = H_VERTEX_CAP) -> StagedGraph:
    """Bit 1 stages inject one-point extensions for every subset.

    Raises :class:`BudgetExceeded` rather than build more than ``cap``
    vertices.
    """
    _check_prefix(prefix)
    g = StagedGraph("h", (prefix,))
    for s in range(len(prefix) - 1):
        bit = int(prefix[s + 1])
        n = g.n_vertices
        if bit == 0:
            g._add(StageRecord(s + 1, (0,), (n,), (), note="isolated"))
            continue
        if n + 2**n > cap:
            raise BudgetExceeded(f"stage {s + 1} of h would exceed {cap} vertices")
        verts, edges = [], []
        for k in range(2**n):
            v = n + k
            verts.append(v)
            # characteristic string of U with vertex 0 most significant
            edges.extend((u, v) for u in range(n) if k >> (n - 1 - u) & 1)
        g._add(StageRecord(s + 1, (1,), tuple(verts), tuple(edges), note=f"{2**n} extensions"))
    return g


def reduction_f(prefix: str) -> StagedGraph:
    _check_prefix(prefix)
    g = StagedGraph("f", (prefix,))
    unused: set[int] = set()
    for s in range(len(prefix) - 1):
        bit = int(prefix[s + 1])
        a, b = 2 * s, 2 * s + 1
        if bit == 0:
            unused.update((a, b))
            g._add(StageRecord(s + 1, (0,), (a, b), (), unused=(a, b)))
            continue
        new = tuple(
            (2 * i, 2 * j + 1)
            for j in range(s + 1)
            for i in range(j)
            if 2 * i not in unused and 2 * j + 1 not in unused and (2 * i, 2 * j + 1) not in g.edges
        )
        g._add(StageRecord(s + 1, (1,), (a, b), tuple(sorted(new))))
    return g


def reduction_g(prefix: str) -> StagedGraph:
    _check_prefix(prefix)
    g = StagedGraph("g", (prefix,))
    for s in range(len(prefix) - 1):
        bit = int(prefix[s + 1])
        n = g.n_vertices
        if bit == 0:
            g._add(StageRecord(s + 1, (0,), (n,), (), note="isolated"))
            continue
        verts = tuple(range(n, n + s))
        edges = tuple((u, v) for i, u in enumerate(verts) for v in verts[i + 1:])
        g._add(StageRecord(s + 1, (1,), verts, edges, note=f"clique of size {s}"))
    return g


REDUCTIONS = {"h": reduction_h, "f": reduction_f, "g": reduction_g}


def _pad(p: str, q: str) -> tuple[str, str]:
    _check_prefix(p)
    _check_prefix(q)
    n = max(len(p), len(q))
    return p.ljust(n, "0"), q.ljust(n, "0")


def _combine(name: str, left: StagedGraph, right: StagedGraph, p: str, q: str) -> StagedGraph:
    """Disconnected union: left vertex v at 2v, right vertex v at 2v+1."""
    out = StagedGraph(name, (p, q))
    for a, b in zip(left.stages, right.stages):
        verts = tuple(sorted([2 * v for v in a.vertices] + [2 * v + 1 for v in b.vertices]))
        edges = tuple(sorted([(2 * u, 2 * v) for u, v in a.edges] + [(2 * u + 1, 2 * v + 1) for u, v in b.edges]))
        unused = tuple(sorted([2 * v for v in a.unused] + [2 * v + 1 for v in b.unused]))
        out._add(StageRecord(a.stage, a.bit + b.bit, verts, edges, unused, note="left even, right odd"))
    out.n_vertices = 2 * max(left.n_vertices, right.n_vertices)
    return out


def combined_fg(p: str, q: str) -> StagedGraph:
    p, q = _pad(p, q)
    return _combine("fg", reduction_f(p), reduction_g(q), p, q)


def combined_hf(p: str, q: str, cap: int = H_VERTEX_CAP) -> StagedGraph:
    p, q = _pad(p, q)
    return _combine("hf", reduction_h(p, cap), reduction_f(q), p, q)


def reduce_prefix(which: str, p: str, q: str | None = None) -> StagedGraph:
    if which in REDUCTIONS:
        if q is not None:
            raise ValueError(f"reduction {which} takes one prefix")
        return REDUCTIONS[which](p)
    if which in ("fg", "hf"):
        if q is None:
            raise ValueError(f"reduction {which} takes two prefixes")
        return combined_fg(p, q) if which == "fg" else combined_hf(p, q)
    raise ValueError(f"unknown reduction {which!r}")


def r_graph_embedding(L: int) -> dict[int, int]:
    """Map from f(1^L) onto the half graph on the window [1, 2L-1).

    f(1^L) has edges (2i, 2j+1) for i < j <= L-2; the half graph has them for
    i <= j.  Shifting the even side up by one turns the first relation into
    the second: 2i -> 2i+2, 2j+1 -> 2j+1.
    """
    if L < 1:
        raise ValueError("L must be >= 1")
    n = 2 * (L - 1)
    return {v: (v + 2 if v % 2 == 0 else v) for v in range(n)}
