"""Infinite graphs on the naturals as total edge oracles.

Every graph here has vertex set {0, 1, 2, ...}.  A :class:`GraphSpec` is an
immutable description that answers ``edge(u, v)`` for any pair of naturals.
Primitive families (clique, anticlique, Rado, the half graph, finite cores,
unions of cliques, automorphically trivial normal forms) combine through
:class:`Oplus`, :class:`Complement` and :class:`Permuted`.

Specs serialize to JSON documents with a ``"family"`` discriminator, see
:func:`spec_to_dict` / :func:`spec_from_dict`.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Mapping

Pair = tuple[int, int]


def norm_pair(u: int, v: int) -> Pair:
    return (u, v) if u <= v else (v, u)


def _check_vertex(v: int) -> None:
    if not isinstance(v, int) or v < 0:
        raise ValueError(f"vertex must be a natural number, got {v!r}")


# ---------------------------------------------------------------------------
# permutations with finite support
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiniteSupportPermutation:
    """A bijection of the naturals that moves only finitely many points.

    ``moves`` holds ``(x, h(x))`` for every moved ``x``, sorted by ``x``.
    """

    moves: tuple[Pair, ...] = ()
    _fwd: Mapping[int, int] = field(default=None, init=False, compare=False, hash=False, repr=False)
    _inv: Mapping[int, int] = field(default=None, init=False, compare=False, hash=False, repr=False)

    def __post_init__(self) -> None:
        fwd = {}
        for x, y in self.moves:
            _check_vertex(x)
            _check_vertex(y)
            if x == y:
                raise ValueError(f"fixed point {x} listed as a move")
            if x in fwd:
                raise ValueError(f"vertex {x} moved twice")
            fwd[x] = y
        if set(fwd) != set(fwd.values()):
            raise ValueError("moves must permute their own support")
        object.__setattr__(self, "moves", tuple(sorted(fwd.items())))
        object.__setattr__(self, "_fwd", fwd)
        object.__setattr__(self, "_inv", {y: x for x, y in fwd.items()})

    @classmethod
    def from_map(cls, mapping: Mapping[int, int]) -> "FiniteSupportPermutation":
        return cls(tuple((x, y) for x, y in mapping.items() if x != y))

    @classmethod
    def identity(cls) -> "FiniteSupportPermutation":
        return cls()

    @classmethod
    def transposition(cls, a: int, b: int) -> "FiniteSupportPermutation":
        if a == b:
            return cls()
        return cls(((a, b), (b, a)))

    @classmethod
    def from_cycles(cls, *cycles: Iterable[int]) -> "FiniteSupportPermutation":
        mapping: dict[int, int] = {}
        for cyc in cycles:
            cyc = list(cyc)
            for i, x in enumerate(cyc):
                if x in mapping:
                    raise ValueError("cycles must be disjoint")
                mapping[x] = cyc[(i + 1) % len(cyc)]
        return cls.from_map(mapping)

    def __call__(self, x: int) -> int:
        return self._fwd.get(x, x)

    def inv(self, x: int) -> int:
        return self._inv.get(x, x)

    def inverse(self) -> "FiniteSupportPermutation":
        return FiniteSupportPermutation(tuple(self._inv.items()))

    def compose(self, other: "FiniteSupportPermutation") -> "FiniteSupportPermutation":
        """``self ∘ other``: apply ``other`` first."""
        pts = set(self._fwd) | set(other._fwd)
        return FiniteSupportPermutation.from_map({x: self(other(x)) for x in pts})

    def support(self) -> frozenset[int]:
        return frozenset(self._fwd)

    def support_size(self) -> int:
        return len(self._fwd)

    def is_identity(self) -> bool:
        return not self.moves

    def to_dict(self) -> dict:
        return {"moves": [list(m) for m in self.moves]}

    @classmethod
    def from_dict(cls, d: Mapping) -> "FiniteSupportPermutation":
        return cls(tuple((int(x), int(y)) for x, y in d["moves"]))

    def __str__(self) -> str:
        if not self.moves:
            return "id"
        seen: set[int] = set()
        parts = []
        for x, _ in self.moves:
            if x in seen:
                continue
            cyc = [x]
            seen.add(x)
            y = self(x)
            while y != x:
                cyc.append(y)
                seen.add(y)
                y = self(y)
            parts.append("(" + " ".join(map(str, cyc)) + ")")
        return "".join(parts)


# ---------------------------------------------------------------------------
# graph specs
# ---------------------------------------------------------------------------


class GraphSpec:
    """Base class.  Subclasses implement ``_adj(u, v)`` for ``u < v``."""

    family: str = ""

    def edge(self, u: int, v: int) -> bool:
        if u == v:
            return False
        if u > v:
            u, v = v, u
        return self._adj(u, v)

    def _adj(self, u: int, v: int) -> bool:  # pragma: no cover - abstract
        raise NotImplementedError

    def to_dict(self) -> dict:  # pragma: no cover - abstract
        raise NotImplementedError

    def __str__(self) -> str:
        return describe(self)


@dataclass(frozen=True)
class Clique(GraphSpec):
    family = "clique"

    def _adj(self, u, v):
        return True

    def to_dict(self):
        return {"family": self.family}


@dataclass(frozen=True)
class Anticlique(GraphSpec):
    family = "anticlique"

    def _adj(self, u, v):
        return False

    def to_dict(self):
        return {"family": self.family}


@dataclass(frozen=True)
class Rado(GraphSpec):
    """The random graph: for ``u < v``, an edge iff bit ``u`` of ``v`` is 1.

    This presentation has the extension property at every level, so
    the classifier may treat it as almost random without a budget caveat.
    """

    family = "rado"
    extension_property_proven = True

    def _adj(self, u, v):
        return (v >> u) & 1 == 1

    def to_dict(self):
        return {"family": self.family}


@dataclass(frozen=True)
class RGraph(GraphSpec):
    """The half graph: edges ``(2i, 2j+1)`` with ``i <= j``."""

    family = "rgraph"

    def _adj(self, u, v):
        if (u ^ v) & 1 == 0:
            return False
        even, odd = (u, v) if u % 2 == 0 else (v, u)
        return even // 2 <= odd // 2

    def to_dict(self):
        return {"family": self.family}


def _edge_set(edges: Iterable[Iterable[int]]) -> frozenset[Pair]:
    out = set()
    for e in edges:
        u, v = (int(x) for x in e)
        _check_vertex(u)
        _check_vertex(v)
        if u == v:
            raise ValueError(f"self-loop ({u},{v}) not allowed")
        out.add(norm_pair(u, v))
    return frozenset(out)


def _sorted_edges(edges: Iterable[Pair]) -> list[list[int]]:
    return [list(e) for e in sorted(edges)]


@dataclass(frozen=True)
class FinitePlusIsolatedTail(GraphSpec):
    """A finite graph on ``0..n_named-1``; every other natural is isolated."""

    edges: frozenset[Pair]
    n_named: int
    family = "finite"

    def __post_init__(self):
        object.__setattr__(self, "edges", _edge_set(self.edges))
        if self.n_named < 0:
            raise ValueError("n_named must be >= 0")
        for u, v in self.edges:
            if v >= self.n_named:
                raise ValueError(f"edge ({u},{v}) outside the named vertices")

    def _adj(self, u, v):
        return (u, v) in self.edges

    def to_dict(self):
        return {"family": self.family, "n_named": self.n_named, "edges": _sorted_edges(self.edges)}


def m_core(d: int) -> FinitePlusIsolatedTail:
    """Standard M_d: a d-edge matching on 0..2d-1 plus 2d isolated named vertices."""
    return FinitePlusIsolatedTail(frozenset((2 * i, 2 * i + 1) for i in range(d)), 4 * d)


def n_core(d: int) -> FinitePlusIsolatedTail:
    """Standard N_d: center 0 joined to 1..d, non-adjacent to d+1..2d."""
    return FinitePlusIsolatedTail(frozenset((0, i) for i in range(1, d + 1)), 2 * d + 1)


@dataclass(frozen=True)
class SizeRule:
    """Clique sizes as a finitely described infinite sequence.

    kinds: ``constant`` (every clique has ``size``), ``arithmetic``
    (clique i has ``start + i*step``), ``periodic`` (``prefix`` then
    ``cycle`` repeated forever).
    """

    kind: str
    size: int = 0
    start: int = 0
    step: int = 0
    prefix: tuple[int, ...] = ()
    cycle: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(int(x) for x in self.prefix))
        object.__setattr__(self, "cycle", tuple(int(x) for x in self.cycle))
        if self.kind == "constant":
            if self.size < 1:
                raise ValueError("clique size must be >= 1")
        elif self.kind == "arithmetic":
            if self.start < 1 or self.step < 0:
                raise ValueError("arithmetic rule needs start >= 1, step >= 0")
        elif self.kind == "periodic":
            if not self.cycle or min(self.prefix + self.cycle) < 1:
                raise ValueError("periodic rule needs a nonempty cycle of sizes >= 1")
        else:
            raise ValueError(f"unknown size rule {self.kind!r}")

    def size_of(self, i: int) -> int:
        if self.kind == "constant":
            return self.size
        if self.kind == "arithmetic":
            return self.start + i * self.step
        if i < len(self.prefix):
            return self.prefix[i]
        return self.cycle[(i - len(self.prefix)) % len(self.cycle)]

    def offset(self, i: int) -> int:
        """Number of vertices in cliques ``0..i-1``."""
        if self.kind == "constant":
            return i * self.size
        if self.kind == "arithmetic":
            return i * self.start + self.step * i * (i - 1) // 2
        p = len(self.prefix)
        if i <= p:
            return sum(self.prefix[:i])
        q, r = divmod(i - p, len(self.cycle))
        return sum(self.prefix) + q * sum(self.cycle) + sum(self.cycle[:r])

    def clique_of(self, v: int) -> int:
        if self.kind == "constant":
            return v // self.size
        lo, hi = 0, v + 1  # offset(v+1) > v since sizes are >= 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.offset(mid) <= v:
                lo = mid
            else:
                hi = mid - 1
        return lo

    def finitely_many_nontrivial(self) -> bool:
        if self.kind == "constant":
            return self.size == 1
        if self.kind == "arithmetic":
            return self.start == 1 and self.step == 0
        return all(s == 1 for s in self.cycle)

    def to_dict(self) -> dict:
        if self.kind == "constant":
            return {"kind": "constant", "size": self.size}
        if self.kind == "arithmetic":
            return {"kind": "arithmetic", "start": self.start, "step": self.step}
        return {"kind": "periodic", "prefix": list(self.prefix), "cycle": list(self.cycle)}

    @classmethod
    def from_dict(cls, d: Mapping) -> "SizeRule":
        kind = d["kind"]
        if kind == "constant":
            return cls("constant", size=int(d["size"]))
        if kind == "arithmetic":
            return cls("arithmetic", start=int(d["start"]), step=int(d["step"]))
        return cls("periodic", prefix=tuple(d.get("prefix", ())), cycle=tuple(d["cycle"]))


@dataclass(frozen=True)
class CliqueUnion(GraphSpec):
    """Disjoint union of cliques laid out consecutively by ``sizes``."""

    sizes: SizeRule
    family = "clique_union"

    def _adj(self, u, v):
        return self.sizes.clique_of(u) == self.sizes.clique_of(v)

    def to_dict(self):
        return {"family": self.family, "sizes": self.sizes.to_dict()}


@dataclass(frozen=True)
class AutoTrivial(GraphSpec):
    """Normal form of an automorphically trivial graph.

    ``S0 = {0..m-1}`` carries ``s0_edges``; every tail vertex (``>= m``) is
    adjacent to exactly ``s0_prime`` inside S0; the tail is a clique or an
    anticlique.
    """

    m: int
    s0_edges: frozenset[Pair]
    s0_prime: frozenset[int]
    tail: str = "anticlique"
    family = "auto_trivial"

    def __post_init__(self):
        object.__setattr__(self, "s0_edges", _edge_set(self.s0_edges))
        object.__setattr__(self, "s0_prime", frozenset(int(x) for x in self.s0_prime))
        if self.tail not in ("clique", "anticlique"):
            raise ValueError("tail must be 'clique' or 'anticlique'")
        if self.m < 0:
            raise ValueError("m must be >= 0")
        if any(x < 0 or x >= self.m for x in self.s0_prime):
            raise ValueError("s0_prime must lie inside {0..m-1}")
        if any(v >= self.m for _, v in self.s0_edges):
            raise ValueError("s0_edges must lie inside {0..m-1}")

    def _adj(self, u, v):
        m = self.m
        if v < m:
            return (u, v) in self.s0_edges
        if u < m:
            return u in self.s0_prime
        return self.tail == "clique"

    def to_dict(self):
        return {
            "family": self.family,
            "m": self.m,
            "s0_edges": _sorted_edges(self.s0_edges),
            "s0_prime": sorted(self.s0_prime),
            "tail": self.tail,
        }


@dataclass(frozen=True)
class Oplus(GraphSpec):
    """Disconnected union: left vertex v sits at 2v, right vertex v at 2v+1."""

    left: GraphSpec
    right: GraphSpec
    family = "oplus"

    def _adj(self, u, v):
        if (u ^ v) & 1:
            return False
        side = self.right if u & 1 else self.left
        return side.edge(u >> 1, v >> 1)

    def to_dict(self):
        return {"family": self.family, "left": self.left.to_dict(), "right": self.right.to_dict()}


@dataclass(frozen=True)
class Complement(GraphSpec):
    inner: GraphSpec
    family = "complement"

    def _adj(self, u, v):
        return not self.inner.edge(u, v)

    def to_dict(self):
        return {"family": self.family, "inner": self.inner.to_dict()}


@dataclass(frozen=True)
class Permuted(GraphSpec):
    """The copy ``h(G)``: ``(h(u), h(v))`` is an edge iff ``(u, v)`` is in G."""

    inner: GraphSpec
    by: FiniteSupportPermutation
    family = "permuted"

    def _adj(self, u, v):
        return self.inner.edge(self.by.inv(u), self.by.inv(v))

    def to_dict(self):
        return {"family": self.family, "inner": self.inner.to_dict(), "perm": self.by.to_dict()}


@dataclass(frozen=True)
class StageRecord:
    """What one stage of a staged construction added."""

    stage: int
    bit: tuple[int, ...]
    vertices: tuple[int, ...] = ()
    edges: tuple[Pair, ...] = ()
    unused: tuple[int, ...] = ()
    note: str = ""

    def to_dict(self) -> dict:
        d = {
            "stage": self.stage,
            "bit": list(self.bit),
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges],
        }
        if self.unused:
            d["unused"] = list(self.unused)
        if self.note:
            d["note"] = self.note
        return d

    @classmethod
    def from_dict(cls, d: Mapping) -> "StageRecord":
        return cls(
            stage=int(d["stage"]),
            bit=tuple(int(b) for b in d["bit"]),
            vertices=tuple(int(x) for x in d["vertices"]),
            edges=tuple((int(u), int(v)) for u, v in d["edges"]),
            unused=tuple(int(x) for x in d.get("unused", ())),
            note=d.get("note", ""),
        )


@dataclass(frozen=True)
class ExplicitStaged(GraphSpec):
    """Finite output of a staged construction; vertices >= n_vertices are isolated."""

    construction: str
    prefix: tuple[str, ...]
    n_vertices: int
    edges: frozenset[Pair]
    stages: tuple[StageRecord, ...] = ()
    family = "staged"

    def __post_init__(self):
        object.__setattr__(self, "edges", _edge_set(self.edges))
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "stages", tuple(self.stages))
        if any(v >= self.n_vertices for _, v in self.edges):
            raise ValueError("edge endpoint beyond n_vertices")

    def _adj(self, u, v):
        return (u, v) in self.edges

    def to_dict(self):
        return {
            "family": self.family,
            "construction": self.construction,
            "prefix": list(self.prefix),
            "n_vertices": self.n_vertices,
            "edges": _sorted_edges(self.edges),
            "stages": [s.to_dict() for s in self.stages],
        }


@dataclass(frozen=True)
class PresentedCopy:
    base: GraphSpec
    perm: FiniteSupportPermutation

    def edge(self, u: int, v: int) -> bool:
        return presented_edge(self, u, v)

    def as_spec(self) -> Permuted:
        return Permuted(self.base, self.perm)


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def edge(g: GraphSpec, u: int, v: int) -> bool:
    return g.edge(u, v)


def presented_edge(c: PresentedCopy, u: int, v: int) -> bool:
    if u == v:
        return False
    return c.base.edge(c.perm.inv(u), c.perm.inv(v))


def oplus(a: GraphSpec, b: GraphSpec) -> Oplus:
    return Oplus(a, b)


def complement(g: GraphSpec) -> Complement:
    return Complement(g)


def permuted(g: GraphSpec, h: FiniteSupportPermutation) -> Permuted:
    return Permuted(g, h)


def window_pairs(W: int) -> list[Pair]:
    """All pairs ``u < v < W`` in lexicographic order."""
    return [(u, v) for u in range(W) for v in range(u + 1, W)]


@lru_cache(maxsize=256)
def adjacency_bits(g: GraphSpec, W: int) -> tuple[int, ...]:
    """Row ``u`` is an int whose bit ``v`` is set iff ``edge(u, v)``, for ``u, v < W``."""
    rows = [0] * W
    if isinstance(g, (FinitePlusIsolatedTail, ExplicitStaged)):
        for u, v in g.edges:
            if v < W:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
        return tuple(rows)
    for u in range(W):
        for v in range(u + 1, W):
            if g.edge(u, v):
                rows[u] |= 1 << v
                rows[v] |= 1 << u
    return tuple(rows)


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# ---------------------------------------------------------------------------
# structural facts used by the classifier
# ---------------------------------------------------------------------------


def at_bound(g: GraphSpec) -> int | None:
    """If ``g`` is automorphically trivial by construction, return ``m`` such
    that every vertex ``>= m`` lies in a homogeneous tail that is joined
    uniformly to ``0..m-1``.  ``None`` means no structural proof is known.
    """
    if isinstance(g, (Clique, Anticlique)):
        return 0
    if isinstance(g, AutoTrivial):
        return g.m
    if isinstance(g, FinitePlusIsolatedTail):
        return g.n_named
    if isinstance(g, ExplicitStaged):
        return g.n_vertices
    if isinstance(g, CliqueUnion):
        if not g.sizes.finitely_many_nontrivial():
            return None
        r = g.sizes
        if r.kind == "periodic":
            return sum(r.prefix)
        return 0
    if isinstance(g, Complement):
        return at_bound(g.inner)
    if isinstance(g, Permuted):
        b = at_bound(g.inner)
        if b is None:
            return None
        return max([b] + [x + 1 for x in g.by.support()])
    if isinstance(g, Oplus):
        bl, br = at_bound(g.left), at_bound(g.right)
        if bl is None or br is None:
            return None
        # only anticlique tails merge into a single homogeneous tail
        if _tail_is_clique(g.left, bl) or _tail_is_clique(g.right, br):
            return None
        if _tail_joined(g.left, bl) or _tail_joined(g.right, br):
            return None
        return 2 * max(bl, br)
    return None


def _tail_is_clique(g: GraphSpec, m: int) -> bool:
    return g.edge(m, m + 1)


def _tail_joined(g: GraphSpec, m: int) -> bool:
    return any(g.edge(v, m) for v in range(m))


def known_not_at(g: GraphSpec) -> bool:
    """True when the spec is provably not automorphically trivial."""
    if isinstance(g, (Rado, RGraph)):
        return True
    if isinstance(g, CliqueUnion):
        return not g.sizes.finitely_many_nontrivial()
    if isinstance(g, (Complement,)):
        return known_not_at(g.inner)
    if isinstance(g, Permuted):
        return known_not_at(g.inner)
    if isinstance(g, Oplus):
        if known_not_at(g.left) or known_not_at(g.right):
            return True
        bl, br = at_bound(g.left), at_bound(g.right)
        if bl is not None and br is not None:
            # K ⊕ anything infinite has an infinite clique next to infinitely
            # many vertices outside it; a joined tail likewise splits
            return at_bound(g) is None
    return False


def at_normal_form(g: GraphSpec) -> AutoTrivial | None:
    """Read off the normal form from the oracle when :func:`at_bound` applies."""
    m = at_bound(g)
    if m is None:
        return None
    edges = frozenset((u, v) for u in range(m) for v in range(u + 1, m) if g.edge(u, v))
    prime = frozenset(v for v in range(m) if g.edge(v, m))
    tail = "clique" if g.edge(m, m + 1) else "anticlique"
    return AutoTrivial(m, edges, prime, tail)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def spec_to_dict(g: GraphSpec) -> dict:
    return g.to_dict()


def spec_from_dict(d: Mapping) -> GraphSpec:
    try:
        fam = d["family"]
    except (KeyError, TypeError):
        raise ValueError("graph spec needs a 'family' field") from None
    if fam == "clique":
        return Clique()
    if fam == "anticlique":
        return Anticlique()
    if fam == "rado":
        return Rado()
    if fam == "rgraph":
        return RGraph()
    if fam == "finite":
        return FinitePlusIsolatedTail(_edge_set(d["edges"]), int(d["n_named"]))
    if fam == "clique_union":
        return CliqueUnion(SizeRule.from_dict(d["sizes"]))
    if fam == "auto_trivial":
        return AutoTrivial(int(d["m"]), _edge_set(d["s0_edges"]), frozenset(d["s0_prime"]), d["tail"])
    if fam == "oplus":
        return Oplus(spec_from_dict(d["left"]), spec_from_dict(d["right"]))
    if fam == "complement":
        return Complement(spec_from_dict(d["inner"]))
    if fam == "permuted":
        return Permuted(spec_from_dict(d["inner"]), FiniteSupportPermutation.from_dict(d["perm"]))
    if fam == "staged":
        return ExplicitStaged(
            construction=d["construction"],
            prefix=tuple(d["prefix"]),
            n_vertices=int(d["n_vertices"]),
            edges=_edge_set(d["edges"]),
            stages=tuple(StageRecord.from_dict(s) for s in d["stages"]),
        )
    raise ValueError(f"unknown graph family {fam!r}")


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def spec_to_json(g: GraphSpec, indent: int | None = 2) -> str:
    return json.dumps(g.to_dict(), sort_keys=True, indent=indent)


def spec_from_json(text: str) -> GraphSpec:
    return spec_from_dict(json.loads(text))


def spec_hash(g: GraphSpec) -> str:
    return hashlib.sha256(canonical_json(g.to_dict()).encode()).hexdigest()


def describe(g: GraphSpec) -> str:
    if isinstance(g, (Clique, Anticlique, Rado, RGraph)):
        return g.family
    if isinstance(g, FinitePlusIsolatedTail):
        return f"finite(n={g.n_named}, |E|={len(g.edges)})"
    if isinstance(g, CliqueUnion):
        return f"clique_union({g.sizes.to_dict()})"
    if isinstance(g, AutoTrivial):
        return f"auto_trivial(m={g.m}, E={sorted(g.s0_edges)}, S0'={sorted(g.s0_prime)}, tail={g.tail})"
    if isinstance(g, Oplus):
        return f"({describe(g.left)} ⊕ {describe(g.right)})"
    if isinstance(g, Complement):
        return f"co-{describe(g.inner)}"
    if isinstance(g, Permuted):
        return f"{g.by}[{describe(g.inner)}]"
    if isinstance(g, ExplicitStaged):
        return f"staged-{g.construction}({''.join(g.prefix) if len(g.prefix) == 1 else '|'.join(g.prefix)})"
    return type(g).__name__
