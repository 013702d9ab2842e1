"""Place a graph in the four-class learnability landscape.

The verdicts are online learnable, weakly online but not online, weakly PAC
but not weakly online, and absolutely non-learnable.  A verdict comes either
from the shape of the spec ("structural") or from witness searches inside a
finite window ("evidence").  The report keeps the two apart, and every
embedded witness can be re-checked from the report alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .classes import Budget, _budget
from .dimensions import Lemma56Witness, lemma56_witness
from .graph_oracle import (
    CliqueUnion,
    GraphSpec,
    RGraph,
    adjacency_bits,
    at_bound,
    at_normal_form,
    iter_bits,
    known_not_at,
    m_core,
    n_core,
    spec_from_dict,
    spec_hash,
)

ONLINE = "OnlineLearnable"
WEAKLY_ONLINE = "WeaklyOnlineNotOnline"
WEAKLY_PAC = "WeaklyPACNotWeaklyOnline"
ABSOLUTELY_NON = "AbsolutelyNonLearnable"
INCONCLUSIVE = "Inconclusive"
VERDICTS = (ONLINE, WEAKLY_ONLINE, WEAKLY_PAC, ABSOLUTELY_NON, INCONCLUSIVE)

PATTERN_KINDS = ("Md", "Nd", "CoMd")


# ---------------------------------------------------------------------------
# induced patterns
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Pattern:
    """One of the finite graphs M_d, N_d or the complement of M_d."""

    kind: str
    d: int

    def __post_init__(self):
        if self.kind not in PATTERN_KINDS:
            raise ValueError(f"unknown pattern {self.kind!r}")
        if self.d < 1:
            raise ValueError("pattern size d must be >= 1")

    @property
    def n_vertices(self) -> int:
        return 2 * self.d + 1 if self.kind == "Nd" else 4 * self.d

    def edge(self, i: int, j: int) -> bool:
        if i == j:
            return False
        if self.kind == "Nd":
            return n_core(self.d).edge(i, j)
        e = m_core(self.d).edge(i, j)
        return not e if self.kind == "CoMd" else e

    def order_links(self) -> tuple[int | None, ...]:
        """``links[i] = j`` means f(i) > f(j) may be assumed.

        Swapping interchangeable pattern vertices (the two ends of a matching
        edge, whole matching edges, isolated vertices, the neighbours or the
        non-neighbours of a centre) maps embeddings to embeddings, and the
        lexicographically first embedding is sorted within each such block.
        """
        d = self.d
        links: list[int | None] = [None] * self.n_vertices
        if self.kind == "Nd":
            for k in list(range(2, d + 1)) + list(range(d + 2, 2 * d + 1)):
                links[k] = k - 1
            return tuple(links)
        for i in range(d):
            links[2 * i + 1] = 2 * i
            if i:
                links[2 * i] = 2 * i - 2
        for k in range(2 * d + 1, 4 * d):
            links[k] = k - 1
        return tuple(links)

    def __str__(self) -> str:
        return f"{self.kind}({self.d})"


@dataclass(frozen=True)
class InducedWitness:
    pattern: Pattern
    embedding: tuple[int, ...]

    def validate(self, base: GraphSpec) -> bool:
        n = self.pattern.n_vertices
        f = self.embedding
        if len(f) != n or len(set(f)) != n or min(f) < 0:
            return False
        return all(
            base.edge(f[i], f[j]) == self.pattern.edge(i, j)
            for i in range(n)
            for j in range(i + 1, n)
        )

    def to_dict(self) -> dict:
        return {"pattern": self.pattern.kind, "d": self.pattern.d, "embedding": list(self.embedding)}

    @classmethod
    def from_dict(cls, d: Mapping) -> "InducedWitness":
        return cls(Pattern(d["pattern"], int(d["d"])), tuple(int(x) for x in d["embedding"]))


def find_induced(base: GraphSpec, pattern: Pattern, W: int, budget: Budget | None = None) -> InducedWitness | None:
    """First induced copy of ``pattern`` inside ``[0, W)``.

    Pattern vertex i goes to f(i); the first map in lexicographic order of
    ``(f(0), f(1), ...)`` wins.  The search only visits maps sorted within
    the pattern's interchangeable blocks, which never skips the first map.
    """
    budget = _budget(budget)
    n = pattern.n_vertices
    if n > W:
        return None
    adj = adjacency_bits(base, W)
    full = (1 << W) - 1
    want = [[pattern.edge(i, j) for j in range(n)] for i in range(n)]
    links = pattern.order_links()
    f = [0] * n

    def place(i: int, used: int) -> bool:
        if i == n:
            return True
        mask = full & ~used
        for j in range(i):
            row = adj[f[j]]
            mask &= row if want[i][j] else ~row
        if links[i] is not None:
            mask &= ~((2 << f[links[i]]) - 1)
        for c in iter_bits(mask):
            budget.charge()
            f[i] = c
            if place(i + 1, used | (1 << c)):
                return True
        return False

    if place(0, 0):
        return InducedWitness(pattern, tuple(f))
    return None


# ---------------------------------------------------------------------------
# almost randomness
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AlmostRandomWitness:
    """A set A and, for every X ⊆ A, a vertex z outside A adjacent to
    exactly X within A.  ``realizers[mask]`` serves the X whose members are
    ``A[i]`` for the set bits i of ``mask``."""

    A: tuple[int, ...]
    realizers: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.A)

    def validate(self, base: GraphSpec) -> bool:
        A = self.A
        if len(set(A)) != len(A) or len(self.realizers) != 2 ** len(A):
            return False
        for mask, z in enumerate(self.realizers):
            if z in A or z < 0:
                return False
            if any(base.edge(z, a) != bool(mask >> i & 1) for i, a in enumerate(A)):
                return False
        return True

    def realizer_of(self, X) -> int:
        X = set(X)
        return self.realizers[sum(1 << i for i, a in enumerate(self.A) if a in X)]

    def to_dict(self) -> dict:
        return {
            "A": list(self.A),
            "realizers": [
                {"X": [a for i, a in enumerate(self.A) if mask >> i & 1], "z": z}
                for mask, z in enumerate(self.realizers)
            ],
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "AlmostRandomWitness":
        A = tuple(int(x) for x in d["A"])
        pos = {a: i for i, a in enumerate(A)}
        zs = [None] * (2 ** len(A))
        for r in d["realizers"]:
            mask = sum(1 << pos[int(x)] for x in r["X"])
            zs[mask] = int(r["z"])
        if any(z is None for z in zs):
            raise ValueError("almost-random witness is missing a subset")
        return cls(A, tuple(zs))


def almost_random_witness(
    base: GraphSpec,
    n: int,
    W: int,
    budget: Budget | None = None,
) -> AlmostRandomWitness | None:
    """First n-set A ⊆ [0, W) (lexicographic) all of whose subsets are cut
    out by some z ∈ [0, W) \\ A; each realizer is the least such z.

    The property passes to subsets, so partial sets are pruned as soon as
    one of their patterns has no realizer outside them.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    budget = _budget(budget)
    if n == 0:
        return AlmostRandomWitness((), (0,))
    if W < n:
        return None
    adj = adjacency_bits(base, W)
    A: list[int] = []

    def patterns(members: list[int]) -> dict[int, int]:
        inside = sum(1 << a for a in members)
        first: dict[int, int] = {}
        for z in range(W):
            if inside >> z & 1:
                continue
            budget.charge()
            row = adj[z]
            mask = sum(1 << i for i, a in enumerate(members) if row >> a & 1)
            first.setdefault(mask, z)
        return first

    def extend(start: int) -> AlmostRandomWitness | None:
        for a in range(start, W):
            A.append(a)
            pats = patterns(A)
            if len(pats) == 2 ** len(A):
                if len(A) == n:
                    return AlmostRandomWitness(tuple(A), tuple(pats[m] for m in range(2**n)))
                found = extend(a + 1)
                if found is not None:
                    return found
            A.pop()
        return None

    return extend(0)


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Budgets:
    d_max: int = 3
    n_max: int = 3
    window: int = 64
    ceiling: int | None = None

    def __post_init__(self):
        if self.d_max < 1 or self.n_max < 1 or self.window < 1:
            raise ValueError("budgets must be positive")

    def to_dict(self) -> dict:
        return {"d_max": self.d_max, "n_max": self.n_max, "window": self.window, "ceiling": self.ceiling}


@dataclass
class ClassificationReport:
    spec: GraphSpec
    budgets: Budgets
    at_structure: dict
    not_at: dict
    induced: dict[str, dict[int, InducedWitness | None]]
    almost_random: dict[int, AlmostRandomWitness | None]
    lemma56: dict[int, Lemma56Witness | None]
    verdict: str
    basis: str
    reasons: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        def opt(w):
            return {"found": False, "within": self.budgets.window} if w is None else {"found": True, **w.to_dict()}

        return {
            "kind": "report",
            "spec": self.spec.to_dict(),
            "spec_hash": spec_hash(self.spec),
            "budgets": self.budgets.to_dict(),
            "at_structure": self.at_structure,
            "not_at": self.not_at,
            "induced": {
                kind: {str(d): opt(w) for d, w in table.items()} for kind, table in self.induced.items()
            },
            "almost_random": {str(n): opt(w) for n, w in self.almost_random.items()},
            "lemma56": {str(n): opt(w) for n, w in self.lemma56.items()},
            "verdict": self.verdict,
            "basis": self.basis,
            "reasons": list(self.reasons),
        }


def _levels(search, top: int) -> dict:
    """Run ``search(level)`` for 1..top, stopping after the first miss (all
    three witness kinds pass to smaller levels, so later levels miss too)."""
    out = {}
    for lvl in range(1, top + 1):
        w = search(lvl)
        out[lvl] = w
        if w is None:
            break
    return out


def classify(spec: GraphSpec, budgets: Budgets = Budgets()) -> ClassificationReport:
    """Decision procedure over the four classes.

    1. automorphically trivial by construction -> online learnable;
    2. almost random at every level up to ``n_max`` -> absolutely
       non-learnable;
    3. staircase missing at some level, graph not automorphically trivial
       -> weakly online but not online;
    4. staircase at every level, almost randomness missing at some level
       -> weakly PAC but not weakly online;
    5. otherwise inconclusive.

    :class:`~graphlearn.classes.BudgetExceeded` propagates.
    """
    budget = Budget(budgets.ceiling)
    W = budgets.window
    reasons: list[str] = []

    induced = {
        kind: {d: find_induced(spec, Pattern(kind, d), W, budget) for d in range(1, budgets.d_max + 1)}
        for kind in PATTERN_KINDS
    }
    ar = _levels(lambda n: almost_random_witness(spec, n, W, budget), budgets.n_max)
    l56 = _levels(lambda n: lemma56_witness(spec, n, W, budget), budgets.n_max)

    m = at_bound(spec)
    if m is not None:
        nf = at_normal_form(spec)
        at_structure = {"status": "given", "basis": "structural", "m": m, "normal_form": nf.to_dict()}
    else:
        at_structure = {"status": "not_given"}

    patterns_every_d = all(
        any(induced[kind][d] is not None for kind in PATTERN_KINDS) for d in range(1, budgets.d_max + 1)
    )
    if known_not_at(spec):
        not_at = {"status": "established", "basis": "structural"}
    elif m is None and patterns_every_d:
        not_at = {"status": "established", "basis": "evidence",
                  "detail": f"an M_d, N_d or co-M_d pattern for every d <= {budgets.d_max}"}
    else:
        not_at = {"status": "unknown"}

    ar_all = all(w is not None for w in ar.values()) and len(ar) == budgets.n_max
    l56_all = all(w is not None for w in l56.values()) and len(l56) == budgets.n_max

    if m is not None:
        verdict, basis = ONLINE, "structural"
        reasons.append(f"automorphically trivial with |S0| = {m}")
    elif ar_all:
        verdict = ABSOLUTELY_NON
        basis = "structural" if getattr(spec, "extension_property_proven", False) else "evidence"
        reasons.append(f"almost random at every n <= {budgets.n_max} within W = {W}")
    elif not l56_all and not_at["status"] == "established":
        verdict = WEAKLY_ONLINE
        basis = "structural" if isinstance(spec, CliqueUnion) else "evidence"
        miss = max(l56)
        reasons.append(f"no staircase of height {miss} within W = {W}; not automorphically trivial ({not_at['basis']})")
    elif l56_all and not ar_all:
        verdict = WEAKLY_PAC
        basis = "structural" if isinstance(spec, RGraph) else "evidence"
        miss = max(ar)
        reasons.append(
            f"staircases up to n = {budgets.n_max} found; no almost-random set of size {miss} within W = {W}"
        )
    else:
        verdict, basis = INCONCLUSIVE, "budget"
        reasons.append("no decision step applied within the budgets")

    return ClassificationReport(spec, budgets, at_structure, not_at, induced, ar, l56, verdict, basis, reasons)


def verify_report(doc: Mapping) -> list[str]:
    """Re-check every certificate in a serialized report; returns problems."""
    problems: list[str] = []
    try:
        spec = spec_from_dict(doc["spec"])
    except (KeyError, ValueError, TypeError) as e:
        return [f"bad spec: {e}"]
    if doc.get("spec_hash") != spec_hash(spec):
        problems.append("spec hash mismatch")
    if doc.get("verdict") not in VERDICTS:
        problems.append(f"unknown verdict {doc.get('verdict')!r}")

    def check(label: str, entry: Mapping, parse, expect_level: int, size) -> None:
        if not entry.get("found"):
            return
        try:
            w = parse(entry)
        except (KeyError, ValueError, TypeError) as e:
            problems.append(f"{label}: unreadable witness ({e})")
            return
        if size(w) != expect_level:
            problems.append(f"{label}: witness has the wrong size")
        elif not w.validate(spec):
            problems.append(f"{label}: witness does not validate")

    for kind, table in doc.get("induced", {}).items():
        for d, entry in table.items():
            if entry.get("found") and (entry.get("pattern") != kind):
                problems.append(f"induced {kind}({d}): pattern mismatch")
                continue
            check(f"induced {kind}({d})", entry, InducedWitness.from_dict, int(d), lambda w: w.pattern.d)
    for n, entry in doc.get("almost_random", {}).items():
        check(f"almost_random({n})", entry, AlmostRandomWitness.from_dict, int(n), lambda w: w.n)
    for n, entry in doc.get("lemma56", {}).items():
        check(f"lemma56({n})", entry, Lemma56Witness.from_dict, int(n), lambda w: len(w.v))

    at = doc.get("at_structure", {})
    if at.get("status") == "given" and at_bound(spec) is None:
        problems.append("report claims automorphic triviality the spec does not carry")
    return problems


__all__ = [
    "ABSOLUTELY_NON",
    "INCONCLUSIVE",
    "ONLINE",
    "WEAKLY_ONLINE",
    "WEAKLY_PAC",
    "AlmostRandomWitness",
    "Budgets",
    "ClassificationReport",
    "InducedWitness",
    "Pattern",
    "almost_random_witness",
    "classify",
    "find_induced",
    "verify_report",
]
