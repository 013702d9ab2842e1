"""Windowed hypothesis classes Fiso_k(G).

A windowed class is every copy ``h(G)`` where ``h`` moves at most ``k``
points, all inside ``[0, W)``.  Permutations are enumerated in shortlex
order: by support size, then by the sorted support tuple, then by the word
``(h(x) for x in sorted support)``.  The identity comes first.

:func:`realize_configuration` does not walk that enumeration.  It searches
the preimages ``h^-1(p)`` of the vertices ``p`` that occur in the query
pairs.  Any such partial map ``s`` extends to a permutation whose support is
exactly ``moved(s) = {p : s(p) != p} ∪ {s(p) : s(p) != p}``, and every
realizer's support contains ``moved`` of its restriction.  So the minimum
support, the first support set and the first word can all be read off the
partial maps.  The result is the first realizer in enumeration order;
``tests/test_classes.py`` checks this against the brute-force walk.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from math import comb
from typing import Iterator, Sequence

from .graph_oracle import (
    FiniteSupportPermutation,
    GraphSpec,
    Pair,
    adjacency_bits,
    iter_bits,
)

DEFAULT_CEILING = 10**9


class BudgetExceeded(RuntimeError):
    """A search hit its ceiling of elementary checks."""


class Budget:
    """Counts elementary checks across one or more searches.

    The default ceiling is ``10**9``, or ``GRAPHLEARN_BUDGET`` when set.
    """

    def __init__(self, ceiling: int | None = None):
        if ceiling is None:
            ceiling = int(os.environ.get("GRAPHLEARN_BUDGET", DEFAULT_CEILING))
        if ceiling <= 0:
            raise ValueError("budget ceiling must be positive")
        self.ceiling = ceiling
        self.used = 0

    def charge(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.ceiling:
            raise BudgetExceeded(f"search exceeded {self.ceiling} elementary checks")


def _budget(b: Budget | None) -> Budget:
    return b if b is not None else Budget()


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


def derangement_count(n: int) -> int:
    d0, d1 = 1, 0
    if n == 0:
        return 1
    for i in range(2, n + 1):
        d0, d1 = d1, (i - 1) * (d0 + d1)
    return d1


def class_size(k: int, W: int) -> int:
    """Number of permutations with support inside [0, W) of size <= k."""
    return sum(comb(W, j) * derangement_count(j) for j in range(min(k, W) + 1))


def _check_kw(k: int, W: int) -> None:
    if k < 0 or W < 0:
        raise ValueError("k and W must be non-negative")
    if k > W:
        raise ValueError(f"support bound k={k} exceeds window W={W}")


def enumerate_permutations(k: int, W: int) -> Iterator[FiniteSupportPermutation]:
    _check_kw(k, W)
    yield FiniteSupportPermutation()
    for size in range(2, k + 1):
        for support in itertools.combinations(range(W), size):
            for word in itertools.permutations(support):
                if any(x == y for x, y in zip(support, word)):
                    continue
                yield FiniteSupportPermutation(tuple(zip(support, word)))


def order_key(h: FiniteSupportPermutation) -> tuple:
    """Sort key reproducing :func:`enumerate_permutations` order."""
    sup = tuple(x for x, _ in h.moves)
    return (len(sup), sup, tuple(y for _, y in h.moves))


@dataclass(frozen=True)
class WindowedClass:
    base: GraphSpec
    k: int
    window: int

    def __post_init__(self):
        _check_kw(self.k, self.window)

    def permutations(self) -> Iterator[FiniteSupportPermutation]:
        return enumerate_permutations(self.k, self.window)

    def size(self) -> int:
        return class_size(self.k, self.window)


# ---------------------------------------------------------------------------
# configuration search
# ---------------------------------------------------------------------------


def _check_pairs(pairs: Sequence[Pair], tau: Sequence[int], W: int) -> None:
    if len(pairs) != len(tau):
        raise ValueError("configuration length differs from number of pairs")
    for u, v in pairs:
        if u == v:
            raise ValueError(f"pair ({u},{v}) is a loop")
        if not (0 <= u < W and 0 <= v < W):
            raise ValueError(f"pair ({u},{v}) outside window [0,{W})")


class _Search:
    """Backtracking over preimage maps for one configuration."""

    def __init__(self, adj: Sequence[int], pairs, tau, k: int, W: int, budget: Budget):
        self.adj = adj
        self.k = k
        self.full = (1 << W) - 1
        self.budget = budget
        verts = sorted({x for p in pairs for x in p})
        cons: dict[int, list[tuple[int, int]]] = {v: [] for v in verts}
        for (u, v), t in zip(pairs, tau):
            cons[u].append((v, int(t)))
            cons[v].append((u, int(t)))
        # most constrained first, ties by vertex
        self.order = sorted(verts, key=lambda x: (-len(cons[x]), x))
        pos = {v: i for i, v in enumerate(self.order)}
        self.back = [[(pos[q], t) for q, t in cons[v] if pos[q] < pos[v]] for v in self.order]
        self.assign = [0] * len(self.order)

    def _candidates(self, i: int, used: int) -> int:
        mask = self.full & ~used
        adj = self.adj
        for j, t in self.back[i]:
            row = adj[self.assign[j]]
            mask &= row if t else ~row
        return mask

    def exists(self) -> bool:
        return self._exists(0, 0, 0)

    def _exists(self, i: int, used: int, moved: int) -> bool:
        if i == len(self.order):
            return True
        p = self.order[i]
        for c in iter_bits(self._candidates(i, used)):
            self.budget.charge()
            m = moved if c == p else moved | (1 << p) | (1 << c)
            if m.bit_count() > self.k:
                continue
            self.assign[i] = c
            if self._exists(i + 1, used | (1 << c), m):
                return True
        return False

    def best(self) -> FiniteSupportPermutation | None:
        self.best_key = None
        self.best_perm = None
        self._best(0, 0, 0)
        return self.best_perm

    def _best(self, i: int, used: int, moved: int) -> None:
        if i == len(self.order):
            self._leaf(moved)
            return
        p = self.order[i]
        for c in iter_bits(self._candidates(i, used)):
            self.budget.charge()
            m = moved if c == p else moved | (1 << p) | (1 << c)
            size = m.bit_count()
            if size > self.k:
                continue
            if self.best_key is not None and size > self.best_key[0]:
                continue
            self.assign[i] = c
            self._best(i + 1, used | (1 << c), m)

    def _leaf(self, moved: int) -> None:
        support = tuple(iter_bits(moved))
        h: dict[int, int] = {}
        for p, c in zip(self.order, self.assign):
            if c != p:
                h[c] = p  # assign holds h^-1(p)
        free_dom = [x for x in support if x not in h]
        images = set(h.values())
        free_img = [x for x in support if x not in images]
        h.update(zip(free_dom, free_img))
        key = (len(support), support, tuple(h[x] for x in support))
        if self.best_key is None or key < self.best_key:
            self.best_key = key
            self.best_perm = FiniteSupportPermutation(tuple(sorted(h.items())))


def realize_configuration(
    base: GraphSpec,
    pairs: Sequence[Pair],
    tau: Sequence[int] | str,
    k: int,
    W: int,
    budget: Budget | None = None,
) -> FiniteSupportPermutation | None:
    """First permutation of the windowed class whose copy induces ``tau`` on ``pairs``."""
    _check_kw(k, W)
    tau = _as_bits(tau)
    _check_pairs(pairs, tau, W)
    s = _Search(adjacency_bits(base, W), pairs, tau, k, W, _budget(budget))
    return s.best()


def is_realizable(
    base: GraphSpec,
    pairs: Sequence[Pair],
    tau: Sequence[int] | str,
    k: int,
    W: int,
    budget: Budget | None = None,
) -> bool:
    _check_kw(k, W)
    tau = _as_bits(tau)
    _check_pairs(pairs, tau, W)
    return _Search(adjacency_bits(base, W), pairs, tau, k, W, _budget(budget)).exists()


def _as_bits(tau) -> tuple[int, ...]:
    if isinstance(tau, str):
        if set(tau) - {"0", "1"}:
            raise ValueError(f"configuration {tau!r} is not a bit string")
        return tuple(int(c) for c in tau)
    return tuple(int(t) for t in tau)


def induced_labels(base: GraphSpec, h: FiniteSupportPermutation, pairs: Sequence[Pair]) -> tuple[int, ...]:
    """Labels the copy ``h(base)`` puts on ``pairs``."""
    return tuple(int(base.edge(h.inv(u), h.inv(v))) for u, v in pairs)
