"""Instances, location profiles, utilities and social welfare.

All quantities are :class:`fractions.Fraction`; nothing in the library
rounds.  Agents are numbered ``0 .. n-1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from graphlib import CycleError, TopologicalSorter
from typing import Iterable, Iterator, Sequence, Union

Rational = Fraction
RationalLike = Union[int, str, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)

# classify() gives up on k-discreteness beyond this lcm
DEFAULT_K_BOUND = 10**6


class DpgError(Exception):
    """Base class for library errors."""


class DomainError(DpgError, ValueError):
    """An input violates an operation's precondition."""


class ResourceLimitError(DpgError):
    """An exhaustive computation would exceed its configured cap."""


def as_rational(value: RationalLike) -> Fraction:
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass a Fraction, int or 'p/q' string")
    return Fraction(value)


@dataclass(frozen=True)
class DpgInstance:
    """A distance preservation game.

    ``relations[i]`` is the tuple of ``(j, d_i(j))`` pairs for ``j`` in ``M_i``,
    sorted by ``j``.
    """

    n: int
    relations: tuple[tuple[tuple[int, Fraction], ...], ...]
    _lookup: tuple[dict[int, Fraction], ...] = field(
        init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self) -> None:
        if self.n < 0:
            raise DomainError("agent count must be non-negative")
        if len(self.relations) != self.n:
            raise DomainError(f"expected {self.n} relation lists, got {len(self.relations)}")
        lookup = []
        normalized = []
        for i, rel in enumerate(self.relations):
            table: dict[int, Fraction] = {}
            for j, d in rel:
                d = as_rational(d)
                if not 0 <= j < self.n:
                    raise DomainError(f"agent {i}: target {j} out of range")
                if j == i:
                    raise DomainError(f"agent {i} cannot relate to itself")
                if j in table:
                    raise DomainError(f"agent {i}: duplicate target {j}")
                if not ZERO <= d <= ONE:
                    raise DomainError(f"agent {i}: ideal distance {d} to {j} outside [0, 1]")
                table[j] = d
            normalized.append(tuple(sorted(table.items())))
            lookup.append(table)
        object.__setattr__(self, "relations", tuple(normalized))
        object.__setattr__(self, "_lookup", tuple(lookup))

    @classmethod
    def from_edges(
        cls, n: int, edges: Iterable[tuple[int, int, RationalLike]]
    ) -> DpgInstance:
        """Build from directed ``(i, j, d)`` triples meaning ``d_i(j) = d``."""
        rel: list[list[tuple[int, Fraction]]] = [[] for _ in range(n)]
        for i, j, d in edges:
            if not 0 <= i < n:
                raise DomainError(f"source agent {i} out of range")
            rel[i].append((j, as_rational(d)))
        return cls(n, tuple(tuple(r) for r in rel))

    @classmethod
    def symmetric_from_edges(
        cls, n: int, edges: Iterable[tuple[int, int, RationalLike]]
    ) -> DpgInstance:
        """Build a symmetric instance; each ``(i, j, d)`` adds both directions."""
        directed = []
        for i, j, d in edges:
            directed.append((i, j, d))
            directed.append((j, i, d))
        return cls.from_edges(n, directed)

    def relation_set(self, i: int) -> tuple[int, ...]:
        return tuple(j for j, _ in self.relations[i])

    def distance(self, i: int, j: int) -> Fraction:
        try:
            return self._lookup[i][j]
        except KeyError:
            raise DomainError(f"agent {j} is not in M_{i}") from None

    def cares_about(self, i: int, j: int) -> bool:
        return j in self._lookup[i]

    def edges(self) -> Iterator[tuple[int, int, Fraction]]:
        """Directed edges ``(i, j, d)`` sorted by ``(i, j)``."""
        for i, rel in enumerate(self.relations):
            for j, d in rel:
                yield i, j, d

    @property
    def edge_count(self) -> int:
        """``sum_i |M_i|``, the trivial upper bound on social welfare."""
        return sum(len(rel) for rel in self.relations)

    def relabel(self, perm: Sequence[int]) -> DpgInstance:
        """Rename agent ``i`` to ``perm[i]``."""
        return DpgInstance.from_edges(
            self.n, ((perm[i], perm[j], d) for i, j, d in self.edges())
        )


class LocationProfile(Sequence[Fraction]):
    """One position in [0, 1] per agent. Immutable."""

    __slots__ = ("positions",)

    def __init__(self, positions: Iterable[RationalLike]):
        pos = tuple(as_rational(x) for x in positions)
        for i, x in enumerate(pos):
            if not ZERO <= x <= ONE:
                raise DomainError(f"position {x} of agent {i} outside [0, 1]")
        object.__setattr__(self, "positions", pos)

    def __setattr__(self, name, value):
        raise AttributeError("LocationProfile is immutable")

    def __getitem__(self, i):
        return self.positions[i]

    def __len__(self) -> int:
        return len(self.positions)

    def __iter__(self):
        return iter(self.positions)

    def __eq__(self, other) -> bool:
        if isinstance(other, LocationProfile):
            return self.positions == other.positions
        if isinstance(other, (tuple, list)):
            return self.positions == tuple(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.positions)

    def __repr__(self) -> str:
        return "LocationProfile(" + ", ".join(str(x) for x in self.positions) + ")"

    def moved(self, i: int, x: RationalLike) -> LocationProfile:
        """The profile ``A^{i -> x}``."""
        pos = list(self.positions)
        pos[i] = as_rational(x)
        return LocationProfile(pos)

    @classmethod
    def zeros(cls, n: int) -> LocationProfile:
        return cls([ZERO] * n)


def as_profile(A: Sequence[RationalLike] | LocationProfile) -> LocationProfile:
    return A if isinstance(A, LocationProfile) else LocationProfile(A)


def _check_profile(inst: DpgInstance, A: LocationProfile) -> None:
    if len(A) != inst.n:
        raise DomainError(f"profile has {len(A)} positions for {inst.n} agents")


def _u(ai: Fraction, aj: Fraction, d: Fraction) -> Fraction:
    return ONE - abs(abs(ai - aj) - d)


def pair_utility(inst: DpgInstance, A, i: int, j: int) -> Fraction:
    """``1 - | |A_i - A_j| - d_i(j) |``; raises if ``j`` is not in ``M_i``."""
    A = as_profile(A)
    _check_profile(inst, A)
    return _u(A[i], A[j], inst.distance(i, j))


def utility_at(inst: DpgInstance, A: Sequence[Fraction], i: int, x: Fraction) -> Fraction:
    """Utility of agent ``i`` if it stood at ``x`` while everyone else stays put."""
    total = ZERO
    for j, d in inst.relations[i]:
        total += ONE - abs(abs(x - A[j]) - d)
    return total


def agent_utility(inst: DpgInstance, A, i: int) -> Fraction:
    A = as_profile(A)
    _check_profile(inst, A)
    return utility_at(inst, A, i, A[i])


def social_welfare(inst: DpgInstance, A) -> Fraction:
    A = as_profile(A)
    _check_profile(inst, A)
    return sum((utility_at(inst, A, i, A[i]) for i in range(inst.n)), ZERO)


@dataclass(frozen=True)
class ClassFlags:
    symmetric: bool
    acyclic: bool
    path: bool
    enemies_neutrals: bool
    k_discrete_for: int | None


def topological_order(inst: DpgInstance) -> list[int] | None:
    """Agents ordered so that every ``j`` in ``M_i`` precedes ``i``; None if cyclic."""
    graph = {i: inst.relation_set(i) for i in range(inst.n)}
    try:
        return list(TopologicalSorter(graph).static_order())
    except CycleError:
        return None


def path_order(inst: DpgInstance) -> list[int] | None:
    """The agent sequence ``i_1 .. i_n`` of a path DPG, or None if not a path."""
    if inst.n == 0:
        return []
    if any(len(rel) > 1 for rel in inst.relations):
        return None
    if inst.edge_count != inst.n - 1:
        return None
    indeg = [0] * inst.n
    for _, j, _ in inst.edges():
        indeg[j] += 1
    heads = [i for i in range(inst.n) if indeg[i] == 0]
    if len(heads) != 1 or max(indeg) > 1:
        return None
    order = [heads[0]]
    seen = {heads[0]}
    while inst.relations[order[-1]]:
        nxt = inst.relations[order[-1]][0][0]
        if nxt in seen:
            return None
        seen.add(nxt)
        order.append(nxt)
    return order if len(order) == inst.n else None


def is_symmetric(inst: DpgInstance) -> bool:
    return all(
        inst.cares_about(j, i) and inst.distance(j, i) == d for i, j, d in inst.edges()
    )


def discreteness(inst: DpgInstance, bound: int = DEFAULT_K_BOUND) -> int | None:
    """Smallest ``k`` with every ideal distance a multiple of ``1/k``."""
    k = 1
    for _, _, d in inst.edges():
        k = math.lcm(k, d.denominator)
        if k > bound:
            return None
    return k


def classify(inst: DpgInstance, k_bound: int = DEFAULT_K_BOUND) -> ClassFlags:
    symmetric = is_symmetric(inst)
    return ClassFlags(
        symmetric=symmetric,
        acyclic=topological_order(inst) is not None,
        path=path_order(inst) is not None,
        enemies_neutrals=symmetric and all(d == ONE for _, _, d in inst.edges()),
        k_discrete_for=discreteness(inst, k_bound),
    )
