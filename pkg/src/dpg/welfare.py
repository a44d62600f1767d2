"""Social-welfare maximization heuristics and approximation algorithms."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from dpg.core import (
    ONE,
    ZERO,
    DomainError,
    DpgInstance,
    LocationProfile,
    as_profile,
    as_rational,
    classify,
    path_order,
    social_welfare,
)
from dpg.simplex import maximize


def _check_order(inst: DpgInstance, order: Sequence[int] | None) -> list[int]:
    if order is None:
        return list(range(inst.n))
    order = list(order)
    if sorted(order) != list(range(inst.n)):
        raise DomainError(f"order {order} is not a permutation of the {inst.n} agents")
    return order


def greedy_endpoints(inst: DpgInstance, order: Sequence[int] | None = None) -> LocationProfile:
    """Place agents one by one at 0 or 1, whichever adds more welfare.

    Only edges between the new agent and already placed agents count, in
    both directions.  Ties go to 0.  Guarantees welfare of at least half of
    ``sum_i |M_i|``.
    """
    order = _check_order(inst, order)
    pos: list[Fraction | None] = [None] * inst.n
    for t, i in enumerate(order):
        if t == 0:
            pos[i] = ZERO
            continue
        gain = {ZERO: ZERO, ONE: ZERO}
        for x in gain:
            g = ZERO
            for j, d in inst.relations[i]:
                if pos[j] is not None:
                    g += ONE - abs(abs(x - pos[j]) - d)
            for j in range(inst.n):
                if pos[j] is not None and inst.cares_about(j, i):
                    g += ONE - abs(abs(x - pos[j]) - inst.distance(j, i))
            gain[x] = g
        pos[i] = ONE if gain[ONE] > gain[ZERO] else ZERO
    return LocationProfile(pos)


@dataclass(frozen=True)
class OrderedLpModel:
    """``max c.x, A x <= b, x >= 0`` for a fixed left-to-right agent order.

    Columns ``0 .. n-1`` are the positions of ``order[0] .. order[n-1]``;
    column ``n + e`` is the slack ``theta`` of directed edge ``edges[e]``.
    """

    order: tuple[int, ...]
    edges: tuple[tuple[int, int, Fraction], ...]
    c: tuple[Fraction, ...]
    A: tuple[tuple[Fraction, ...], ...]
    b: tuple[Fraction, ...]

    @property
    def constant(self) -> Fraction:
        # objective is sum (1 - theta) = |E| - sum theta
        return Fraction(len(self.edges))


def build_ordered_lp(inst: DpgInstance, order: Sequence[int]) -> OrderedLpModel:
    order = _check_order(inst, order)
    n = inst.n
    rank = {agent: t for t, agent in enumerate(order)}
    edges = tuple(inst.edges())
    width = n + len(edges)
    rows: list[tuple[Fraction, ...]] = []
    rhs: list[Fraction] = []

    def row(entries: dict[int, int]) -> tuple[Fraction, ...]:
        r = [ZERO] * width
        for k, v in entries.items():
            r[k] = Fraction(v)
        return tuple(r)

    for t in range(n - 1):
        rows.append(row({t: 1, t + 1: -1}))
        rhs.append(ZERO)
    if n:
        rows.append(row({n - 1: 1}))
        rhs.append(ONE)
    for e, (i, j, d) in enumerate(edges):
        lo, hi = sorted((rank[i], rank[j]))
        theta = n + e
        # theta >= (A_hi - A_lo) - d  and  theta >= d - (A_hi - A_lo)
        rows.append(row({hi: 1, lo: -1, theta: -1}))
        rhs.append(d)
        rows.append(row({hi: -1, lo: 1, theta: -1}))
        rhs.append(-d)
    c = tuple([ZERO] * n + [-ONE] * len(edges))
    return OrderedLpModel(tuple(order), edges, c, tuple(rows), tuple(rhs))


def ordered_lp(inst: DpgInstance, order: Sequence[int] | None = None) -> LocationProfile:
    """Welfare-optimal profile among those with ``A_order[0] <= ... <= A_order[-1]``."""
    model = build_ordered_lp(inst, _check_order(inst, order))
    if inst.n == 0:
        return LocationProfile([])
    sol = maximize(model.c, model.A, model.b)
    pos = [ZERO] * inst.n
    for t, agent in enumerate(model.order):
        pos[agent] = sol.x[t]
    return LocationProfile(pos)


def order_of(A) -> list[int]:
    """Agents sorted by position, ties by index."""
    return sorted(range(len(A)), key=lambda i: (A[i], i))


@dataclass(frozen=True)
class PathDag:
    """Layered DAG for a path instance on the grid ``{0, 1/k, ..., 1}``.

    Layer ``t`` holds the grid positions of agent ``agents[t]``; the edge from
    ``(t, s)`` to ``(t + 1, u)`` is worth the utility of ``agents[t]``
    towards ``agents[t + 1]``.
    """

    agents: tuple[int, ...]
    k: int
    distances: tuple[Fraction, ...]

    @property
    def grid(self) -> list[Fraction]:
        return [Fraction(s, self.k) for s in range(self.k + 1)]

    def weight(self, t: int, s: int, u: int) -> Fraction:
        return ONE - abs(Fraction(abs(s - u), self.k) - self.distances[t])

    def longest_path(self) -> tuple[list[Fraction], Fraction]:
        """Single forward pass; among equal values the smaller grid index wins."""
        n = len(self.agents)
        if n == 0:
            return [], ZERO
        size = self.k + 1
        value = [ZERO] * size
        back: list[list[int]] = []
        for t in range(n - 1):
            nxt = [ZERO] * size
            arg = [0] * size
            for u in range(size):
                best, best_s = None, 0
                for s in range(size):
                    v = value[s] + self.weight(t, s, u)
                    if best is None or v > best:
                        best, best_s = v, s
                nxt[u], arg[u] = best, best_s
            value = nxt
            back.append(arg)
        end = max(range(size), key=lambda u: (value[u], -u))
        path = [end]
        for arg in reversed(back):
            path.append(arg[path[-1]])
        path.reverse()
        return [Fraction(s, self.k) for s in path], value[end]


def path_dag(inst: DpgInstance, k: int) -> PathDag:
    agents = path_order(inst)
    if agents is None:
        raise DomainError("instance is not a path DPG")
    if k < 1:
        raise DomainError("grid resolution k must be positive")
    dists = tuple(inst.distance(agents[t], agents[t + 1]) for t in range(len(agents) - 1))
    return PathDag(tuple(agents), k, dists)


def path_grid_optimum(inst: DpgInstance, k: int) -> tuple[LocationProfile, Fraction]:
    """Best profile with every position on ``{0, 1/k, ..., 1}``, for path instances."""
    dag = path_dag(inst, k)
    layer_pos, sw = dag.longest_path()
    pos = [ZERO] * inst.n
    for agent, x in zip(dag.agents, layer_pos):
        pos[agent] = x
    return LocationProfile(pos), sw


def fptas_resolution(epsilon) -> int:
    epsilon = as_rational(epsilon)
    if not ZERO < epsilon < ONE:
        raise DomainError("epsilon must lie strictly between 0 and 1")
    return math.ceil(2 / epsilon)


def path_fptas(inst: DpgInstance, epsilon) -> LocationProfile:
    """``(1 - epsilon)``-optimal profile for a path instance.

    Uses the grid of resolution ``k = ceil(2 / epsilon)``; rounding an
    optimum down to that grid loses at most ``(n - 1) / k``, which is at most
    ``2 / k`` of the optimum.
    """
    k = fptas_resolution(epsilon)
    profile, _ = path_grid_optimum(inst, k)
    return profile


def _require_en(inst: DpgInstance) -> None:
    if not classify(inst).enemies_neutrals:
        raise DomainError("instance is not an enemies-and-neutrals DPG")


def en_round_to_endpoints(inst: DpgInstance, A) -> LocationProfile:
    """Push every interior group of co-located agents to an endpoint.

    The leftmost interior occupied position moves as a block to its nearest
    occupied neighbour on the left or right (or an endpoint), whichever
    changes welfare more; one of the two never loses welfare.  Ties go left.
    """
    _require_en(inst)
    pos = list(as_profile(A))
    if len(pos) != inst.n:
        raise DomainError(f"profile has {len(pos)} positions for {inst.n} agents")
    sw = social_welfare(inst, pos)
    while True:
        occupied = sorted({ZERO, ONE, *pos})
        if len(occupied) == 2:
            return LocationProfile(pos)
        x_left, x, x_right = occupied[0], occupied[1], occupied[2]
        group = [i for i in range(inst.n) if pos[i] == x]
        left = [x_left if i in group else p for i, p in enumerate(pos)]
        right = [x_right if i in group else p for i, p in enumerate(pos)]
        sw_left = social_welfare(inst, left)
        sw_right = social_welfare(inst, right)
        if sw_left >= sw_right:
            pos, new_sw = left, sw_left
        else:
            pos, new_sw = right, sw_right
        assert new_sw >= sw, "rounding step lost welfare"
        sw = new_sw


@dataclass(frozen=True)
class CutAssignment:
    side: tuple[int, ...]
    cut_weight: int

    def profile(self) -> LocationProfile:
        return LocationProfile([Fraction(s) for s in self.side])


def undirected_edges(inst: DpgInstance) -> list[tuple[int, int]]:
    return sorted({(min(i, j), max(i, j)) for i, j, _ in inst.edges()})


def cut_weight(edges: Sequence[tuple[int, int]], side: Sequence[int]) -> int:
    return sum(1 for u, v in edges if side[u] != side[v])


def flip_local_search(n: int, edges: Sequence[tuple[int, int]]) -> CutAssignment:
    """Flip the lowest-index vertex whose move strictly grows the cut, until none does."""
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    side = [0] * n
    improved = True
    while improved:
        improved = False
        for v in range(n):
            same = sum(1 for w in adj[v] if side[w] == side[v])
            if same > len(adj[v]) - same:
                side[v] ^= 1
                improved = True
                break
    return CutAssignment(tuple(side), cut_weight(edges, side))


def en_flip_maxcut(inst: DpgInstance) -> tuple[CutAssignment, LocationProfile]:
    """Flip-local-optimal cut of the preference graph and its 0/1 profile.

    Each cut edge contributes 1 to both endpoints' utilities, so the
    profile's welfare is twice the cut weight.
    """
    _require_en(inst)
    cut = flip_local_search(inst.n, undirected_edges(inst))
    return cut, cut.profile()
