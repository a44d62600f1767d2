"""Exhaustive reference computations for small instances."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from dpg.core import (
    DomainError,
    DpgInstance,
    LocationProfile,
    ResourceLimitError,
    agent_utility,
    social_welfare,
)
from dpg.stability import is_jump_stable
from dpg.welfare import ordered_lp, path_grid_optimum

DEFAULT_AGENT_CAP = 6
DEFAULT_GRID_BUDGET = 200_000


def orders_up_to_reversal(n: int):
    """One representative of each {order, reversed order} pair.

    Mirroring positions ``x -> 1 - x`` maps profiles consistent with an order
    onto profiles consistent with its reverse without changing welfare, so
    the other half would only repeat optima.
    """
    for perm in itertools.permutations(range(n)):
        if n < 2 or perm[0] < perm[-1]:
            yield perm


def exact_optimum(
    inst: DpgInstance, cap: int = DEFAULT_AGENT_CAP
) -> tuple[LocationProfile, Fraction]:
    """Welfare-optimal profile, via the ordered LP over every agent order."""
    if inst.n > cap:
        raise ResourceLimitError(f"exact optimum limited to {cap} agents, got {inst.n}")
    best_profile = LocationProfile.zeros(inst.n)
    best_sw = social_welfare(inst, best_profile)
    for order in orders_up_to_reversal(inst.n):
        profile = ordered_lp(inst, order)
        sw = social_welfare(inst, profile)
        if sw > best_sw:
            best_profile, best_sw = profile, sw
    return best_profile, best_sw


def grid(m: int) -> list[Fraction]:
    if m < 1:
        raise DomainError("grid resolution must be positive")
    return [Fraction(s, m) for s in range(m + 1)]


def grid_stable_profiles(
    inst: DpgInstance, m: int, budget: int = DEFAULT_GRID_BUDGET
) -> list[LocationProfile]:
    """Every jump-stable profile with positions on ``{0, 1/m, ..., 1}``.

    Stability is checked against all continuous jumps, so each returned
    profile is genuinely stable; stable profiles off the grid are missed.
    """
    points = grid(m)
    if (m + 1) ** inst.n > budget:
        raise ResourceLimitError(
            f"grid search needs {(m + 1) ** inst.n} profiles, budget is {budget}"
        )
    found = []
    for pos in itertools.product(points, repeat=inst.n):
        if is_jump_stable(inst, pos):
            found.append(LocationProfile(pos))
    return found


@dataclass(frozen=True)
class PoaReport:
    """Optimum versus the worst stable profile found on a grid.

    ``worst_stable_sw`` is a minimum over grid profiles only, hence an upper
    bound on the true minimum over all stable profiles, and ``ratio`` a lower
    bound on the price of anarchy.
    """

    opt_sw: Fraction
    opt_profile: LocationProfile
    grid: int
    stable_profiles_found: int
    worst_stable_sw: Fraction | None
    worst_stable_profile: LocationProfile | None

    @property
    def ratio(self) -> Fraction | None:
        if not self.worst_stable_sw:
            return None
        return self.opt_sw / self.worst_stable_sw


def poa_estimate(
    inst: DpgInstance,
    m: int,
    budget: int = DEFAULT_GRID_BUDGET,
    cap: int = DEFAULT_AGENT_CAP,
) -> PoaReport:
    stable = grid_stable_profiles(inst, m, budget)
    opt_profile, opt_sw = exact_optimum(inst, cap)
    worst = min(stable, key=lambda A: social_welfare(inst, A), default=None)
    return PoaReport(
        opt_sw=opt_sw,
        opt_profile=opt_profile,
        grid=m,
        stable_profiles_found=len(stable),
        worst_stable_sw=None if worst is None else social_welfare(inst, worst),
        worst_stable_profile=worst,
    )


def per_agent_half_bound_check(inst: DpgInstance, A) -> bool:
    """Every agent of a stable profile gets at least ``|M_i| / 2``."""
    if not is_jump_stable(inst, A):
        raise DomainError("profile is not jump stable")
    return all(
        agent_utility(inst, A, i) >= Fraction(len(inst.relations[i]), 2)
        for i in range(inst.n)
    )


def path_welfare_bounds(inst: DpgInstance, k: int) -> tuple[Fraction, Fraction]:
    """Lower and upper bounds on the optimum of a path instance.

    Rounding an optimal profile down to the grid ``{0, 1/k, ..., 1}`` changes
    each consecutive distance by at most ``1/k``, so the grid optimum is
    within ``(n - 1) / k`` of the true optimum.  Works beyond the agent cap
    of :func:`exact_optimum`.
    """
    _, lower = path_grid_optimum(inst, k)
    upper = min(lower + Fraction(max(inst.n - 1, 0), k), Fraction(inst.edge_count))
    return lower, upper


def max_cut_exhaustive(n: int, edges) -> int:
    """Largest cut by enumerating all ``2^n`` vertex bipartitions."""
    best = 0
    for side in itertools.product((0, 1), repeat=n):
        best = max(best, sum(1 for u, v in edges if side[u] != side[v]))
    return best
