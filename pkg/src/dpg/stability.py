"""Jump stability: exact verification, best-response dynamics, acyclic solver.

An agent's utility as a function of its own position is piecewise linear
with breakpoints at ``A_j - d``, ``A_j`` and ``A_j + d`` (clamped to the unit
interval) for each ``j`` it cares about.  Checking those points plus the two
endpoints is therefore enough to find the best jump exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from dpg.core import (
    ONE,
    ZERO,
    DomainError,
    DpgInstance,
    LocationProfile,
    as_profile,
    classify,
    social_welfare,
    topological_order,
    utility_at,
)


def candidate_set(inst: DpgInstance, A, i: int) -> tuple[Fraction, ...]:
    """Sorted breakpoints of agent ``i``'s deviation utility, including 0 and 1."""
    points = {ZERO, ONE}
    for j, d in inst.relations[i]:
        aj = A[j]
        points.add(max(ZERO, aj - d))
        points.add(aj)
        points.add(min(ONE, aj + d))
    return tuple(sorted(points))


@dataclass(frozen=True)
class DeviationReport:
    agent: int
    current_utility: Fraction
    best_target: Fraction
    best_utility: Fraction

    @property
    def gain(self) -> Fraction:
        return self.best_utility - self.current_utility

    @property
    def improving(self) -> bool:
        return self.best_utility > self.current_utility


def _leftmost_best(inst: DpgInstance, A, i: int) -> tuple[Fraction, Fraction]:
    best_x, best_u = None, None
    for x in candidate_set(inst, A, i):
        u = utility_at(inst, A, i, x)
        if best_u is None or u > best_u:
            best_x, best_u = x, u
    return best_x, best_u


def best_deviation(inst: DpgInstance, A, i: int) -> DeviationReport:
    """Best jump for agent ``i``: the leftmost utility-maximizing position."""
    A = as_profile(A)
    current = utility_at(inst, A, i, A[i])
    x, u = _leftmost_best(inst, A, i)
    # the candidate set contains every maximizer's leftmost point, so u >= current
    return DeviationReport(agent=i, current_utility=current, best_target=x, best_utility=u)


def find_violation(inst: DpgInstance, A) -> DeviationReport | None:
    """First agent (by index) with a strictly improving jump, or None."""
    A = as_profile(A)
    if len(A) != inst.n:
        raise DomainError(f"profile has {len(A)} positions for {inst.n} agents")
    for i in range(inst.n):
        report = best_deviation(inst, A, i)
        if report.improving:
            return report
    return None


def is_jump_stable(inst: DpgInstance, A) -> bool:
    return find_violation(inst, A) is None


@dataclass(frozen=True)
class Step:
    agent: int
    source: Fraction
    target: Fraction
    sw_after: Fraction


@dataclass
class DynamicsTrace:
    steps: list[Step] = field(default_factory=list)
    converged: bool = False

    @property
    def iterations(self) -> int:
        return len(self.steps)


def default_max_iters(inst: DpgInstance) -> int:
    flags = classify(inst)
    n = max(inst.n, 1)
    if flags.symmetric and flags.k_discrete_for is not None:
        return flags.k_discrete_for * n * n + 1
    return 10 * n**3


def best_response_dynamics(
    inst: DpgInstance,
    start=None,
    max_iters: int | None = None,
) -> tuple[LocationProfile, DynamicsTrace]:
    """Move the lowest-index improving agent to its leftmost best response.

    Starts from all agents at 0 unless ``start`` is given.  Stops when the
    profile is jump stable or after ``max_iters`` moves; running out of moves
    is reported through ``trace.converged`` rather than an exception.
    """
    if max_iters is None:
        max_iters = default_max_iters(inst)
    if max_iters < 1:
        raise DomainError("max_iters must be at least 1")
    A = LocationProfile.zeros(inst.n) if start is None else as_profile(start)
    if len(A) != inst.n:
        raise DomainError(f"start profile has {len(A)} positions for {inst.n} agents")
    pos = list(A)
    trace = DynamicsTrace()
    while True:
        report = find_violation(inst, pos)
        if report is None:
            trace.converged = True
            break
        if trace.iterations >= max_iters:
            break
        i = report.agent
        source = pos[i]
        pos[i] = report.best_target
        trace.steps.append(Step(i, source, report.best_target, social_welfare(inst, pos)))
    return LocationProfile(pos), trace


def solve_acyclic(inst: DpgInstance) -> LocationProfile:
    """Jump-stable profile of an acyclic instance.

    Agents are placed sinks-first; each goes to its leftmost best position
    given the agents it cares about, which are already placed.
    """
    order = topological_order(inst)
    if order is None:
        raise DomainError("preference graph has a cycle")
    pos = [ZERO] * inst.n
    for i in order:
        if inst.relations[i]:
            pos[i], _ = _leftmost_best(inst, pos, i)
    return LocationProfile(pos)
