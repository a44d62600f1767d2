"""Solvers for distance preservation games on the unit interval."""

from dpg.core import (
    ClassFlags,
    DomainError,
    DpgError,
    DpgInstance,
    LocationProfile,
    ResourceLimitError,
    agent_utility,
    classify,
    pair_utility,
    social_welfare,
)
from dpg.stability import (
    DeviationReport,
    DynamicsTrace,
    best_deviation,
    best_response_dynamics,
    candidate_set,
    find_violation,
    is_jump_stable,
    solve_acyclic,
)

__all__ = [
    "ClassFlags",
    "DomainError",
    "DpgError",
    "DpgInstance",
    "LocationProfile",
    "ResourceLimitError",
    "agent_utility",
    "classify",
    "pair_utility",
    "social_welfare",
    "DeviationReport",
    "DynamicsTrace",
    "best_deviation",
    "best_response_dynamics",
    "candidate_set",
    "find_violation",
    "is_jump_stable",
    "solve_acyclic",
]
