"""Random instance families for experiments and property tests."""

from __future__ import annotations

import random
from fractions import Fraction

from dpg.core import DpgInstance, LocationProfile


def random_instance(
    rng: random.Random, n: int, grid: int = 6, density: float = 0.5
) -> DpgInstance:
    """Each ordered pair related with probability ``density``; distances on ``1/grid``."""
    edges = [
        (i, j, Fraction(rng.randint(0, grid), grid))
        for i in range(n)
        for j in range(n)
        if i != j and rng.random() < density
    ]
    return DpgInstance.from_edges(n, edges)


def random_symmetric(
    rng: random.Random, n: int, grid: int = 6, density: float = 0.5
) -> DpgInstance:
    edges = [
        (i, j, Fraction(rng.randint(0, grid), grid))
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < density
    ]
    return DpgInstance.symmetric_from_edges(n, edges)


def random_acyclic(
    rng: random.Random, n: int, grid: int = 6, density: float = 0.5
) -> DpgInstance:
    """Edges only from later to earlier agents of a random hidden order."""
    order = list(range(n))
    rng.shuffle(order)
    edges = [
        (order[b], order[a], Fraction(rng.randint(0, grid), grid))
        for a in range(n)
        for b in range(a + 1, n)
        if rng.random() < density
    ]
    return DpgInstance.from_edges(n, edges)


def random_path(rng: random.Random, n: int, grid: int = 12) -> DpgInstance:
    order = list(range(n))
    rng.shuffle(order)
    edges = [
        (order[t], order[t + 1], Fraction(rng.randint(0, grid), grid)) for t in range(n - 1)
    ]
    return DpgInstance.from_edges(n, edges)


def random_en(rng: random.Random, n: int, density: float = 0.5) -> DpgInstance:
    edges = [(i, j, 1) for i in range(n) for j in range(i + 1, n) if rng.random() < density]
    return DpgInstance.symmetric_from_edges(n, edges)


def random_profile(rng: random.Random, n: int, grid: int) -> LocationProfile:
    return LocationProfile(Fraction(rng.randint(0, grid), grid) for _ in range(n))
