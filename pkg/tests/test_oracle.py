import random
from fractions import Fraction as F

import pytest
from hypothesis import given

from conftest import instances
from dpg.core import DomainError, DpgInstance, ResourceLimitError, social_welfare
from dpg.generators import random_instance, random_path, random_symmetric
from dpg.oracle import (
    exact_optimum,
    grid_stable_profiles,
    path_welfare_bounds,
    per_agent_half_bound_check,
    poa_estimate,
)
from dpg.reductions import example1, fig3, path_partition_gadget, prop1
from dpg.stability import solve_acyclic
from dpg.generators import random_acyclic
from dpg.welfare import greedy_endpoints


class TestExactOptimum:
    def test_fig3(self):
        assert exact_optimum(fig3())[1] == 8

    def test_example1(self):
        A, sw = exact_optimum(example1())
        assert sw == F(9, 2)
        assert A == (0, 1, F(1, 2))

    def test_single_agent(self):
        assert exact_optimum(DpgInstance.from_edges(1, []))[1] == 0

    def test_cap(self):
        with pytest.raises(ResourceLimitError):
            exact_optimum(DpgInstance.from_edges(7, []))


@pytest.mark.parametrize("seed", range(8))
def test_optimum_dominates_random_profiles(seed):
    rng = random.Random(seed)
    inst = random_instance(rng, rng.randint(2, 5), grid=6)
    _, opt = exact_optimum(inst)
    assert opt >= social_welfare(inst, greedy_endpoints(inst))
    assert 2 * opt >= inst.edge_count
    for _ in range(2000):
        A = [F(rng.randint(0, 997), 997) for _ in range(inst.n)]
        assert opt >= social_welfare(inst, A)


@given(instances(max_n=3, grid=4))
def test_optimum_dominates_fine_grid(inst):
    import itertools

    _, opt = exact_optimum(inst)
    best = max(
        social_welfare(inst, [F(s, 12) for s in pos])
        for pos in itertools.product(range(13), repeat=inst.n)
    )
    # distances on 1/4 and a 1/12 grid contain an optimum of each ordered LP vertex
    assert opt >= best


class TestGridStable:
    def test_prop1_none(self):
        assert grid_stable_profiles(prop1(), 10) == []

    def test_fig3_binary(self):
        found = grid_stable_profiles(fig3(), 1)
        assert (0, 0, 1, 1) in found and (0, 1, 0, 1) in found

    def test_single_agent(self):
        assert len(grid_stable_profiles(DpgInstance.from_edges(1, []), 2)) == 3

    def test_budget(self):
        with pytest.raises(ResourceLimitError):
            grid_stable_profiles(fig3(), 10, budget=1000)


class TestPoa:
    def test_fig3_ratio_two(self):
        rep = poa_estimate(fig3(), 1)
        assert rep.ratio == 2
        assert rep.worst_stable_sw == 4 and rep.opt_sw == 8

    def test_all_zero_distances(self):
        inst = DpgInstance.symmetric_from_edges(3, [(0, 1, 0), (1, 2, 0), (0, 2, 0)])
        assert poa_estimate(inst, 2).ratio == 1

    def test_prop1_no_ratio(self):
        rep = poa_estimate(prop1(), 4)
        assert rep.stable_profiles_found == 0 and rep.ratio is None


@pytest.mark.parametrize("seed", range(8))
def test_symmetric_price_of_stability_one(seed):
    rng = random.Random(seed)
    inst = random_symmetric(rng, rng.randint(2, 4), grid=2)
    rep = poa_estimate(inst, 2)
    assert rep.ratio is None or 1 <= rep.ratio <= 2
    if all((x * 2).denominator == 1 for x in rep.opt_profile):
        assert rep.opt_profile in grid_stable_profiles(inst, 2)


class TestHalfBound:
    def test_fig3_tight(self):
        assert per_agent_half_bound_check(fig3(), (0, 0, 1, 1))

    def test_unstable_rejected(self):
        with pytest.raises(DomainError):
            per_agent_half_bound_check(prop1(), (0, 0))

    def test_isolated(self):
        assert per_agent_half_bound_check(DpgInstance.from_edges(2, []), (0, 1))

    @pytest.mark.parametrize("seed", range(10))
    def test_acyclic_outputs(self, seed):
        rng = random.Random(seed)
        inst = random_acyclic(rng, rng.randint(1, 7))
        assert per_agent_half_bound_check(inst, solve_acyclic(inst))


class TestPathBounds:
    def test_balanced_gadget(self):
        inst, _ = path_partition_gadget([1, 1, 2])
        lo, hi = path_welfare_bounds(inst, 4)
        assert lo == hi == 7

    def test_unbalanced_gadget_gap(self):
        inst, _ = path_partition_gadget([1, 1, 1])
        lo, hi = path_welfare_bounds(inst, 60)
        assert hi < 7

    @pytest.mark.parametrize("seed", range(6))
    def test_bounds_bracket_optimum(self, seed):
        rng = random.Random(seed)
        inst = random_path(rng, rng.randint(2, 5), grid=7)
        _, opt = exact_optimum(inst)
        for k in (3, 10):
            lo, hi = path_welfare_bounds(inst, k)
            assert lo <= opt <= hi
