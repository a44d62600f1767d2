import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from conftest import instances
from dpg.core import DomainError, DpgInstance, social_welfare
from dpg.generators import random_en, random_path
from dpg.oracle import exact_optimum, max_cut_exhaustive
from dpg.reductions import en_maxcut_gadget, example1, fig3, path_partition_gadget
from dpg.welfare import (
    build_ordered_lp,
    cut_weight,
    en_flip_maxcut,
    en_round_to_endpoints,
    fptas_resolution,
    greedy_endpoints,
    order_of,
    ordered_lp,
    path_fptas,
    path_grid_optimum,
    undirected_edges,
)


class TestGreedy:
    def test_fig3_trace(self):
        A = greedy_endpoints(fig3(), [0, 1, 2, 3])
        assert A == (0, 1, 0, 1)
        assert social_welfare(fig3(), A) == 8

    def test_all_zero_distances(self):
        inst = DpgInstance.symmetric_from_edges(4, [(i, j, 0) for i, j in itertools.combinations(range(4), 2)])
        A = greedy_endpoints(inst)
        assert A == (0, 0, 0, 0)
        assert social_welfare(inst, A) == inst.edge_count

    def test_bad_order(self):
        with pytest.raises(DomainError):
            greedy_endpoints(fig3(), [0, 1, 1, 3])


@given(instances(max_n=8, grid=7), st.randoms(use_true_random=False))
def test_greedy_half_bound(inst, rnd):
    order = list(range(inst.n))
    rnd.shuffle(order)
    A = greedy_endpoints(inst, order)
    assert set(A) <= {0, 1}
    assert 2 * social_welfare(inst, A) >= inst.edge_count


class TestOrderedLp:
    def test_fig3_alternating_order(self):
        A = ordered_lp(fig3(), [0, 2, 1, 3])
        assert social_welfare(fig3(), A) == 8

    def test_single_agent(self):
        assert ordered_lp(DpgInstance.from_edges(1, []), [0]) == (0,)

    def test_model_shape(self):
        model = build_ordered_lp(example1(), [0, 2, 1])
        # 3 positions + 5 thetas; 2 chain rows, 1 upper bound, 2 rows per edge
        assert len(model.c) == 8
        assert len(model.A) == 2 + 1 + 10

    def test_respects_order(self):
        inst = example1()
        for order in itertools.permutations(range(3)):
            A = ordered_lp(inst, order)
            assert all(A[order[t]] <= A[order[t + 1]] for t in range(2))


def _order_consistent_profiles(order, m):
    # all grid profiles with A[order[0]] <= ... <= A[order[-1]]
    for combo in itertools.combinations_with_replacement(range(m + 1), len(order)):
        A = [F(0)] * len(order)
        for agent, s in zip(order, combo):
            A[agent] = F(s, m)
        yield A


@given(instances(max_n=4, grid=4), st.randoms(use_true_random=False))
def test_lp_dominates_order_consistent_profiles(inst, rnd):
    order = list(range(inst.n))
    rnd.shuffle(order)
    best = social_welfare(inst, ordered_lp(inst, order))
    for B in _order_consistent_profiles(order, 8):
        assert best >= social_welfare(inst, B)


@given(instances(max_n=6, grid=5))
def test_lp_refines_greedy(inst):
    A = greedy_endpoints(inst)
    assert social_welfare(inst, ordered_lp(inst, order_of(A))) >= social_welfare(inst, A)


class TestPathFptas:
    def test_resolution(self):
        assert fptas_resolution(F(1, 2)) == 4
        assert fptas_resolution(F(1, 5)) == 10
        assert fptas_resolution(F(2, 7)) == 7
        with pytest.raises(DomainError):
            fptas_resolution(1)

    def test_two_agent_on_grid(self):
        inst = DpgInstance.from_edges(2, [(0, 1, F(1, 2))])
        assert social_welfare(inst, path_fptas(inst, F(1, 2))) == 1

    def test_partition_gadget(self):
        inst, _ = path_partition_gadget([1, 1, 2])
        sw = social_welfare(inst, path_fptas(inst, F(1, 10)))
        assert sw >= F(9, 10) * 7

    def test_non_path_rejected(self):
        with pytest.raises(DomainError):
            path_fptas(fig3(), F(1, 2))

    @pytest.mark.parametrize("seed", range(10))
    def test_dp_equals_grid_brute_force(self, seed):
        rng = random.Random(seed)
        inst = random_path(rng, rng.randint(1, 4), grid=6)
        k = rng.choice([2, 3, 4])
        A, sw = path_grid_optimum(inst, k)
        assert social_welfare(inst, A) == sw
        brute = max(
            social_welfare(inst, [F(s, k) for s in pos])
            for pos in itertools.product(range(k + 1), repeat=inst.n)
        )
        assert sw == brute


@pytest.mark.parametrize("seed", range(12))
def test_fptas_sandwich(seed):
    rng = random.Random(100 + seed)
    inst = random_path(rng, rng.randint(2, 5), grid=rng.choice([5, 7, 12]))
    _, opt = exact_optimum(inst)
    for k in (2, 3, 5, 8):
        _, g = path_grid_optimum(inst, k)
        assert opt >= g >= (1 - F(2, k)) * opt


class TestEnemiesNeutrals:
    def test_triangle_rounding_tie(self):
        inst, _ = en_maxcut_gadget([(0, 1), (1, 2), (0, 2)])
        A = en_round_to_endpoints(inst, (0, F(1, 2), 1))
        assert set(A) <= {0, 1}
        assert social_welfare(inst, A) == 4 == social_welfare(inst, (0, F(1, 2), 1))
        assert A == (0, 0, 1)

    def test_endpoint_profile_unchanged(self):
        inst = fig3()
        assert en_round_to_endpoints(inst, (0, 1, 1, 0)) == (0, 1, 1, 0)

    def test_non_en_rejected(self):
        with pytest.raises(DomainError):
            en_round_to_endpoints(example1(), (0, 0, 0))
        with pytest.raises(DomainError):
            en_flip_maxcut(example1())

    def test_triangle_flip(self):
        inst, _ = en_maxcut_gadget([(0, 1), (1, 2), (0, 2)])
        cut, A = en_flip_maxcut(inst)
        assert cut.cut_weight == 2 == max_cut_exhaustive(3, [(0, 1), (1, 2), (0, 2)])
        assert social_welfare(inst, A) == 4

    def test_empty(self):
        cut, A = en_flip_maxcut(DpgInstance.from_edges(3, []))
        assert cut.cut_weight == 0 and social_welfare(DpgInstance.from_edges(3, []), A) == 0

    @pytest.mark.parametrize("a,b", [(1, 1), (2, 3), (3, 3), (2, 5)])
    def test_complete_bipartite(self, a, b):
        edges = [(u, a + v) for u in range(a) for v in range(b)]
        inst, _ = en_maxcut_gadget(edges)
        cut, _ = en_flip_maxcut(inst)
        assert max_cut_exhaustive(a + b, edges) == len(edges)
        assert 2 * cut.cut_weight >= len(edges)


@pytest.mark.parametrize("seed", range(20))
def test_en_cut_identity_and_rounding(seed):
    rng = random.Random(seed)
    inst = random_en(rng, rng.randint(2, 7))
    edges = undirected_edges(inst)
    for side in itertools.islice(itertools.product((0, 1), repeat=inst.n), 40):
        assert social_welfare(inst, [F(s) for s in side]) == 2 * cut_weight(edges, side)
    for _ in range(10):
        A = [F(rng.randint(0, 9), 9) for _ in range(inst.n)]
        R = en_round_to_endpoints(inst, A)
        assert set(R) <= {0, 1}
        assert social_welfare(inst, R) >= social_welfare(inst, A)
    cut, B = en_flip_maxcut(inst)
    assert social_welfare(inst, B) == 2 * cut.cut_weight
    assert 2 * social_welfare(inst, B) >= inst.edge_count
