from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.optimize import linprog

from dpg.simplex import InfeasibleError, UnboundedError, maximize


def test_textbook_problem():
    # max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18  ->  (2, 6), 36
    sol = maximize([3, 5], [[1, 0], [0, 2], [3, 2]], [4, 12, 18])
    assert sol.x == (2, 6) and sol.objective == 36


def test_negative_rhs_needs_phase_one():
    # max -x - y with x + y >= 1 (written as -x - y <= -1)
    sol = maximize([-1, -1], [[-1, -1]], [-1])
    assert sol.objective == -1


def test_exact_fractions():
    sol = maximize([1, 1], [[3, 1], [1, 3]], [1, 1])
    assert sol.x == (F(1, 4), F(1, 4))
    assert sol.objective == F(1, 2)


def test_infeasible():
    with pytest.raises(InfeasibleError):
        maximize([1], [[1], [-1]], [1, -2])


def test_unbounded():
    with pytest.raises(UnboundedError):
        maximize([1, 0], [[-1, 1]], [1])


def test_degenerate_cycle_prone_problem():
    # Beale's example cycles under the largest-coefficient rule
    c = [F(3, 4), -150, F(1, 50), -6]
    A = [
        [F(1, 4), -60, F(-1, 25), 9],
        [F(1, 2), -90, F(-1, 50), 3],
        [0, 0, 1, 0],
    ]
    sol = maximize(c, A, [0, 0, 1])
    assert sol.objective == F(1, 20)


def test_redundant_equality_rows():
    # x + y >= 1 twice and x + y <= 1: artificial rows become redundant
    sol = maximize([1, 2], [[-1, -1], [-1, -1], [1, 1]], [-1, -1, 1])
    assert sol.objective == 2 and sol.x == (0, 1)


small_ints = st.integers(-4, 4)


@st.composite
def bounded_lps(draw):
    n = draw(st.integers(1, 4))
    m = draw(st.integers(1, 5))
    A = [[draw(small_ints) for _ in range(n)] for _ in range(m)]
    b = [draw(st.integers(-3, 6)) for _ in range(m)]
    c = [draw(small_ints) for _ in range(n)]
    # box x_i <= 5 keeps every problem bounded
    A += [[1 if k == i else 0 for k in range(n)] for i in range(n)]
    b += [5] * n
    return c, A, b


@given(bounded_lps())
def test_agrees_with_highs(lp):
    c, A, b = lp
    ref = linprog(-np.array(c, float), A_ub=np.array(A, float), b_ub=np.array(b, float),
                  bounds=[(0, None)] * len(c), method="highs")
    if ref.status == 2:
        with pytest.raises(InfeasibleError):
            maximize(c, A, b)
        return
    assert ref.status == 0
    sol = maximize(c, A, b)
    assert float(sol.objective) == pytest.approx(-ref.fun, abs=1e-7)
    x = sol.x
    for row, rhs in zip(A, b):
        assert sum(F(a) * xv for a, xv in zip(row, x)) <= rhs
    assert all(v >= 0 for v in x)
