from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from dpg.core import DpgInstance, LocationProfile

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def grid_fractions(m):
    return st.integers(0, m).map(lambda s: Fraction(s, m))


@st.composite
def instances(draw, max_n=4, grid=6, symmetric=False, min_n=1):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j and (not symmetric or i < j)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    edges = [(i, j, draw(grid_fractions(grid))) for i, j in chosen]
    if symmetric:
        return DpgInstance.symmetric_from_edges(n, edges)
    return DpgInstance.from_edges(n, edges)


@st.composite
def instance_and_profile(draw, max_n=4, grid=6, profile_grid=12, symmetric=False):
    inst = draw(instances(max_n=max_n, grid=grid, symmetric=symmetric))
    A = [draw(grid_fractions(profile_grid)) for _ in range(inst.n)]
    return inst, LocationProfile(A)


@pytest.fixture
def half():
    return Fraction(1, 2)


# one entry per acceptance criterion: (number, title, passed, detail)
ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(ACCEPTANCE_RESULTS):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {number:>2}: {title} ({detail})")
