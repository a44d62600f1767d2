"""Dense-tableau simplex over Fractions.

Solves ``max c.x  s.t.  A x <= b, x >= 0`` exactly.  Rows with negative
right-hand side are handled by a phase-one problem on artificial
variables.  Bland's rule (lowest index enters, lowest basic index leaves on
ratio ties) guarantees termination without perturbation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from dpg.core import DpgError

ZERO = Fraction(0)
ONE = Fraction(1)


class InfeasibleError(DpgError):
    pass


class UnboundedError(DpgError):
    pass


@dataclass(frozen=True)
class LpSolution:
    x: tuple[Fraction, ...]
    objective: Fraction
    pivots: int


class _Tableau:
    # rows[r] = coefficients over all columns followed by the rhs
    def __init__(self, rows: list[list[Fraction]], basis: list[int]):
        self.rows = rows
        self.basis = basis
        self.pivots = 0

    def pivot(self, r: int, c: int) -> None:
        row = self.rows[r]
        p = row[c]
        if p != ONE:
            row[:] = [v / p for v in row]
        nz = [k for k, v in enumerate(row) if v]
        for rr, other in enumerate(self.rows):
            if rr == r:
                continue
            f = other[c]
            if f:
                for k in nz:
                    other[k] -= f * row[k]
        self.basis[r] = c
        self.pivots += 1

    def reduced_costs(self, cost: Sequence[Fraction], ncols: int) -> list[Fraction]:
        # cost_j - sum_r cost_{basis[r]} * a_{r, j}; positive entries improve
        red = list(cost[:ncols])
        for r, bj in enumerate(self.basis):
            cb = cost[bj]
            if cb:
                row = self.rows[r]
                for k in range(ncols):
                    if row[k]:
                        red[k] -= cb * row[k]
        return red

    def optimize(self, cost: Sequence[Fraction], allowed: int) -> None:
        """Maximize ``cost`` using only columns ``< allowed`` as entering columns."""
        while True:
            red = self.reduced_costs(cost, allowed)
            entering = next((k for k in range(allowed) if red[k] > 0), None)
            if entering is None:
                return
            leave, best = None, None
            for r, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    ratio = row[-1] / a
                    if (
                        best is None
                        or ratio < best
                        or (ratio == best and self.basis[r] < self.basis[leave])
                    ):
                        leave, best = r, ratio
            if leave is None:
                raise UnboundedError("objective is unbounded")
            self.pivot(leave, entering)


def maximize(
    c: Sequence[Fraction],
    A: Sequence[Sequence[Fraction]],
    b: Sequence[Fraction],
) -> LpSolution:
    """Exact optimum of ``max c.x`` subject to ``A x <= b`` and ``x >= 0``."""
    n = len(c)
    m = len(A)
    if len(b) != m:
        raise ValueError("A and b have different row counts")
    # columns: structural 0..n-1, slacks n..n+m-1, artificials after that
    negative = [r for r in range(m) if b[r] < 0]
    n_art = len(negative)
    width = n + m + n_art
    rows: list[list[Fraction]] = []
    basis: list[int] = []
    art_col = n + m
    for r in range(m):
        if len(A[r]) != n:
            raise ValueError(f"row {r} has {len(A[r])} coefficients, expected {n}")
        row = [Fraction(v) for v in A[r]] + [ZERO] * (m + n_art) + [Fraction(b[r])]
        row[n + r] = ONE
        if b[r] < 0:
            row = [-v for v in row]
            row[art_col] = ONE
            basis.append(art_col)
            art_col += 1
        else:
            basis.append(n + r)
        rows.append(row)
    tab = _Tableau(rows, basis)

    if n_art:
        phase1 = [ZERO] * (n + m) + [-ONE] * n_art
        tab.optimize(phase1, width)
        if any(tab.rows[r][-1] != 0 for r, bj in enumerate(tab.basis) if bj >= n + m):
            raise InfeasibleError("constraints have no feasible point")
        # drive zero-valued artificials out of the basis, dropping redundant rows
        r = 0
        while r < len(tab.rows):
            if tab.basis[r] >= n + m:
                col = next((k for k in range(n + m) if tab.rows[r][k]), None)
                if col is None:
                    del tab.rows[r]
                    del tab.basis[r]
                    continue
                tab.pivot(r, col)
            r += 1
        for row in tab.rows:
            del row[n + m : width]

    cost = [Fraction(v) for v in c] + [ZERO] * m
    tab.optimize(cost, n + m)
    x = [ZERO] * n
    for r, bj in enumerate(tab.basis):
        if bj < n:
            x[bj] = tab.rows[r][-1]
    objective = sum((cv * xv for cv, xv in zip(cost, x)), ZERO)
    return LpSolution(x=tuple(x), objective=objective, pivots=tab.pivots)
