"""Exact feasibility of ``A x = b, x >= 0`` over the rationals.

Phase-one simplex on a dense ``Fraction`` tableau with Bland's rule, which
cannot cycle, so the answer is exact and the search always terminates.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def feasible_point(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list[Fraction] | None:
    """A basic feasible solution of ``A x = b, x >= 0``, or ``None`` if none exists."""
    m = len(A)
    n = len(A[0]) if m else 0
    rows = []
    rhs = []
    for i in range(m):
        row = [Fraction(a) for a in A[i]]
        bi = Fraction(b[i])
        if bi < 0:
            row = [-a for a in row]
            bi = -bi
        rows.append(row + [Fraction(int(j == i)) for j in range(m)])
        rhs.append(bi)
    basis = [n + i for i in range(m)]
    width = n + m
    # reduced costs of the phase-one objective: minimize the sum of artificials
    cost = [Fraction(0)] * width
    for i in range(m):
        for j in range(n):
            cost[j] -= rows[i][j]

    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = rows[i][enter]
            if a > 0:
                ratio = rhs[i] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            # cannot happen for a phase-one problem, which is bounded below by 0
            raise ArithmeticError("unbounded phase-one problem")
        _pivot(rows, rhs, cost, leave, enter)
        basis[leave] = enter

    if any(rhs[i] != 0 for i in range(m) if basis[i] >= n):
        return None
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = rhs[i]
    return x


def _pivot(rows, rhs, cost, r, c) -> None:
    piv = rows[r][c]
    row = rows[r] = [a / piv for a in rows[r]]
    rhs[r] = rhs[r] / piv
    for i in range(len(rows)):
        if i != r:
            f = rows[i][c]
            if f:
                rows[i] = [a - f * p for a, p in zip(rows[i], row)]
                rhs[i] -= f * rhs[r]
    f = cost[c]
    if f:
        for j in range(len(cost)):
            cost[j] -= f * row[j]
