"""Exact rational linear programming via two-phase primal simplex.

The tableau is kept as arbitrary-precision integers together with one
positive denominator (fraction-free Gauss-Jordan pivoting), so every
intermediate and final value is exact. Bland's rule picks entering and
leaving variables, which rules out cycling. Every exact division is
checked; a nonzero remainder would mean the tableau invariant broke, and
raises instead of silently corrupting results.

Supported forms:
    solve_min_ge: minimize c.x  subject to  A x >= b, x >= 0
    solve_max_le: maximize c.x  subject to  A x <= b, x >= 0  (b >= 0,
        so that x = 0 is a feasible start for the single-phase solve)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence


class LPInfeasibleError(RuntimeError):
    pass


class LPUnboundedError(RuntimeError):
    pass


@dataclass(frozen=True)
class LPSolution:
    value: Fraction
    x: tuple[Fraction, ...]


def _as_fractions(values: Sequence) -> list[Fraction]:
    return [Fraction(v) for v in values]


def _exact_div(num: int, den: int) -> int:
    q, rem = divmod(num, den)
    if rem:
        raise ArithmeticError("fraction-free pivot produced a non-integer entry")
    return q


def _pivot(tableau: list[list[int]], den: int, r: int, c: int) -> int:
    """Gauss-Jordan pivot at (r, c); returns the new common denominator."""
    piv = tableau[r][c]
    if piv <= 0:
        raise ArithmeticError("pivot element must be positive")
    row_r = tableau[r]
    for i, row in enumerate(tableau):
        if i == r:
            continue
        f = row[c]
        if den == 1:
            tableau[i] = [v * piv - f * w for v, w in zip(row, row_r)]
        else:
            tableau[i] = [_exact_div(v * piv - f * w, den) for v, w in zip(row, row_r)]
    return piv


def _pivot_until_optimal(
    tableau: list[list[int]],
    den: int,
    basis: list[int],
    allowed: range,
) -> int:
    """Run Bland-rule pivots until no allowed column improves the objective.

    Row 0 of the tableau is the (scaled) reduced-cost row of a minimization
    problem; constraint rows follow, with basis[i] naming the basic variable
    of row i+1.
    """
    while True:
        enter = -1
        for j in allowed:
            if tableau[0][j] < 0:
                enter = j
                break
        if enter < 0:
            return den
        leave = -1
        for i in range(1, len(tableau)):
            a = tableau[i][enter]
            if a <= 0:
                continue
            if leave < 0:
                leave = i
                continue
            lhs = tableau[i][-1] * tableau[leave][enter]
            rhs = tableau[leave][-1] * a
            if lhs < rhs or (lhs == rhs and basis[i - 1] < basis[leave - 1]):
                leave = i
        if leave < 0:
            raise LPUnboundedError("objective is unbounded")
        den = _pivot(tableau, den, leave, enter)
        basis[leave - 1] = enter


def _scaled_constraint_rows(
    a_rows: list[list[Fraction]], b: list[Fraction]
) -> list[list[int]]:
    rows = []
    for coeffs, rhs in zip(a_rows, b):
        scale = lcm(rhs.denominator, *(v.denominator for v in coeffs)) if coeffs else rhs.denominator
        rows.append([int(v * scale) for v in coeffs] + [int(rhs * scale)])
    return rows


def _extract(
    c: list[Fraction], basis: list[int], tableau: list[list[int]], den: int, n: int
) -> LPSolution:
    x = [Fraction(0)] * n
    for row, var in enumerate(basis, start=1):
        if var < n:
            x[var] = Fraction(tableau[row][-1], den)
    value = sum((cj * xj for cj, xj in zip(c, x)), Fraction(0))
    return LPSolution(value, tuple(x))


def solve_min_ge(c: Sequence, a_matrix: Sequence[Sequence], b: Sequence) -> LPSolution:
    """Minimize c.x subject to A x >= b, x >= 0."""
    cf = _as_fractions(c)
    bf = _as_fractions(b)
    rows = [_as_fractions(row) for row in a_matrix]
    n, m = len(cf), len(rows)
    if len(bf) != m or any(len(row) != n for row in rows):
        raise ValueError("inconsistent LP dimensions")
    if m == 0:
        return LPSolution(Fraction(0), tuple(Fraction(0) for _ in range(n)))

    # Columns: n structural, m row variables, m artificial, rhs. A row with
    # nonnegative rhs keeps its sense, gets a surplus variable, and starts
    # from its artificial; a row with negative rhs is negated into <= form,
    # whose slack variable is feasible at the start and needs no artificial.
    scaled = _scaled_constraint_rows(rows, bf)
    width = n + 2 * m + 1
    tableau: list[list[int]] = [[0] * width]
    basis = []
    for i, srow in enumerate(scaled):
        if srow[-1] < 0:
            row = [-v for v in srow[:-1]] + [0] * (2 * m) + [-srow[-1]]
            row[n + i] = 1
            basis.append(n + i)
        else:
            row = srow[:-1] + [0] * (2 * m) + [srow[-1]]
            row[n + i] = -1
            row[n + m + i] = 1
            basis.append(n + m + i)
        tableau.append(row)

    # Phase 1: minimize the sum of artificials, whose reduced costs under
    # the starting basis are the negated sums over artificial-basic rows.
    art_rows = [i + 1 for i in range(m) if basis[i] >= n + m]
    den = 1
    if art_rows:
        for j in range(n + m):
            tableau[0][j] = -sum(tableau[i][j] for i in art_rows)
        tableau[0][-1] = -sum(tableau[i][-1] for i in art_rows)
        den = _pivot_until_optimal(tableau, 1, basis, range(n + m))

    if any(tableau[r + 1][-1] != 0 for r in range(m) if basis[r] >= n + m):
        raise LPInfeasibleError("constraints have no nonnegative solution")

    # Drive leftover zero-level artificials out of the basis; rows with no
    # structural support are redundant and dropped.
    drop = []
    for r in range(m):
        if basis[r] < n + m:
            continue
        pivot_col = next((j for j in range(n + m) if tableau[r + 1][j] != 0), -1)
        if pivot_col < 0:
            drop.append(r)
            continue
        if tableau[r + 1][pivot_col] < 0:
            tableau[r + 1] = [-v for v in tableau[r + 1]]
        den = _pivot(tableau, den, r + 1, pivot_col)
        basis[r] = pivot_col
    for r in reversed(drop):
        del tableau[r + 1]
        del basis[r]

    # Phase 2: true objective, artificial columns barred from entering.
    lc = lcm(*(v.denominator for v in cf)) if cf else 1
    cost = [int(v * lc) for v in cf] + [0] * (2 * m)
    for j in range(width - 1):
        tableau[0][j] = den * cost[j] - sum(
            cost[basis[i]] * tableau[i + 1][j] for i in range(len(basis))
        )
    tableau[0][-1] = -sum(cost[basis[i]] * tableau[i + 1][-1] for i in range(len(basis)))
    den = _pivot_until_optimal(tableau, den, basis, range(n + m))
    return _extract(cf, basis, tableau, den, n)


def solve_max_le(c: Sequence, a_matrix: Sequence[Sequence], b: Sequence) -> LPSolution:
    """Maximize c.x subject to A x <= b, x >= 0, with b >= 0 entrywise."""
    cf = _as_fractions(c)
    bf = _as_fractions(b)
    rows = [_as_fractions(row) for row in a_matrix]
    n, m = len(cf), len(rows)
    if len(bf) != m or any(len(row) != n for row in rows):
        raise ValueError("inconsistent LP dimensions")
    if any(v < 0 for v in bf):
        raise ValueError("rhs must be nonnegative")
    if m == 0:
        # Any positive objective coefficient would be unbounded.
        if any(v > 0 for v in cf):
            raise LPUnboundedError("objective is unbounded")
        return LPSolution(Fraction(0), tuple(Fraction(0) for _ in range(n)))

    scaled = _scaled_constraint_rows(rows, bf)
    lc = lcm(*(v.denominator for v in cf)) if cf else 1
    cost = [-int(v * lc) for v in cf] + [0] * m
    tableau: list[list[int]] = [cost + [0]]
    for i, srow in enumerate(scaled):
        row = srow[:-1] + [0] * m + [srow[-1]]
        row[n + i] = 1
        tableau.append(row)
    basis = list(range(n, n + m))
    den = _pivot_until_optimal(tableau, 1, basis, range(n + m))
    return _extract(cf, basis, tableau, den, n)
