"""Exact two-phase simplex for small linear programs.

Solves  max c.x  subject to  A x <= b, x >= 0  over the rationals.
Rows are kept as integer lists (inputs are cleared of denominators and
each row is renormalized by its gcd after each pivot), so pivoting is pure
integer arithmetic; values are recovered as exact Fractions at the end.
Bland's smallest-index rule is used for both the entering and the leaving
variable, which rules out cycling.  Problem sizes here are tiny (tens of
rows), so no effort is spent on sparsity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    objective: Optional[Fraction]
    x: Optional[tuple[Fraction, ...]]


def _int_row(coeffs: Sequence, rhs) -> list[int]:
    fracs = [Fraction(v) for v in coeffs] + [Fraction(rhs)]
    scale = 1
    for f in fracs:
        scale = lcm(scale, f.denominator)
    return [int(f * scale) for f in fracs]


def _normalize(row: list[int]) -> list[int]:
    g = 0
    for v in row:
        g = gcd(g, abs(v))
    if g > 1:
        return [v // g for v in row]
    return row


class _Tableau:
    def __init__(self, rows: list[list[int]], basis: list[int], ncols: int):
        self.rows = rows
        self.basis = basis
        self.ncols = ncols  # number of variable columns (rhs is appended last)

    def pivot(self, pr: int, pc: int) -> None:
        piv_row = self.rows[pr]
        piv = piv_row[pc]
        assert piv > 0
        for i, row in enumerate(self.rows):
            if i == pr:
                continue
            coef = row[pc]
            if coef:
                self.rows[i] = _normalize(
                    [a * piv - coef * p for a, p in zip(row, piv_row)]
                )
        self.rows[pr] = _normalize(piv_row)
        self.basis[pr] = pc

    def value_of(self, col: int) -> Fraction:
        for i, b in enumerate(self.basis):
            if b == col:
                return Fraction(self.rows[i][-1], self.rows[i][col])
        return Fraction(0)

    def run(self, obj: list[int], allowed: Sequence[bool]) -> tuple[str, list[int]]:
        """Simplex iterations on the current basis for the given objective row.

        `obj` is in "minimize form": entering candidates are columns with a
        negative entry.  Returns the final objective row for inspection.
        """
        while True:
            entering = None
            for j in range(self.ncols):
                if allowed[j] and obj[j] < 0:
                    entering = j
                    break
            if entering is None:
                return OPTIMAL, obj
            leaving = None
            best_num = best_den = None  # ratio rhs/coef as num/den
            for i, row in enumerate(self.rows):
                coef = row[entering]
                if coef <= 0:
                    continue
                num, den = row[-1], coef
                if leaving is None:
                    better = True
                elif num * best_den != best_num * den:
                    better = num * best_den < best_num * den
                else:
                    better = self.basis[i] < self.basis[leaving]
                if better:
                    leaving, best_num, best_den = i, num, den
            if leaving is None:
                return UNBOUNDED, obj
            piv_row = self.rows[leaving]
            piv = piv_row[entering]
            coef = obj[entering]
            obj[:] = _normalize([a * piv - coef * p for a, p in zip(obj, piv_row)])
            self.pivot(leaving, entering)


def solve_lp(
    objective: Sequence, rows: Sequence[Sequence], rhs: Sequence
) -> LPResult:
    """Maximize objective . x subject to rows[i] . x <= rhs[i], x >= 0."""
    m = len(rows)
    n = len(objective)
    int_rows = [_int_row(row, r) for row, r in zip(rows, rhs)]

    nart = sum(1 for r in int_rows if r[-1] < 0)
    ncols = n + m + nart
    tab_rows: list[list[int]] = []
    basis: list[int] = []
    art_cols: list[int] = []
    next_art = n + m
    for i, row in enumerate(int_rows):
        body, b = row[:-1], row[-1]
        if b < 0:
            body = [-v for v in body]
            b = -b
            slack = -1
        else:
            slack = 1
        full = body + [0] * m + [0] * nart + [b]
        full[n + i] = slack
        if slack == -1:
            full[next_art] = 1
            basis.append(next_art)
            art_cols.append(next_art)
            next_art += 1
        else:
            basis.append(n + i)
        # move rhs to the end (it already is)
        tab_rows.append(_normalize(full))

    tab = _Tableau(tab_rows, basis, ncols)
    allowed_all = [True] * ncols

    if art_cols:
        # phase 1: minimize the sum of artificials
        obj = [0] * (ncols + 1)
        for c in art_cols:
            obj[c] = 1
        for i, b in enumerate(tab.basis):
            if b in art_cols:
                piv = tab.rows[i][b]
                coef = obj[b]
                obj = _normalize([a * piv - coef * p for a, p in zip(obj, tab.rows[i])])
        status, obj = tab.run(obj, allowed_all)
        assert status == OPTIMAL  # phase 1 is bounded below by 0
        if any(tab.value_of(c) != 0 for c in art_cols):
            return LPResult(INFEASIBLE, None, None)
        # drive zero-level artificials out of the basis where possible
        for i, b in enumerate(list(tab.basis)):
            if b in art_cols:
                pivot_col = next(
                    (
                        j
                        for j in range(n + m)
                        if tab.rows[i][j] != 0
                    ),
                    None,
                )
                if pivot_col is not None:
                    if tab.rows[i][pivot_col] < 0:
                        tab.rows[i] = [-v for v in tab.rows[i]]
                    tab.pivot(i, pivot_col)

    art_set = set(art_cols)
    allowed = [j not in art_set for j in range(ncols)]

    obj = [0] * (ncols + 1)
    scale = 1
    for v in objective:
        scale = lcm(scale, Fraction(v).denominator)
    for j, v in enumerate(objective):
        obj[j] = -int(Fraction(v) * scale)  # minimize form of a max objective
    for i, b in enumerate(tab.basis):
        if b < ncols and obj[b] != 0:
            piv = tab.rows[i][b]
            coef = obj[b]
            obj = _normalize([a * piv - coef * p for a, p in zip(obj, tab.rows[i])])
    status, obj = tab.run(obj, allowed)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED, None, None)

    x = tuple(tab.value_of(j) for j in range(n))
    value = sum((Fraction(c) * xj for c, xj in zip(objective, x)), Fraction(0))
    return LPResult(OPTIMAL, value, x)
