"""A small exact linear-programming solver over the rationals.

Solves ``maximize c.x subject to A x <= b`` with free variables using a
two-phase tableau simplex and Bland's rule, so it always terminates.  All
arithmetic is in :class:`fractions.Fraction`; the systems handled here have a
handful of variables and a few dozen rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Optional[Fraction] = None
    x: Optional[tuple[Fraction, ...]] = None


def _pivot(rows: list[list[Fraction]], objectives: list[list[Fraction]], basis: list[int],
           row: int, col: int) -> None:
    prow = rows[row]
    piv = prow[col]
    prow = [v / piv for v in prow]
    rows[row] = prow
    for i, other in enumerate(rows):
        f = other[col]
        if i != row and f:
            rows[i] = [a - f * b for a, b in zip(other, prow)]
    for obj in objectives:
        f = obj[col]
        if f:
            obj[:] = [a - f * b for a, b in zip(obj, prow)]
    basis[row] = col


def _run(rows, objectives, basis, allowed: int) -> bool:
    """Optimize ``objectives[0]``; return False if unbounded."""
    obj = objectives[0]
    while True:
        col = next((j for j in range(allowed) if obj[j] < 0), None)
        if col is None:
            return True
        best = None
        for i, row in enumerate(rows):
            if row[col] > 0:
                ratio = row[-1] / row[col]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return False
        _pivot(rows, objectives, basis, best[1], col)


class Polyhedron:
    """``{x : A x <= b}`` with free ``x``, prepared for repeated optimization.

    Phase one runs once in the constructor; every later objective starts from
    the same feasible basis.
    """

    def __init__(self, A: Sequence[Sequence], b: Sequence) -> None:
        self.n = n = len(A[0]) if A else 0
        m = len(A)
        self.feasible = True
        self.rows: list[list[Fraction]] = []
        self.basis: list[int] = []
        negative = [i for i in range(m) if Fraction(b[i]) < 0]
        n_art = len(negative)
        width = 2 * n + m + n_art
        self.width = 2 * n + m
        art_of = {row: 2 * n + m + t for t, row in enumerate(negative)}
        rows, basis = [], []
        for i in range(m):
            a = [Fraction(v) for v in A[i]]
            row = a + [-v for v in a] + [Fraction(int(s == i)) for s in range(m)]
            row += [Fraction(0)] * n_art + [Fraction(b[i])]
            if i in art_of:
                row = [-v for v in row]
                row[art_of[i]] = Fraction(1)
                basis.append(art_of[i])
            else:
                basis.append(2 * n + i)
            rows.append(row)
        if n_art:
            phase1 = [Fraction(0)] * (width + 1)
            for i in negative:
                phase1 = [p - v for p, v in zip(phase1, rows[i])]
            for col in art_of.values():
                phase1[col] = Fraction(0)
            _run(rows, [phase1], basis, width)
            if phase1[-1] < 0:
                self.feasible = False
                return
            art_cols = set(art_of.values())
            for i in range(len(rows) - 1, -1, -1):
                if basis[i] in art_cols:
                    col = next((j for j in range(2 * n + m) if rows[i][j] != 0), None)
                    if col is None:
                        del rows[i]
                        del basis[i]
                    else:
                        _pivot(rows, [], basis, i, col)
            rows = [row[: 2 * n + m] + row[-1:] for row in rows]
        self.rows, self.basis = rows, basis

    def maximize(self, c: Sequence) -> LPResult:
        if not self.feasible:
            return LPResult(INFEASIBLE)
        n = self.n
        c = [Fraction(v) for v in c]
        if not self.rows:
            if any(c):
                return LPResult(UNBOUNDED)
            return LPResult(OPTIMAL, Fraction(0), tuple(Fraction(0) for _ in range(n)))
        rows = [list(row) for row in self.rows]
        basis = list(self.basis)
        obj = [-v for v in c] + list(c) + [Fraction(0)] * (self.width - 2 * n + 1)
        for i, col in enumerate(basis):
            f = obj[col]
            if f:
                obj = [a - f * b for a, b in zip(obj, rows[i])]
        if not _run(rows, [obj], basis, self.width):
            return LPResult(UNBOUNDED)
        values = [Fraction(0)] * self.width
        for i, col in enumerate(basis):
            values[col] = rows[i][-1]
        x = tuple(values[j] - values[n + j] for j in range(n))
        return LPResult(OPTIMAL, obj[-1], x)

    def minimize(self, c: Sequence) -> LPResult:
        res = self.maximize([-Fraction(v) for v in c])
        if res.status != OPTIMAL:
            return res
        return LPResult(OPTIMAL, -res.value, res.x)


def maximize(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    """Maximize ``c.x`` over ``{x : A x <= b}`` with ``x`` unrestricted in sign."""
    if not A:
        A = [[0] * len(c)]
        b = [0]
    return Polyhedron(A, b).maximize(c)


def minimize(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    if not A:
        A = [[0] * len(c)]
        b = [0]
    return Polyhedron(A, b).minimize(c)
