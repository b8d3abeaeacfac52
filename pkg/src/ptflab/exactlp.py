"""Exact rational linear programming over systems ``A q >= r`` with ``q`` free.

The solver is a two-phase primal simplex with Bland's rule.  The tableau is
kept fraction-free: each row is a list of Python ints reduced by its gcd after
every pivot, which is far cheaper than ``Fraction`` arithmetic per entry.

Every result carries a certificate that is re-checked exactly before it is
returned: a witness for feasible/optimal programs, a Farkas vector
``y >= 0, y^T A = 0, y^T r > 0`` for infeasible ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

DEFAULT_PIVOT_CEILING = 50_000


class DimensionError(ValueError):
    pass


class PivotCeilingExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class LinearProgram:
    """Constraints ``A q >= r`` over free ``q``; optional objective ``min c.q``."""

    A: tuple[tuple[Fraction, ...], ...]
    r: tuple[Fraction, ...]
    c: tuple[Fraction, ...] | None = None

    @classmethod
    def build(cls, A, r, c=None) -> "LinearProgram":
        A = tuple(tuple(Fraction(v) for v in row) for row in A)
        r = tuple(Fraction(v) for v in r)
        if c is not None:
            c = tuple(Fraction(v) for v in c)
        lp = cls(A, r, c)
        lp.validate()
        return lp

    @property
    def rows(self) -> int:
        return len(self.A)

    @property
    def cols(self) -> int:
        return len(self.A[0]) if self.A else 0

    def validate(self) -> None:
        m = len(self.A)
        if m < 1:
            raise DimensionError("need at least one constraint")
        d = len(self.A[0])
        if d < 1:
            raise DimensionError("need at least one variable")
        if any(len(row) != d for row in self.A):
            raise DimensionError("constraint rows have different lengths")
        if len(self.r) != m:
            raise DimensionError(f"right-hand side has {len(self.r)} entries, expected {m}")
        if self.c is not None and len(self.c) != d:
            raise DimensionError(f"objective has {len(self.c)} entries, expected {d}")

    def satisfied_by(self, q: Sequence[Fraction]) -> bool:
        return all(
            sum((a * x for a, x in zip(row, q)), Fraction(0)) >= rhs
            for row, rhs in zip(self.A, self.r)
        )

    def is_farkas(self, y: Sequence[Fraction]) -> bool:
        if len(y) != self.rows or any(v < 0 for v in y):
            return False
        for k in range(self.cols):
            if sum((yj * row[k] for yj, row in zip(y, self.A)), Fraction(0)) != 0:
                return False
        return sum((yj * rj for yj, rj in zip(y, self.r)), Fraction(0)) > 0


@dataclass(frozen=True)
class Feasible:
    witness: tuple[Fraction, ...]
    pivots: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Infeasible:
    certificate: tuple[Fraction, ...]
    pivots: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Optimal:
    value: Fraction
    witness: tuple[Fraction, ...]
    pivots: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Unbounded:
    pivots: int = field(default=0, compare=False)


LPOutcome = Union[Feasible, Infeasible, Optimal, Unbounded]


def _integer_row(values: Sequence[Fraction]) -> list[int]:
    den = math.lcm(*(v.denominator for v in values))
    return [int(v * den) for v in values]


def _reduce(row: list[int]) -> list[int]:
    g = math.gcd(*row)
    if g > 1:
        return [v // g for v in row]
    return row


class _Tableau:
    """Fraction-free simplex tableau.

    Column layout: ``q_0..q_{d-1}`` (free), ``s_0..s_{m-1}`` (slacks, >= 0),
    ``x0`` (phase-1 auxiliary, >= 0).  The last entry of each row is the
    right-hand side.  Row ``i`` has basic column ``basis[i]`` whose
    coefficient is positive; every other row is zero in that column.
    """

    def __init__(self, lp: LinearProgram, ceiling: int):
        self.lp = lp
        self.d = d = lp.cols
        self.m = m = lp.rows
        self.x0 = d + m
        self.ncols = d + m + 1
        self.ceiling = ceiling
        self.pivots = 0
        self.rows: list[list[int]] = []
        self.basis: list[int] = []
        for j, (arow, rj) in enumerate(zip(lp.A, lp.r)):
            # -A_j q + s_j = -r_j
            scale = math.lcm(*(v.denominator for v in list(arow) + [rj]))
            row = [-int(v * scale) for v in arow] + [0] * (m + 1) + [-int(rj * scale)]
            row[d + j] = scale
            self.rows.append(_reduce(row))
            self.basis.append(d + j)
        self.dead: set[int] = set()
        self.banned: set[int] = {self.x0}
        self.zrow: list[int] | None = None
        self.zcoef = 1

    def is_free(self, col: int) -> bool:
        return col < self.d

    def pivot(self, r: int, c: int) -> None:
        self.pivots += 1
        if self.pivots > self.ceiling:
            raise PivotCeilingExceeded(f"simplex exceeded {self.ceiling} pivots")
        prow = self.rows[r]
        if prow[c] < 0:
            prow = [-v for v in prow]
        prow = _reduce(prow)
        self.rows[r] = prow
        p = prow[c]
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            a = row[c]
            if a:
                self.rows[i] = _reduce([p * x - a * y for x, y in zip(row, prow)])
        if self.zrow is not None:
            a = self.zrow[c]
            if a:
                z = [p * x - a * y for x, y in zip(self.zrow, prow)]
                zc = self.zcoef * p
                g = math.gcd(zc, *z)
                self.zrow = [v // g for v in z]
                self.zcoef = zc // g
        self.basis[r] = c

    def value(self, i: int) -> Fraction:
        row = self.rows[i]
        return Fraction(row[-1], row[self.basis[i]])

    def set_objective(self, coeffs: Sequence[Fraction]) -> None:
        """Install ``minimize coeffs . x`` (full column vector) and price out the basis."""
        ints = _integer_row(list(coeffs) + [Fraction(1)])
        zc = ints[-1]
        # zc * z - sum c_j x_j = 0
        self.zrow = [-v for v in ints[:-1]] + [0]
        self.zcoef = zc
        for i, b in enumerate(self.basis):
            a = self.zrow[b]
            if a:
                row = self.rows[i]
                p = row[b]
                z = [p * x - a * y for x, y in zip(self.zrow, row)]
                zc = self.zcoef * p
                g = math.gcd(zc, *z)
                self.zrow = [v // g for v in z]
                self.zcoef = zc // g

    def objective_value(self) -> Fraction:
        return Fraction(self.zrow[-1], self.zcoef)

    def eliminate_free(self) -> None:
        for k in range(self.d):
            for i, b in enumerate(self.basis):
                if not self.is_free(b) and self.rows[i][k] != 0:
                    self.pivot(i, k)
                    break
            else:
                self.dead.add(k)

    def entering(self) -> int | None:
        basic = set(self.basis)
        for j in range(self.d, self.ncols):
            if j in basic or j in self.banned:
                continue
            if self.zrow[j] > 0:
                return j
        return None

    def leaving(self, c: int) -> int | None:
        best = None
        best_num = best_den = 0
        for i, row in enumerate(self.rows):
            b = self.basis[i]
            a = row[c]
            if self.is_free(b) or a <= 0:
                continue
            # ratio rhs/a; rows are scaled so compare by cross-multiplication
            num, den = row[-1], a
            if best is None:
                better = True
            else:
                lhs, rhs = num * best_den, best_num * den
                better = lhs < rhs or (lhs == rhs and b < self.basis[best])
            if better:
                best, best_num, best_den = i, num, den
        return best

    def run(self) -> bool:
        """Bland-rule minimization of the installed objective; False if unbounded."""
        while True:
            c = self.entering()
            if c is None:
                return True
            r = self.leaving(c)
            if r is None:
                return False
            self.pivot(r, c)

    def phase_one(self) -> tuple[bool, tuple[Fraction, ...] | None]:
        """Drive the slacks nonnegative.  Returns (feasible, farkas certificate)."""
        negative = [
            i for i, b in enumerate(self.basis) if not self.is_free(b) and self.rows[i][-1] < 0
        ]
        if not negative:
            return True, None
        # x0 enters every slack row with coefficient -(basic coefficient),
        # i.e. s_b = value + x0 in dictionary form
        for i, b in enumerate(self.basis):
            if not self.is_free(b):
                self.rows[i][self.x0] = -self.rows[i][b]
        self.banned.discard(self.x0)
        objective = [Fraction(0)] * self.ncols
        objective[self.x0] = Fraction(1)
        self.set_objective(objective)
        start = min(negative, key=lambda i: (self.value(i), self.basis[i]))
        self.pivot(start, self.x0)
        self.run()
        if self.objective_value() > 0:
            basic = set(self.basis)
            y = []
            for j in range(self.m):
                col = self.d + j
                y.append(Fraction(0) if col in basic else Fraction(-self.zrow[col], self.zcoef))
            return False, tuple(y)
        self._retire_aux()
        return True, None

    def _retire_aux(self) -> None:
        self.banned.add(self.x0)
        if self.x0 in self.basis:
            r = self.basis.index(self.x0)
            row = self.rows[r]
            basic = set(self.basis)
            for j in range(self.d, self.d + self.m):
                if j not in basic and row[j] != 0:
                    self.pivot(r, j)
                    break
        # x0 is now nonbasic at 0, or basic in a row that pins it to 0
        self.zrow = None
        self.zcoef = 1

    def witness(self) -> tuple[Fraction, ...]:
        q = [Fraction(0)] * self.d
        for i, b in enumerate(self.basis):
            if self.is_free(b):
                q[b] = self.value(i)
        return tuple(q)


def _normalize_certificate(y: Sequence[Fraction]) -> tuple[Fraction, ...]:
    den = math.lcm(*(v.denominator for v in y))
    ints = [int(v * den) for v in y]
    g = math.gcd(*ints) or 1
    return tuple(Fraction(v // g) for v in ints)


def solve_feasibility(lp: LinearProgram, pivot_ceiling: int = DEFAULT_PIVOT_CEILING) -> LPOutcome:
    """Feasible(witness) or Infeasible(Farkas certificate) for ``A q >= r``."""
    lp.validate()
    tab = _Tableau(lp, pivot_ceiling)
    tab.eliminate_free()
    ok, cert = tab.phase_one()
    if not ok:
        y = _normalize_certificate(cert)
        if not lp.is_farkas(y):
            raise AssertionError("phase one produced an invalid Farkas certificate")
        return Infeasible(y, tab.pivots)
    q = tab.witness()
    if not lp.satisfied_by(q):
        raise AssertionError("phase one produced a witness violating a constraint")
    return Feasible(q, tab.pivots)


def solve_min(lp: LinearProgram, pivot_ceiling: int = DEFAULT_PIVOT_CEILING) -> LPOutcome:
    """Minimize ``c.q`` subject to ``A q >= r``."""
    lp.validate()
    if lp.c is None:
        raise DimensionError("solve_min needs an objective")
    tab = _Tableau(lp, pivot_ceiling)
    tab.eliminate_free()
    ok, cert = tab.phase_one()
    if not ok:
        y = _normalize_certificate(cert)
        if not lp.is_farkas(y):
            raise AssertionError("phase one produced an invalid Farkas certificate")
        return Infeasible(y, tab.pivots)
    objective = list(lp.c) + [Fraction(0)] * (lp.rows + 1)
    tab.set_objective(objective)
    # a free column untouched by every slack row moves the objective at no cost
    if any(tab.zrow[k] != 0 for k in tab.dead):
        return Unbounded(tab.pivots)
    if not tab.run():
        return Unbounded(tab.pivots)
    q = tab.witness()
    if not lp.satisfied_by(q):
        raise AssertionError("phase two produced a witness violating a constraint")
    value = sum((ck * qk for ck, qk in zip(lp.c, q)), Fraction(0))
    if value != tab.objective_value():
        raise AssertionError("objective row disagrees with the witness")
    return Optimal(value, q, tab.pivots)
