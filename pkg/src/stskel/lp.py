"""Exact rational linear programming.

Two-phase primal simplex over an integer tableau. Every tableau row holds
Python integers and stands for some positive multiple of the true row, so
pivoting needs no division beyond a gcd reduction and no floating point is
ever involved.

Pivot rule: Dantzig's most-negative reduced cost, falling back to Bland's
smallest-index rule after ``DEGENERATE_STREAK`` consecutive degenerate
pivots and staying on Bland until the objective strictly improves. Leaving
rows are always chosen by minimum ratio, ties broken by the smallest basic
column index. The fallback makes cycling impossible, and the whole procedure
is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from numbers import Rational
from typing import Optional, Sequence

Row = Sequence[Rational]

DEGENERATE_STREAK = 8


@dataclass
class LPProblem:
    """min objective.x subject to

    equalities    row.x == rhs
    inequalities  row.x <= rhs
    lower_bounds[j] <= x_j <= upper_bounds[j]   (None = unbounded side)

    Missing ``lower_bounds`` means every variable is free below.
    """

    num_vars: int
    equalities: list[tuple[Row, Rational]] = field(default_factory=list)
    inequalities: list[tuple[Row, Rational]] = field(default_factory=list)
    lower_bounds: Optional[list[Optional[Rational]]] = None
    upper_bounds: Optional[list[Optional[Rational]]] = None
    objective: Optional[Row] = None

    def __post_init__(self):
        for kind, rows in (("equality", self.equalities), ("inequality", self.inequalities)):
            for row, _ in rows:
                if len(row) != self.num_vars:
                    raise ValueError(
                        f"{kind} row of length {len(row)}, expected {self.num_vars}")
        for name in ("lower_bounds", "upper_bounds"):
            b = getattr(self, name)
            if b is not None and len(b) != self.num_vars:
                raise ValueError(f"{name} has length {len(b)}, expected {self.num_vars}")
        if self.objective is not None and len(self.objective) != self.num_vars:
            raise ValueError("objective length does not match num_vars")

    def bounds(self, j: int) -> tuple[Optional[Rational], Optional[Rational]]:
        lo = None if self.lower_bounds is None else self.lower_bounds[j]
        hi = None if self.upper_bounds is None else self.upper_bounds[j]
        return lo, hi

    def violations(self, point: Sequence[Rational]) -> list[str]:
        """Constraints not satisfied exactly by ``point`` (empty when feasible)."""
        bad = []
        for r, (row, rhs) in enumerate(self.equalities):
            if sum(Fraction(a) * x for a, x in zip(row, point) if a) != rhs:
                bad.append(f"equality {r}")
        for r, (row, rhs) in enumerate(self.inequalities):
            if sum(Fraction(a) * x for a, x in zip(row, point) if a) > rhs:
                bad.append(f"inequality {r}")
        for j, x in enumerate(point):
            lo, hi = self.bounds(j)
            if lo is not None and x < lo:
                bad.append(f"lower bound {j}")
            if hi is not None and x > hi:
                bad.append(f"upper bound {j}")
        return bad


@dataclass(frozen=True)
class Feasible:
    point: tuple[Fraction, ...]


@dataclass(frozen=True)
class Infeasible:
    pass


@dataclass(frozen=True)
class Optimal:
    value: Fraction
    point: tuple[Fraction, ...]


@dataclass(frozen=True)
class Unbounded:
    pass


FeasibilityResult = Feasible | Infeasible
OptResult = Optimal | Infeasible | Unbounded


class _Infeasible(Exception):
    pass


def feasible(p: LPProblem) -> FeasibilityResult:
    """Decide whether ``p`` has a feasible point; the witness is exact."""
    try:
        sf = _StandardForm(p)
    except _Infeasible:
        return Infeasible()
    tab = sf.phase_one()
    if tab is None:
        return Infeasible()
    return Feasible(sf.recover(tab))


def optimize(p: LPProblem) -> OptResult:
    """Minimize ``p.objective`` exactly."""
    if p.objective is None:
        raise ValueError("optimize needs an objective")
    try:
        sf = _StandardForm(p)
    except _Infeasible:
        return Infeasible()
    tab = sf.phase_one()
    if tab is None:
        return Infeasible()
    if not tab.phase_two(sf.cost):
        return Unbounded()
    point = sf.recover(tab)
    value = sum((Fraction(c) * x for c, x in zip(p.objective, point) if c), Fraction(0))
    return Optimal(value, point)


# ---------------------------------------------------------------------------
# standard form: A x = b, x >= 0, b >= 0, integer data
# ---------------------------------------------------------------------------

def _int_row(coeffs: Sequence[Rational], rhs: Rational) -> tuple[list[int], int]:
    m = 1
    for q in coeffs:
        if q.denominator != 1:
            m = lcm(m, q.denominator)
    if rhs.denominator != 1:
        m = lcm(m, rhs.denominator)
    if m == 1:
        return [int(q) for q in coeffs], int(rhs)
    return [int(q * m) for q in coeffs], int(rhs * m)


def _normalized(row: list[int]) -> list[int]:
    g = gcd(*row)
    if g > 1:
        return [a // g for a in row]
    return row


class _StandardForm:
    def __init__(self, p: LPProblem):
        self.p = p
        # original var j -> (offset, [(column, sign), ...])
        self.var_map: list[tuple[Fraction, list[tuple[int, int]]]] = []
        ncols = 0
        extra_rows: list[tuple[dict[int, int], Fraction]] = []
        for j in range(p.num_vars):
            lo, hi = p.bounds(j)
            lo = None if lo is None else Fraction(lo)
            hi = None if hi is None else Fraction(hi)
            if lo is not None:
                if hi is not None:
                    if hi < lo:
                        raise _Infeasible
                    extra_rows.append(({ncols: 1}, hi - lo))
                self.var_map.append((lo, [(ncols, 1)]))
                ncols += 1
            elif hi is not None:
                self.var_map.append((hi, [(ncols, -1)]))
                ncols += 1
            else:
                self.var_map.append((Fraction(0), [(ncols, 1), (ncols + 1, -1)]))
                ncols += 2
        self.num_struct = ncols

        def substitute(row: Row, rhs: Rational) -> tuple[list[Rational], Rational]:
            # integer data stays integer; Fractions only appear when given
            out: list[Rational] = [0] * ncols
            b = rhs
            for j, a in enumerate(row):
                if not a:
                    continue
                off, cols = self.var_map[j]
                if off:
                    b -= a * off
                for c, s in cols:
                    out[c] += a if s == 1 else -a
            return out, b

        eq_rows: list[tuple[list[int], int]] = []
        seen: set[tuple[int, ...]] = set()
        for row, rhs in p.equalities:
            coeffs, b = substitute(row, rhs)
            ints, bi = _int_row(coeffs, b)
            lead = next((a for a in ints if a), 0)
            if bi < 0 or (bi == 0 and lead < 0):
                ints, bi = [-a for a in ints], -bi
            key = tuple(_normalized(ints + [bi]))
            if not any(ints):
                if bi != 0:
                    raise _Infeasible
                continue
            # duplicate rows are dropped; a row and its negation coincide after the sign flip
            if key in seen:
                continue
            seen.add(key)
            eq_rows.append((ints, bi))

        le_rows: list[tuple[list[int], int]] = []
        for row, rhs in p.inequalities:
            coeffs, b = substitute(row, rhs)
            le_rows.append(_int_row(coeffs, b))
        for sparse, b in extra_rows:
            coeffs: list[Rational] = [0] * ncols
            for c, v in sparse.items():
                coeffs[c] = v
            le_rows.append(_int_row(coeffs, b))

        # slack columns, then artificial columns
        nslack = len(le_rows)
        self.num_cols = ncols + nslack
        rows: list[list[int]] = []
        basis: list[int] = []
        needs_art: list[int] = []
        for ints, bi in eq_rows:
            rows.append(ints + [0] * nslack + [bi])
            basis.append(-1)
            needs_art.append(len(rows) - 1)
        for s, (ints, bi) in enumerate(le_rows):
            slack = [0] * nslack
            slack[s] = 1
            if bi >= 0:
                rows.append(ints + slack + [bi])
                basis.append(ncols + s)
            else:
                slack[s] = -1
                rows.append([-a for a in ints] + slack + [-bi])
                basis.append(-1)
                needs_art.append(len(rows) - 1)
        nart = len(needs_art)
        self.first_art = self.num_cols
        for r, row in enumerate(rows):
            art = [0] * nart
            row[-1:-1] = art
        for a, r in enumerate(needs_art):
            rows[r][self.first_art + a] = 1
            basis[r] = self.first_art + a
        self.rows = rows
        self.basis = basis
        self.nart = nart

        cost = [Fraction(0)] * self.num_cols
        if p.objective is not None:
            for j, a in enumerate(p.objective):
                if a:
                    for c, s in self.var_map[j][1]:
                        cost[c] += s * Fraction(a)
        self.cost = cost

    def phase_one(self) -> Optional[_Tableau]:
        total = self.num_cols + self.nart
        tab = _Tableau(self.rows, self.basis, total)
        if self.nart:
            c = [0] * self.num_cols + [1] * self.nart
            tab.set_objective(c)
            tab.run()
            for r, b in enumerate(tab.basis):
                if b >= self.first_art and tab.rows[r][-1] != 0:
                    return None
            tab.drive_out(self.first_art)
        tab.drop_columns(self.first_art)
        return tab

    def recover(self, tab: _Tableau) -> tuple[Fraction, ...]:
        vals = [Fraction(0)] * self.num_cols
        for r, b in enumerate(tab.basis):
            row = tab.rows[r]
            vals[b] = Fraction(row[-1], row[b])
        out = []
        for off, cols in self.var_map:
            out.append(off + sum((s * vals[c] for c, s in cols), Fraction(0)))
        return tuple(out)


class _Tableau:
    """Integer simplex tableau; ``obj`` is the reduced-cost row."""

    def __init__(self, rows: list[list[int]], basis: list[int], ncols: int):
        self.rows = rows
        self.basis = basis
        self.ncols = ncols
        self.obj: list[int] = [0] * (ncols + 1)
        self.pivots = 0

    def set_objective(self, cost: Sequence[int]) -> None:
        obj = list(cost) + [0]
        for r, b in enumerate(self.basis):
            f = obj[b]
            if f:
                row = self.rows[r]
                p = row[b]
                obj = _normalized([a * p - f * x for a, x in zip(obj, row)])
        self.obj = obj

    def pivot(self, r: int, c: int) -> None:
        prow = self.rows[r]
        p = prow[c]
        if p < 0:
            prow = [-a for a in prow]
            p = -p
        prow = _normalized(prow)
        p = prow[c]
        self.rows[r] = prow
        for i, row in enumerate(self.rows):
            if i != r:
                f = row[c]
                if f:
                    self.rows[i] = _normalized([a * p - f * x for a, x in zip(row, prow)])
        f = self.obj[c]
        if f:
            self.obj = _normalized([a * p - f * x for a, x in zip(self.obj, prow)])
        self.basis[r] = c
        self.pivots += 1

    def _entering(self, bland: bool) -> int:
        obj = self.obj
        if bland:
            for j in range(self.ncols):
                if obj[j] < 0:
                    return j
            return -1
        best, col = 0, -1
        for j in range(self.ncols):
            v = obj[j]
            if v < best:
                best, col = v, j
        return col

    def _leaving(self, c: int) -> int:
        best = -1
        bn = bd = 0
        for r, row in enumerate(self.rows):
            a = row[c]
            if a > 0:
                rhs = row[-1]
                if best < 0:
                    best, bn, bd = r, rhs, a
                    continue
                lhs, rhs_cmp = rhs * bd, bn * a
                if lhs < rhs_cmp or (lhs == rhs_cmp and self.basis[r] < self.basis[best]):
                    best, bn, bd = r, rhs, a
        return best

    def run(self) -> bool:
        """Pivot to optimality. False when the objective is unbounded below."""
        streak = 0
        bland = False
        while True:
            c = self._entering(bland)
            if c < 0:
                return True
            r = self._leaving(c)
            if r < 0:
                return False
            degenerate = self.rows[r][-1] == 0
            self.pivot(r, c)
            if degenerate:
                streak += 1
                if streak >= DEGENERATE_STREAK:
                    bland = True
            else:
                streak = 0
                bland = False

    def drive_out(self, first_art: int) -> None:
        """Pivot zero-level artificials out of the basis; drop redundant rows."""
        r = 0
        while r < len(self.rows):
            if self.basis[r] >= first_art:
                row = self.rows[r]
                c = next((j for j in range(first_art) if row[j]), -1)
                if c < 0:
                    del self.rows[r]
                    del self.basis[r]
                    continue
                self.pivot(r, c)
            r += 1

    def drop_columns(self, first: int) -> None:
        if first < self.ncols:
            self.rows = [row[:first] + row[-1:] for row in self.rows]
            self.ncols = first
        self.obj = [0] * (self.ncols + 1)

    def phase_two(self, cost: Sequence[Fraction]) -> bool:
        m = 1
        for q in cost:
            if q.denominator != 1:
                m = lcm(m, q.denominator)
        self.set_objective([int(q * m) for q in cost])
        return self.run()
