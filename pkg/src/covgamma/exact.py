"""Exact rational scalars and a dense rational simplex solver.

Everything here works on :class:`fractions.Fraction`.  Floats are refused at
the boundary so that no rounding can leak into a certificate.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

Rational = Fraction

LE, GE, EQ = "<=", ">=", "="
OPTIMAL, INFEASIBLE, UNBOUNDED = "optimal", "infeasible", "unbounded"

# consecutive degenerate pivots tolerated before switching to Bland's rule
_STALL_LIMIT = 30


def Q(x) -> Fraction:
    """Coerce ``x`` to a Fraction.  Accepts ints, Fractions and "p/q" strings."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"refusing non-rational value {x!r} ({type(x).__name__})")


def parse_rational(s: str) -> Fraction:
    """Parse "p/q" or "p".  Decimal notation is rejected on purpose."""
    s = s.strip()
    if not s or "." in s or "e" in s.lower():
        raise ValueError(f"not a rational literal: {s!r}")
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not a rational literal: {s!r}") from None
    if q == 0:
        raise ValueError("zero denominator")
    return Fraction(p, q)


def fmt(q: Fraction) -> str:
    """Canonical string form: "p/q" with q > 0, or "p" when q == 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def vec(*xs) -> tuple:
    return tuple(Q(x) for x in xs)


def fmt_vec(v) -> list:
    return [fmt(x) for x in v]


def parse_vec(items) -> tuple:
    return tuple(Q(x) for x in items)


def rational_cmp(a, b) -> int:
    """Exact trichotomy by cross-multiplication: -1, 0 or 1."""
    a, b = Q(a), Q(b)
    lhs = a.numerator * b.denominator
    rhs = b.numerator * a.denominator
    return (lhs > rhs) - (lhs < rhs)


def dot(a, b) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def solve_linear(A, b):
    """Solve the square system ``A x = b`` exactly; None if singular."""
    n = len(A)
    M = [[Fraction(v) for v in row] + [Fraction(rhs)] for row, rhs in zip(A, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        pv = M[col][col]
        M[col] = [v / pv for v in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return tuple(M[r][n] for r in range(n))


@dataclass(frozen=True)
class LpProblem:
    """``sense`` ("max"/"min") of ``objective . x`` subject to ``constraints``.

    Each constraint is ``(coefficients, relation, rhs)`` with relation one of
    ``"<="``, ``">="``, ``"="``.  ``bounds`` holds one ``(lower, upper)`` pair
    per variable, ``None`` meaning unbounded on that side; when omitted every
    variable is free.
    """

    objective: tuple
    constraints: tuple
    sense: str = "max"
    bounds: Optional[tuple] = None

    def __post_init__(self):
        n = len(self.objective)
        object.__setattr__(self, "objective", tuple(Q(c) for c in self.objective))
        cons = []
        for coeffs, rel, rhs in self.constraints:
            if len(coeffs) != n:
                raise ValueError("constraint dimension does not match objective")
            if rel not in (LE, GE, EQ):
                raise ValueError(f"unknown relation {rel!r}")
            cons.append((tuple(Q(c) for c in coeffs), rel, Q(rhs)))
        object.__setattr__(self, "constraints", tuple(cons))
        if self.sense not in ("max", "min"):
            raise ValueError(f"unknown sense {self.sense!r}")
        bounds = self.bounds
        if bounds is None:
            bounds = ((None, None),) * n
        if len(bounds) != n:
            raise ValueError("bounds dimension does not match objective")
        bounds = tuple((None if lo is None else Q(lo), None if hi is None else Q(hi))
                       for lo, hi in bounds)
        object.__setattr__(self, "bounds", bounds)

    @property
    def num_vars(self) -> int:
        return len(self.objective)


@dataclass(frozen=True)
class LpResult:
    status: str
    value: Optional[Fraction] = None
    x: Optional[tuple] = None
    pivots: int = field(default=0, compare=False)


class _Tableau:
    """Dense tableau, rows ``x_B[r] + sum_j T[r][j] x_j = T[r][-1]``."""

    def __init__(self, rows, basis, ncols):
        self.rows = rows
        self.basis = basis
        self.ncols = ncols
        self.pivots = 0

    def pivot(self, r, j, obj):
        row = self.rows[r]
        pv = row[j]
        if pv != 1:
            row = [v / pv if v else v for v in row]
            self.rows[r] = row
        nz = [(k, v) for k, v in enumerate(row) if v]
        for other in self.rows if obj is None else self.rows + [obj]:
            if other is row:
                continue
            f = other[j]
            if f:
                for k, v in nz:
                    other[k] -= f * v
        self.basis[r] = j
        self.pivots += 1

    def run(self, obj, allowed):
        """Maximise with reduced-cost row ``obj`` (last entry is -value)."""
        bland = False
        stall = 0
        while True:
            if bland:
                j = next((k for k in allowed if obj[k] > 0), None)
            else:
                j, best = None, Fraction(0)
                for k in allowed:
                    if obj[k] > best:
                        j, best = k, obj[k]
            if j is None:
                return OPTIMAL
            r, ratio = None, None
            for i, row in enumerate(self.rows):
                a = row[j]
                if a > 0:
                    t = row[-1] / a
                    if (ratio is None or t < ratio
                            or (t == ratio and self.basis[i] < self.basis[r])):
                        r, ratio = i, t
            if r is None:
                return UNBOUNDED
            if ratio == 0:
                stall += 1
                if stall > _STALL_LIMIT:
                    bland = True
            else:
                stall = 0
            self.pivot(r, j, obj)


def solve_lp(p: LpProblem) -> LpResult:
    """Exact two-phase simplex.  Always returns a status; never rounds."""
    n = p.num_vars
    # column map: x_i = offset_i + sum(sign * y_col)
    offset = [Fraction(0)] * n
    colmap = []
    ncol = 0
    extra = []
    for i, (lo, hi) in enumerate(p.bounds):
        if lo is not None:
            offset[i] = lo
            colmap.append(((ncol, 1),))
            if hi is not None:
                extra.append(({ncol: Fraction(1)}, LE, hi - lo))
            ncol += 1
        elif hi is not None:
            offset[i] = hi
            colmap.append(((ncol, -1),))
            ncol += 1
        else:
            colmap.append(((ncol, 1), (ncol + 1, -1)))
            ncol += 2

    rows_in = []
    for coeffs, rel, rhs in p.constraints:
        d = {}
        for i, a in enumerate(coeffs):
            if a:
                rhs -= a * offset[i]
                for col, s in colmap[i]:
                    d[col] = d.get(col, 0) + s * a
        rows_in.append((d, rel, rhs))
    rows_in.extend(extra)

    m = len(rows_in)
    nslack = sum(1 for _, rel, _ in rows_in if rel != EQ)
    nart = 0
    for d, rel, rhs in rows_in:
        if rel == EQ or (rel == LE) == (rhs < 0):
            nart += 1
    width = ncol + nslack + nart
    rows, basis = [], []
    s_idx, a_idx = ncol, ncol + nslack
    art_cols = []
    for d, rel, rhs in rows_in:
        row = [Fraction(0)] * (width + 1)
        for col, a in d.items():
            row[col] = Fraction(a)
        row[-1] = rhs
        if rel != EQ:
            row[s_idx] = Fraction(1 if rel == LE else -1)
        if rhs < 0:
            row = [-v for v in row]
        if rel != EQ and row[s_idx] == 1:
            basis.append(s_idx)
        else:
            row[a_idx] = Fraction(1)
            basis.append(a_idx)
            art_cols.append(a_idx)
            a_idx += 1
        if rel != EQ:
            s_idx += 1
        rows.append(row)

    tab = _Tableau(rows, basis, width)
    real_cols = list(range(ncol + nslack))

    if art_cols:
        # phase 1: maximise -sum(artificials)
        obj = [Fraction(0)] * (width + 1)
        art = set(art_cols)
        for r, b in enumerate(basis):
            if b in art:
                for k, v in enumerate(rows[r]):
                    obj[k] += v
        for a in art_cols:
            obj[a] = Fraction(0)
        tab.run(obj, list(range(width)))
        if obj[-1] != 0:
            return LpResult(INFEASIBLE, pivots=tab.pivots)
        # drive zero-level artificials out; drop redundant rows
        r = 0
        while r < len(tab.rows):
            if tab.basis[r] in art:
                j = next((k for k in real_cols if tab.rows[r][k] != 0), None)
                if j is None:
                    del tab.rows[r]
                    del tab.basis[r]
                    continue
                tab.pivot(r, j, None)
            r += 1

    c = [Fraction(0)] * (width + 1)
    sign = 1 if p.sense == "max" else -1
    for i, ci in enumerate(p.objective):
        for col, s in colmap[i]:
            c[col] += sign * s * ci
    obj = c[:]
    for r, b in enumerate(tab.basis):
        cb = c[b]
        if cb:
            row = tab.rows[r]
            for k in range(width + 1):
                if row[k]:
                    obj[k] -= cb * row[k]
    status = tab.run(obj, real_cols)
    if status == UNBOUNDED:
        return LpResult(UNBOUNDED, pivots=tab.pivots)

    y = [Fraction(0)] * (width)
    for r, b in enumerate(tab.basis):
        y[b] = tab.rows[r][-1]
    x = tuple(offset[i] + sum((s * y[col] for col, s in colmap[i]), Fraction(0))
              for i in range(n))
    return LpResult(OPTIMAL, dot(p.objective, x), x, tab.pivots)
