"""Exact linear algebra over the scalar domains.

Systems are kept as named-unknown equations; solving is plain exact
Gaussian elimination with pivots chosen by smallest bit-size to limit
coefficient growth. Inconsistency is a returned value, not an exception.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from .poly import Poly
from .scalars import RationalFunc


@dataclass
class LinearEquation:
    """sum(coeffs[u] * u) = rhs"""
    coeffs: Dict[str, object]
    rhs: object = Fraction(0)


@dataclass
class SolutionFamily:
    """Affine solution space: particular + span(basis), keyed by unknown."""
    unknowns: List[str]
    particular: Dict[str, object]
    basis: List[Dict[str, object]]
    free: List[str]
    degeneracies: List[object] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def is_unique(self) -> bool:
        return not self.basis

    def member(self, free_values: Optional[Dict[str, object]] = None) -> Dict[str, object]:
        """A concrete solution; free unknowns default to zero."""
        free_values = free_values or {}
        out = dict(self.particular)
        for i, f in enumerate(self.free):
            t = free_values.get(f)
            if t is None or not t:
                continue
            vec = self.basis[i]
            for u in self.unknowns:
                out[u] = out[u] + t * vec[u]
        return out

    def general_member(self, vars: Optional[Sequence[str]] = None) -> Dict[str, Poly]:
        """Each unknown as a degree-<=1 polynomial in the free unknowns."""
        vars = tuple(vars) if vars is not None else tuple(self.free)
        out = {}
        for u in self.unknowns:
            p = Poly.const(self.particular[u], vars)
            for f, vec in zip(self.free, self.basis):
                if vec[u]:
                    p = p + Poly.var(f, vars).scale(vec[u])
            out[u] = p
        return out


def _pivot_size(c) -> int:
    if isinstance(c, Fraction):
        return c.numerator.bit_length() + c.denominator.bit_length()
    if isinstance(c, RationalFunc):
        return 8 * (len(c.num) + len(c.den))
    return 1 << 20


def linear_solve(equations: Sequence[LinearEquation],
                 unknowns: Sequence[str]) -> Optional[SolutionFamily]:
    """Exact RREF solve. Returns None when inconsistent.

    Over a parametric field, pivots that vanish for special parameter
    values are recorded in ``degeneracies`` rather than silently assumed
    non-zero.
    """
    unknowns = list(unknowns)
    n = len(unknowns)
    idx = {u: i for i, u in enumerate(unknowns)}
    rows = []
    for eq in equations:
        row = [Fraction(0)] * n
        for u, c in eq.coeffs.items():
            if u not in idx:
                if c:
                    raise KeyError(f"unknown {u!r} not declared")
                continue
            row[idx[u]] = row[idx[u]] + c
        rows.append((row, eq.rhs))

    degeneracies: List[object] = []
    pivots = []  # (row_index, col_index)
    r = 0
    for col in range(n):
        # choose the simplest non-zero pivot in this column
        best = None
        for i in range(r, len(rows)):
            c = rows[i][0][col]
            if c:
                s = _pivot_size(c)
                if best is None or s < best[1]:
                    best = (i, s)
        if best is None:
            continue
        i = best[0]
        rows[r], rows[i] = rows[i], rows[r]
        prow, prhs = rows[r]
        p = prow[col]
        if isinstance(p, RationalFunc) and not p.is_constant():
            degeneracies.append(p)
        inv_row = [c / p for c in prow]
        inv_rhs = prhs / p
        rows[r] = (inv_row, inv_rhs)
        for j in range(len(rows)):
            if j == r:
                continue
            f = rows[j][0][col]
            if f:
                nrow = [a - f * b for a, b in zip(rows[j][0], inv_row)]
                nrhs = rows[j][1] - f * inv_rhs
                rows[j] = (nrow, nrhs)
        pivots.append((r, col))
        r += 1
        if r == len(rows):
            break

    # consistency: zero rows must have zero rhs
    for j in range(r, len(rows)):
        if rows[j][1]:
            return None

    pivot_cols = {col: ri for ri, col in pivots}
    free_cols = [c for c in range(n) if c not in pivot_cols]
    zero = Fraction(0)
    particular = {u: zero for u in unknowns}
    for col, ri in pivot_cols.items():
        particular[unknowns[col]] = rows[ri][1]
    basis = []
    for fc in free_cols:
        vec = {u: zero for u in unknowns}
        vec[unknowns[fc]] = Fraction(1)
        for col, ri in pivot_cols.items():
            c = rows[ri][0][fc]
            if c:
                vec[unknowns[col]] = -c
        basis.append(vec)
    return SolutionFamily(unknowns=unknowns, particular=particular,
                          basis=basis, free=[unknowns[c] for c in free_cols],
                          degeneracies=degeneracies)


def equations_from_poly(constraint: Poly) -> LinearEquation:
    """Degree-<=1 polynomial in named unknowns -> linear equation."""
    coeffs: Dict[str, object] = {}
    rhs = Fraction(0)
    for m, c in constraint.terms.items():
        d = sum(m)
        if d == 0:
            rhs = rhs - c
        elif d == 1:
            v = constraint.vars[m.index(1)]
            coeffs[v] = coeffs.get(v, Fraction(0)) + c
        else:
            raise ValueError(f"non-linear constraint: {constraint}")
    return LinearEquation(coeffs, rhs)


def matrix_rank(rows: Sequence[Sequence[object]]) -> int:
    """Exact rank of a matrix given as rows."""
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(rows)):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][col]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col] / p
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank
