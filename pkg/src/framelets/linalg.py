"""Exact rational linear algebra on top of sympy's DomainMatrix over QQ."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .laurent import to_fraction


def _qq(x) -> object:
    f = to_fraction(x)
    return QQ(f.numerator, f.denominator)


def _frac(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def qq_matrix(rows: Sequence[Sequence], ncols: int | None = None) -> DomainMatrix:
    rows = [[_qq(v) for v in r] for r in rows]
    n = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    return DomainMatrix(rows, (len(rows), n), QQ)


def sparse_matrix(entries: list[dict[int, object]], ncols: int) -> DomainMatrix:
    """Build a matrix from a list of sparse rows ``{column: value}``."""
    sdm = {}
    for i, row in enumerate(entries):
        r = {j: _qq(v) for j, v in row.items() if v}
        if r:
            sdm[i] = r
    return DomainMatrix(sdm, (len(entries), ncols), QQ)


def solve_affine(rows: list[dict[int, object]], rhs: Sequence, ncols: int) -> tuple[list[Fraction], list[list[Fraction]]] | None:
    """Solve ``A x = b`` exactly.

    Returns ``(x0, basis)`` where ``x0`` is the particular solution with all
    free variables zero and ``basis`` spans the nullspace (one vector per free
    column, in increasing column order).  Returns None when inconsistent.
    """
    m = len(rows)
    aug = [dict(r) for r in rows]
    for i in range(m):
        if rhs[i]:
            aug[i][ncols] = rhs[i]
    if m == 0:
        x0 = [Fraction(0)] * ncols
        basis = []
        for j in range(ncols):
            v = [Fraction(0)] * ncols
            v[j] = Fraction(1)
            basis.append(v)
        return x0, basis
    R, pivots = sparse_matrix(aug, ncols + 1).rref()
    if ncols in pivots:
        return None
    Rd = R.to_sdm()
    x0 = [Fraction(0)] * ncols
    pivot_rows = {}
    for i, p in enumerate(pivots):
        pivot_rows[p] = Rd.get(i, {})
        rhs_v = pivot_rows[p].get(ncols)
        if rhs_v is not None:
            x0[p] = _frac(rhs_v)
    pivset = set(pivots)
    free = [j for j in range(ncols) if j not in pivset]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for p, row in pivot_rows.items():
            c = row.get(f)
            if c is not None:
                v[p] = -_frac(c)
        basis.append(v)
    return x0, basis


def nullspace(rows: list[dict[int, object]], ncols: int) -> list[list[Fraction]]:
    res = solve_affine(rows, [0] * len(rows), ncols)
    assert res is not None
    return res[1]


def rank(rows: list[dict[int, object]], ncols: int) -> int:
    if not rows:
        return 0
    return len(sparse_matrix(rows, ncols).rref()[1])


def inverse(M: Sequence[Sequence]) -> list[list[Fraction]]:
    A = qq_matrix(M)
    inv = A.inv()
    return [[_frac(inv[i, j].element) for j in range(A.shape[1])] for i in range(A.shape[0])]


def mat_vec(M: Sequence[Sequence], v: Sequence) -> list[Fraction]:
    return [sum((to_fraction(a) * to_fraction(b) for a, b in zip(row, v)), Fraction(0)) for row in M]
