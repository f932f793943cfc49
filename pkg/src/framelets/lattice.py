"""Dilation matrices, coset representatives and polyphase index algebra."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np
from sympy import Matrix

from .errors import MissingCoset, NotExpansive, NotSquare
from .laurent import Filter, Point

IntMatrix = tuple[tuple[int, ...], ...]


def as_int_matrix(M) -> IntMatrix:
    if isinstance(M, str):
        M = parse_matrix(M)
    rows = [list(r) for r in (M.tolist() if isinstance(M, np.ndarray) else M)]
    if not rows or any(len(r) != len(rows) for r in rows):
        raise NotSquare(f"dilation matrix must be square, got {rows!r}")
    out = []
    for r in rows:
        row = []
        for x in r:
            if int(x) != x:
                raise ValueError(f"dilation matrix entries must be integers, got {x!r}")
            row.append(int(x))
        out.append(tuple(row))
    return tuple(out)


def parse_matrix(text: str) -> list[list[int]]:
    """Parse ``"1 1; 1 -1"`` into nested integer lists."""
    return [[int(x) for x in row.replace(",", " ").split()] for row in text.split(";") if row.strip()]


def format_matrix(M: Sequence[Sequence[int]]) -> str:
    return "; ".join(" ".join(str(x) for x in row) for row in M)


def _matmul_vec(M: IntMatrix, v: Sequence[int]) -> Point:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in M)


def _enumerate_representatives(M: IntMatrix, adj: IntMatrix, det: int) -> list[Point]:
    d = len(M)
    # bounding box of the parallelepiped M[0,1]^d
    lo, hi = [], []
    for i in range(d):
        neg = sum(min(0, x) for x in M[i])
        pos = sum(max(0, x) for x in M[i])
        lo.append(neg)
        hi.append(pos)
    reps = []
    for k in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        y = _matmul_vec(adj, k)
        # M^{-1}k = y/det must lie in [0,1)^d
        if all(0 <= c < det for c in y):
            reps.append(tuple(k))
    zero = (0,) * d
    reps.remove(zero)
    # colexicographic: last coordinate is the slowest
    reps.sort(key=lambda p: tuple(reversed(p)))
    return [zero] + reps


@dataclass(frozen=True)
class DilationContext:
    """An expansive integer matrix with its coset data.

    ``gamma`` lists representatives of ``Z^d / M Z^d`` inside ``M[0,1)^d``
    and ``omega`` the matching frequency representatives in ``[0,1)^d``; both
    start at the origin.
    """

    M: IntMatrix
    det: int
    gamma: tuple[Point, ...]
    omega: tuple[tuple[Fraction, ...], ...]
    spectral_radius: float
    _adj: IntMatrix = field(repr=False)
    _index: Mapping[Point, int] = field(repr=False, compare=False)

    @property
    def dim(self) -> int:
        return len(self.M)

    @property
    def det_abs(self) -> int:
        return self.det

    @property
    def M_inv(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple(Fraction(x, self.det) for x in row) for row in self._adj)

    def matrix(self) -> np.ndarray:
        return np.array(self.M, dtype=np.int64)

    def apply(self, k: Sequence[int]) -> Point:
        return _matmul_vec(self.M, k)

    def apply_inverse(self, v: Sequence) -> tuple[Fraction, ...]:
        return tuple(sum((Fraction(a) * b for a, b in zip(row, v)), Fraction(0)) / self.det for row in self._adj)

    def reduce(self, k: Sequence[int]) -> tuple[Point, Point]:
        """Write ``k = gamma + M n`` with ``gamma`` in Gamma_M; return ``(gamma, n)``."""
        y = _matmul_vec(self._adj, k)
        n = tuple(c // self.det for c in y)
        r = tuple(c - self.det * q for c, q in zip(y, n))
        # r = det * (M^{-1}k - n) lies in det*[0,1)^d; gamma = M r / det
        g = tuple(c // self.det for c in _matmul_vec(self.M, r))
        return g, n

    def coset_index(self, gamma: Sequence[int]) -> int:
        return self._index[tuple(gamma)]


def make_context(M) -> DilationContext:
    """Validate a dilation matrix and enumerate its coset representatives."""
    Mi = as_int_matrix(M)
    d = len(Mi)
    eig = np.linalg.eigvals(np.array(Mi, dtype=float))
    if np.any(np.abs(eig) <= 1 + 1e-9):
        raise NotExpansive(f"matrix {format_matrix(Mi)} has an eigenvalue of modulus <= 1")
    sm = Matrix(Mi)
    det = int(sm.det())
    adj = sm.adjugate()
    if det < 0:
        det, adj = -det, -adj
    adj_t = tuple(tuple(int(adj[i, j]) for j in range(d)) for i in range(d))
    gamma = _enumerate_representatives(Mi, adj_t, det)
    if len(gamma) != det:
        raise AssertionError("coset enumeration failed")
    # frequency representatives: M^{-T} applied to the representatives of M^T
    Mt = tuple(tuple(Mi[j][i] for j in range(d)) for i in range(d))
    adj_tt = tuple(tuple(adj_t[j][i] for j in range(d)) for i in range(d))
    gamma_t = _enumerate_representatives(Mt, adj_tt, det)
    omega = tuple(tuple(Fraction(c, det) for c in _matmul_vec(adj_tt, g)) for g in gamma_t)
    index = {g: i for i, g in enumerate(gamma)}
    return DilationContext(
        M=Mi,
        det=det,
        gamma=tuple(gamma),
        omega=omega,
        spectral_radius=float(np.max(np.abs(eig))),
        _adj=adj_t,
        _index=index,
    )


def coset_split(u: Filter, ctx: DilationContext) -> dict[Point, Filter]:
    """Polyphase components ``u^[gamma](k) = u(gamma + M k)`` for every gamma."""
    if u.dim != ctx.dim:
        raise ValueError("filter and dilation have different dimensions")
    parts: dict[Point, dict] = {g: {} for g in ctx.gamma}
    for k, v in u.items():
        g, n = ctx.reduce(k)
        parts[g][n] = v
    return {g: Filter._raw(p, ctx.dim, u.radicand if p else 1) for g, p in parts.items()}


def coset_merge(parts: Mapping[Point, Filter], ctx: DilationContext) -> Filter:
    missing = [g for g in ctx.gamma if tuple(g) not in parts]
    if missing:
        raise MissingCoset(f"no component for cosets {missing}")
    total = Filter.zero(ctx.dim)
    for g in ctx.gamma:
        total = total + upsample_shift(parts[g], g, ctx)
    return total


def upsample_shift(u: Filter, gamma: Sequence[int], ctx: DilationContext) -> Filter:
    """``result(gamma + M k) = u(k)``, zero elsewhere."""
    gamma = tuple(gamma)
    data = {}
    for k, v in u.items():
        Mk = _matmul_vec(ctx.M, k)
        data[tuple(a + b for a, b in zip(gamma, Mk))] = v
    return Filter._raw(data, ctx.dim, u.radicand)


def upsample(u: Filter, ctx: DilationContext) -> Filter:
    return upsample_shift(u, (0,) * ctx.dim, ctx)


def is_interpolatory(u: Filter, ctx: DilationContext) -> bool:
    """True iff ``u(M k) = delta(k) / d_M``."""
    zero = coset_split(u, ctx)[(0,) * ctx.dim]
    return zero == Filter.delta(ctx.dim, Fraction(1, ctx.det))


def has_zero_coset(u: Filter, ctx: DilationContext) -> bool:
    """True iff ``u(M k) = 0`` for all ``k != 0`` (high-pass interpolatory condition)."""
    zero = coset_split(u, ctx)[(0,) * ctx.dim]
    return all(k == (0,) * ctx.dim for k in zero.points())
