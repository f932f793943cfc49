"""Cascade sampling of refinable functions and framelet generators.

Level ``n`` samples live on ``M^{-n} Z^d``: ``v_n(k) ~ phi(M^{-n} k)`` with
``v_0 = delta`` and ``v_{n+1} = d_M * a * up_M(v_n)``.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import signal

from .errors import LevelMismatch, NotNormalized, UnsupportedFormat
from .laurent import Filter
from .lattice import DilationContext, upsample
from .smoothness import _upsample_dense

EXACT_LEVELS = 4


@dataclass
class SampledGrid:
    """Samples ``values[i] = f(M^{-level} (origin + i))`` on a dense index box."""

    level: int
    ctx: DilationContext
    origin: np.ndarray
    values: np.ndarray
    exact: Filter | None = None

    def points(self) -> np.ndarray:
        idx = np.array(list(np.ndindex(*self.values.shape)), dtype=np.int64).reshape(-1, self.values.ndim)
        return idx + self.origin

    def coordinates(self) -> np.ndarray:
        """Physical sample locations ``M^{-level} k``, one row per point."""
        Minv = np.linalg.inv(self.ctx.matrix().astype(float))
        P = np.linalg.matrix_power(Minv, self.level)
        return self.points() @ P.T

    def at(self, k) -> float:
        i = tuple(np.asarray(k) - self.origin)
        if any(x < 0 or x >= s for x, s in zip(i, self.values.shape)):
            return 0.0
        return float(self.values[i])

    def integral(self) -> float:
        """Riemann-sum estimate ``d_M^{-level} sum v``."""
        return float(self.values.sum()) / self.ctx.det**self.level


def _grid_from_filter(u: Filter, level: int, ctx: DilationContext, exact: bool) -> SampledGrid:
    arr, lo = u.to_dense()
    return SampledGrid(level, ctx, np.array(lo, dtype=np.int64), arr, u if exact else None)


def subdivide_phi(a: Filter, ctx: DilationContext, n: int, exact: bool | None = None) -> SampledGrid:
    """Run ``n`` subdivision steps from ``delta``; exact rationals up to level 4 by default."""
    if n < 0:
        raise ValueError("level must be non-negative")
    total = a.coefficient_sum()
    if not a.is_rational or total != 1:
        raise NotNormalized("subdivision needs a rational mask summing to one")
    if exact is None:
        exact = n <= EXACT_LEVELS
    v = Filter.delta(ctx.dim)
    if exact:
        da = a.scale(ctx.det)
        for _ in range(n):
            v = da * upsample(v, ctx)
        return _grid_from_filter(v, n, ctx, True)
    A, alo = a.to_dense()
    A = A * ctx.det
    alo = np.array(alo, dtype=np.int64)
    cur = np.ones((1,) * ctx.dim)
    lo = np.zeros(ctx.dim, dtype=np.int64)
    M = ctx.matrix()
    for _ in range(n):
        up, ulo = _upsample_dense(cur, lo, M)
        cur = signal.fftconvolve(up, A) if up.size > 4096 else signal.convolve(up, A, method="direct")
        lo = ulo + alo
    return SampledGrid(n, ctx, lo, cur, None)


def _power_matrix(ctx: DilationContext, n: int) -> np.ndarray:
    return np.linalg.matrix_power(ctx.matrix(), n)


def sample_psi(b: Filter, phi: SampledGrid, ctx: DilationContext) -> SampledGrid:
    """Samples of ``psi(x) = d_M sum_k b(k) phi(M x - k)`` at level ``phi.level + 1``."""
    if phi.level < 1:
        raise LevelMismatch("the refinable-function grid must be at level 1 or more")
    if phi.ctx.M != ctx.M:
        raise LevelMismatch("grid and filter use different dilations")
    n = phi.level
    if b.is_zero():
        return SampledGrid(n + 1, ctx, phi.origin.copy(), np.zeros_like(phi.values), Filter.zero(ctx.dim) if phi.exact is not None else None)
    Mn = _power_matrix(ctx, n)
    if phi.exact is not None and b.is_rational:
        data = {}
        for k, v in b.items():
            data[tuple(int(x) for x in Mn @ np.array(k, dtype=np.int64))] = v * ctx.det
        up = Filter(data, dim=ctx.dim)
        return _grid_from_filter(up * phi.exact, n + 1, ctx, True)
    B, blo = b.to_dense()
    upb, ulo = _upsample_dense(B * ctx.det, np.array(blo, dtype=np.int64), Mn)
    vals = signal.fftconvolve(upb, phi.values) if upb.size * phi.values.size > 1e6 else signal.convolve(upb, phi.values, method="direct")
    return SampledGrid(n + 1, ctx, ulo + phi.origin, vals, None)


def export_grid(g: SampledGrid, path, fmt: str = "csv") -> None:
    """Write ``x1..xd,value`` rows (``x = M^{-level} k``) in lexicographic ``k`` order."""
    fmt = fmt.lower()
    if fmt not in ("csv", "json"):
        raise UnsupportedFormat(f"unsupported grid format {fmt!r}")
    coords = g.coordinates()
    vals = g.values.reshape(-1)
    d = g.ctx.dim
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if fmt == "csv":
        with open(path, "w", newline="", encoding="utf-8") as f:
            w = csv.writer(f)
            w.writerow([f"x{i + 1}" for i in range(d)] + ["value"])
            for x, v in zip(coords, vals):
                w.writerow([repr(float(c)) for c in x] + [repr(float(v))])
    else:
        obj = {
            "level": g.level,
            "dilation": [list(r) for r in g.ctx.M],
            "origin": [int(x) for x in g.origin],
            "shape": list(g.values.shape),
            "points": [[float(c) for c in x] for x in coords],
            "values": [float(v) for v in vals],
        }
        with open(path, "w", encoding="utf-8") as f:
            json.dump(obj, f)
