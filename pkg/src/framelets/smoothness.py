"""L2 smoothness exponents of refinable masks.

``sm2(a, M) = d/2 - log_{rho(M)} rho_m`` where ``rho_m`` is ``d_M`` times the
growth rate of ``||nabla^mu * a_n||_2`` and ``m`` is the sum-rule order.  Two
estimators are provided: the spectral radius of the transition operator of the
autocorrelation ``star(a) * a`` restricted to sequences with ``2m`` vanishing
moments (``rho_m = sqrt(d_M * rho_T)``), and a direct ratio of norms of the
iterated masks ``a_n``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import linalg, signal

from .errors import NotNormalized
from .laurent import Filter, multi_indices, multi_indices_below, nabla_delta
from .lattice import DilationContext, upsample
from .moments import sum_rule_order

log = logging.getLogger(__name__)


@dataclass
class SmoothnessEstimate:
    sm2: float
    method: str
    sum_rules: int
    diagnostics: list = field(default_factory=list)
    warning: str | None = None

    @property
    def sm_inf_lower(self) -> float:
        return self.sm2 - self.dim / 2

    @property
    def sm_inf_upper(self) -> float:
        return self.sm2

    dim: int = 2


def sm_inf_bracket(est: SmoothnessEstimate | float, d: int) -> tuple[float, float]:
    """``(sm2 - d/2, sm2)``; a positive lower end certifies a continuous fundamental function."""
    s = est.sm2 if isinstance(est, SmoothnessEstimate) else float(est)
    return s - d / 2, s


# -- iterated masks -------------------------------------------------------------
def filter_power(a: Filter, ctx: DilationContext, n: int) -> Filter:
    """Exact ``a_n`` with symbol ``a(x) a(M^T x) ... a((M^T)^{n-1} x)``."""
    if n < 1:
        raise ValueError("n must be positive")
    out = a
    for _ in range(n - 1):
        out = a * upsample(out, ctx)
    return out


def _dense(u: Filter) -> tuple[np.ndarray, np.ndarray]:
    arr, lo = u.to_dense()
    return arr, np.array(lo, dtype=np.int64)


def _upsample_dense(arr: np.ndarray, lo: np.ndarray, M: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    idx = np.argwhere(arr != 0)
    pts = (idx + lo) @ M.T
    new_lo = pts.min(0)
    shape = tuple(pts.max(0) - new_lo + 1)
    out = np.zeros(shape)
    out[tuple((pts - new_lo).T)] = arr[tuple(idx.T)]
    return out, new_lo


def dense_powers(a: Filter, ctx: DilationContext, n_max: int, max_size: int = 4_000_000):
    """Yield ``(n, array, origin)`` for ``a_1, a_2, ...`` in floating point."""
    A, alo = _dense(a)
    M = ctx.matrix()
    cur, lo = A, alo
    yield 1, cur, lo
    for n in range(2, n_max + 1):
        up, ulo = _upsample_dense(cur, lo, M)
        if up.size * 1.0 + A.size > max_size:
            return
        cur = signal.fftconvolve(up, A) if up.size > 4096 else signal.convolve(up, A, method="direct")
        lo = ulo + alo
        yield n, cur, lo


def _diff_norms(arr: np.ndarray, m: int) -> float:
    best = 0.0
    for mu in multi_indices(m, arr.ndim):
        k, _ = _dense(nabla_delta(mu))
        best = max(best, float(np.linalg.norm(signal.convolve(arr, k, method="direct"))))
    return best


# -- transition operator ----------------------------------------------------------
def invariant_support(c: Filter, ctx: DilationContext) -> list[tuple[int, ...]]:
    """Smallest set grown from ``fsupp(c)`` with ``K >= (M^{-1}(K + supp c)) cap Z^d``."""
    S = np.array(c.points(), dtype=np.int64)
    adj = np.array(ctx._adj, dtype=np.int64)
    box = c.support
    start = np.array(list(np.ndindex(*[hi - lo + 1 for lo, hi in box])), dtype=np.int64) + np.array([lo for lo, _ in box])
    K = {tuple(p) for p in start.tolist()}
    frontier = start
    while len(frontier):
        Y = (frontier[:, None, :] + S[None, :, :]).reshape(-1, ctx.dim) @ adj.T
        hits = Y[np.all(Y % ctx.det == 0, axis=1)] // ctx.det
        new = {tuple(p) for p in hits.tolist()} - K
        K |= new
        frontier = np.array(sorted(new), dtype=np.int64).reshape(-1, ctx.dim)
    return sorted(K)


def transition_matrix(c: Filter, ctx: DilationContext, K: Sequence[tuple[int, ...]]) -> np.ndarray:
    """``T[k, j] = d_M c(M k - j)`` on the index set ``K``."""
    idx = {k: i for i, k in enumerate(K)}
    T = np.zeros((len(K), len(K)))
    cd = {k: float(v) * c.radical for k, v in c.items()}
    for i, k in enumerate(K):
        Mk = ctx.apply(k)
        for s, v in cd.items():
            j = tuple(a - b for a, b in zip(Mk, s))
            jj = idx.get(j)
            if jj is not None:
                T[i, jj] += ctx.det * v
    return T


def _moment_free_basis(K: Sequence[tuple[int, ...]], order: int) -> np.ndarray:
    pts = np.array(K, dtype=float)
    scale = max(1.0, float(np.abs(pts).max()))
    x = pts / scale
    rows = [np.prod(x ** np.array(mu), axis=1) for mu in multi_indices_below(order, pts.shape[1])]
    if not rows:
        return np.eye(len(K))
    return linalg.null_space(np.array(rows))


def _sm_from_rho(rho_m: float, d: int, rho_M: float) -> float:
    if rho_m <= 0:
        return math.inf
    return d / 2 - math.log(rho_m) / math.log(rho_M)


def sm2_eig(a: Filter, ctx: DilationContext, m: int | None = None) -> SmoothnessEstimate:
    if m is None:
        m = int(sum_rule_order(a, ctx))
    c = a.star() * a
    K = invariant_support(c, ctx)
    T = transition_matrix(c, ctx, K)
    Q = _moment_free_basis(K, 2 * m)
    R = Q.T @ T @ Q
    eig = np.linalg.eigvals(R) if R.size else np.array([0.0])
    rho_T = float(np.max(np.abs(eig)))
    rho_m = math.sqrt(ctx.det * rho_T)
    sm = _sm_from_rho(rho_m, ctx.dim, ctx.spectral_radius)
    top = sorted(np.abs(eig), reverse=True)[:6]
    est = SmoothnessEstimate(sm, "eig", m, [float(x) for x in top], dim=ctx.dim)
    if m == 0:
        est.warning = "mask has no sum rules"
    return est


def sm2_norm(a: Filter, ctx: DilationContext, m: int | None = None, max_n: int = 12, max_size: int = 4_000_000) -> SmoothnessEstimate:
    if m is None:
        m = int(sum_rule_order(a, ctx))
    norms = []
    for n, arr, _ in dense_powers(a, ctx, max_n, max_size):
        norms.append(_diff_norms(arr, m))
    ratios = [b / a_ for a_, b in zip(norms, norms[1:]) if a_ > 0]
    if not ratios:
        raise ValueError("not enough iterations for a norm estimate")
    # ratios oscillate for non-isotropic dilations; average over the last period
    tail = ratios[-2:] if len(ratios) >= 2 else ratios
    r = math.exp(sum(math.log(x) for x in tail) / len(tail))
    rho_m = ctx.det * r
    sm = _sm_from_rho(rho_m, ctx.dim, ctx.spectral_radius)
    est = SmoothnessEstimate(sm, "norm", m, [float(x) for x in ratios], dim=ctx.dim)
    if m == 0:
        est.warning = "mask has no sum rules"
    return est


def sm2_estimate(a: Filter, ctx: DilationContext, method: str = "eig", max_n: int = 12) -> SmoothnessEstimate:
    """Estimate ``sm2(a, M)`` with the ``eig`` (default) or ``norm`` method."""
    if a.coefficient_sum() * (a.radical if not a.is_rational else 1) != 1:
        raise NotNormalized("mask coefficients must sum to one")
    if method == "eig":
        return sm2_eig(a, ctx)
    if method == "norm":
        return sm2_norm(a, ctx, max_n=max_n)
    raise ValueError(f"unknown method {method!r}")
