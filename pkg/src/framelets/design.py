"""Parametric design of interpolatory symmetric masks on a support box.

The constraints (normalization, sum rules in coset-moment form, the
interpolation condition and symmetry orbit equalities) are linear in the
coefficients, so their solution set is an affine family solved exactly.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import ConstraintViolation, Infeasible
from .laurent import Filter, Point, multi_indices_below, to_fraction
from .lattice import DilationContext, is_interpolatory
from .linalg import inverse, solve_affine
from .moments import sum_rule_order
from .smoothness import SmoothnessEstimate, sm2_estimate
from .symmetry import SymmetryType, _act, has_symmetry, is_compatible

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class DesignConstraints:
    sum_rules: int = 0
    interpolatory: bool = False
    symmetry: SymmetryType | None = None
    normalized: bool = True


@dataclass
class AffineFilterFamily:
    """``base + sum_i t_i * directions[i]``."""

    ctx: DilationContext
    box: tuple[tuple[int, int], ...]
    base: Filter
    directions: list[Filter]
    names: list[str]
    constraints: DesignConstraints = field(default_factory=DesignConstraints)

    @property
    def dimension(self) -> int:
        return len(self.directions)

    def __len__(self) -> int:
        return len(self.directions)


def _box_points(box) -> list[Point]:
    return [tuple(p) for p in itertools.product(*(range(lo, hi + 1) for lo, hi in box))]


def parametrize(box: Sequence[Sequence[int]], ctx: DilationContext, constraints: DesignConstraints) -> AffineFilterFamily:
    """Solve the design constraints for masks supported in ``box``."""
    box = tuple((int(lo), int(hi)) for lo, hi in box)
    if len(box) != ctx.dim or any(lo > hi for lo, hi in box):
        raise ValueError("support box must be non-empty and match the dilation dimension")
    t = constraints.symmetry
    if t is not None and not is_compatible(ctx, t.group):
        from .errors import NotCompatible

        raise NotCompatible(f"{t.group.label()} is not compatible with the dilation")
    pts = _box_points(box)
    col = {p: i for i, p in enumerate(pts)}
    rows: list[dict[int, Fraction]] = []
    rhs: list[Fraction] = []

    def add(row: dict, value) -> None:
        row = {k: v for k, v in row.items() if v}
        if row or value:
            rows.append(row)
            rhs.append(Fraction(value))

    if constraints.normalized:
        add({i: 1 for i in range(len(pts))}, 1)
    cosets = {p: ctx.reduce(p)[0] for p in pts}
    for mu in multi_indices_below(constraints.sum_rules, ctx.dim):
        mono = {p: Fraction(1) for p in pts}
        for p in pts:
            v = 1
            for x, m in zip(p, mu):
                v *= x**m
            mono[p] = v
        ref = ctx.gamma[0]
        for g in ctx.gamma[1:]:
            row: dict[int, Fraction] = {}
            for p in pts:
                if cosets[p] == g:
                    row[col[p]] = row.get(col[p], 0) + mono[p]
                elif cosets[p] == ref:
                    row[col[p]] = row.get(col[p], 0) - mono[p]
            add(row, 0)
    if constraints.interpolatory:
        zero = (0,) * ctx.dim
        for p in pts:
            g, n = ctx.reduce(p)
            if g == zero:
                add({col[p]: 1}, Fraction(1, ctx.det) if n == zero else 0)
    if t is not None:
        identity = tuple(tuple(int(i == j) for j in range(ctx.dim)) for i in range(ctx.dim))
        for p in pts:
            for E in t.group:
                if E == identity:
                    continue
                q = _act(E, p, t.center)
                if q is None:
                    raise Infeasible("symmetry center is not admissible")
                if q == p:
                    if t.sign == -1:
                        add({col[p]: 1}, 0)
                    continue
                if q in col:
                    add({col[q]: 1, col[p]: -t.sign}, 0)
                else:
                    add({col[p]: 1}, 0)
    res = solve_affine(rows, rhs, len(pts))
    if res is None:
        raise Infeasible("the design constraints have no common solution on this box")
    x0, basis = res
    base = Filter({p: v for p, v in zip(pts, x0) if v}, dim=ctx.dim)
    directions = [Filter({p: v for p, v in zip(pts, vec) if v}, dim=ctx.dim) for vec in basis]
    names = [f"t{i + 1}" for i in range(len(directions))]
    fam = AffineFilterFamily(ctx, box, base, directions, names, constraints)
    _check(fam, base)
    return fam


def _check(fam: AffineFilterFamily, u: Filter) -> None:
    c = fam.constraints
    problems = []
    if c.normalized and u.coefficient_sum() != 1:
        problems.append("normalization")
    if c.interpolatory and not is_interpolatory(u, fam.ctx):
        problems.append("interpolation")
    if c.sum_rules and sum_rule_order(u, fam.ctx, c.sum_rules) < c.sum_rules:
        problems.append("sum rules")
    if c.symmetry is not None and not u.is_zero() and not has_symmetry(u, c.symmetry):
        problems.append("symmetry")
    if u.support is not None and any(lo < blo or hi > bhi for (lo, hi), (blo, bhi) in zip(u.support, fam.box)):
        problems.append("support")
    if problems:
        raise ConstraintViolation("instantiated filter violates: " + ", ".join(problems))


def instantiate(fam: AffineFilterFamily, params: Sequence) -> Filter:
    """``base + sum t_i directions_i``, re-checked against every constraint."""
    if len(params) != len(fam.directions):
        raise ValueError(f"expected {len(fam.directions)} parameters, got {len(params)}")
    u = fam.base
    for t, dvec in zip(params, fam.directions):
        u = u + dvec.scale(to_fraction(t))
    _check(fam, u)
    return u


def with_coordinates(fam: AffineFilterFamily, points: Sequence[Sequence[int]], names: Sequence[str] | None = None) -> AffineFilterFamily:
    """Re-parametrize so that parameter ``i`` is the coefficient at ``points[i]``."""
    points = [tuple(p) for p in points]
    r = len(fam.directions)
    if len(points) != r:
        raise ValueError(f"need exactly {r} coordinate points")
    A = [[dvec[p] for dvec in fam.directions] for p in points]
    try:
        Ainv = inverse(A)
    except Exception as exc:  # singular coordinate choice
        raise ValueError("coefficients at these points do not determine the parameters") from exc
    new_dirs = []
    for j in range(r):
        f = Filter.zero(fam.ctx.dim)
        for i in range(r):
            if Ainv[i][j]:
                f = f + fam.directions[i].scale(Ainv[i][j])
        new_dirs.append(f)
    base = fam.base
    for j, p in enumerate(points):
        base = base - new_dirs[j].scale(fam.base[p])
    out = AffineFilterFamily(fam.ctx, fam.box, base, new_dirs, list(names) if names else [f"t{i + 1}" for i in range(r)], fam.constraints)
    _check(out, base)
    return out


def solve_parameters(fam: AffineFilterFamily, target: Filter) -> list[Fraction] | None:
    """Parameters reproducing ``target`` exactly, or None if it is not in the family."""
    pts = _box_points(fam.box)
    col_rows = []
    rhs = []
    for p in pts:
        col_rows.append({i: dvec[p] for i, dvec in enumerate(fam.directions) if dvec[p]})
        rhs.append(target[p] - fam.base[p])
    if any(target[p] for p in target.points() if any(x < lo or x > hi for x, (lo, hi) in zip(p, fam.box))):
        return None
    res = solve_affine(col_rows, rhs, len(fam.directions))
    if res is None:
        return None
    return res[0]


@dataclass
class SearchResult:
    params: list[Fraction]
    estimate: SmoothnessEstimate
    evaluated: list[tuple[list[Fraction], float]]

    @property
    def certifies_continuity(self) -> bool:
        return self.estimate.sm2 > self.estimate.dim / 2


def _axis_values(axis) -> list[Fraction]:
    if isinstance(axis, tuple) and len(axis) == 3:
        lo, hi, step = (to_fraction(x) for x in axis)
        n = int((hi - lo) / step)
        return [lo + i * step for i in range(n + 1)]
    return [to_fraction(x) for x in axis]


def optimize_sm2(fam: AffineFilterFamily, grid: Sequence, method: str = "eig", refine: int = 0) -> SearchResult:
    """Grid search (plus optional local refinement) maximizing the ``sm2`` estimate.

    ``grid`` holds one entry per parameter: either an explicit list of values or
    a ``(lo, hi, step)`` triple.  No optimality claim is made.
    """
    axes = [_axis_values(g) for g in grid]
    if len(axes) != fam.dimension:
        raise ValueError("one grid axis per parameter is required")
    evaluated: list[tuple[list[Fraction], float]] = []
    cache: dict[tuple, SmoothnessEstimate] = {}

    def score(params) -> float:
        key = tuple(params)
        if key not in cache:
            u = instantiate(fam, params)
            try:
                cache[key] = sm2_estimate(u, fam.ctx, method)
            except Exception as exc:  # degenerate masks score -inf
                log.debug("sm2 failed at %s: %s", params, exc)
                cache[key] = SmoothnessEstimate(float("-inf"), method, 0, [], str(exc), fam.ctx.dim)
            evaluated.append((list(params), cache[key].sm2))
        return cache[key].sm2

    best = None
    for params in itertools.product(*axes) if axes else [()]:
        s = score(list(params))
        if best is None or s > score(best):
            best = list(params)
    steps = [(ax[1] - ax[0]) if len(ax) > 1 else Fraction(0) for ax in axes]
    for _ in range(refine):
        steps = [s / 2 for s in steps]
        improved = True
        while improved:
            improved = False
            for i, s in enumerate(steps):
                if not s:
                    continue
                for sgn in (1, -1):
                    trial = list(best)
                    trial[i] = trial[i] + sgn * s
                    if score(trial) > score(best):
                        best, improved = trial, True
    return SearchResult(best, cache[tuple(best)], evaluated)
