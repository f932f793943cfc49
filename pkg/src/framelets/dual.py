"""Interpolatory dual framelet filter banks with prescribed vanishing moments.

Given interpolatory low-pass filters ``a`` and ``ta`` with ``n1 + n2`` sum
rules, the bank consists of

* ``b_1 = delta - a`` and ``tb_1 = ta - delta``;
* for every nonzero coset ``g``: ``b = sqrt(1/d_M) (delta - d_M up_g(a^[g]))``
  and the same for ``ta``, where ``up_g`` places a filter on ``g + M Z^d``;
* for every nonzero coset, the defect ``h_g = delta/d_M - d_M star(a^[g]) * ta^[g]``
  factored as ``sum_t star(u_t) * tu_t`` with ``vmo(u_t) >= n1`` and
  ``vmo(tu_t) >= n2``; each term is lifted by ``up_g``.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import (
    BadOrderSplit,
    InsufficientVanishingMoments,
    NoSolutionInBox,
    NotInterpolatory,
    NotNormalized,
    OrderBudgetExceeded,
)
from .laurent import Filter, Point, filter_sum, multi_indices, multi_indices_below, nabla_delta
from .lattice import DilationContext, coset_split, is_interpolatory, upsample_shift
from .linalg import solve_affine
from .moments import sum_rule_order, vanishing_moment_order
from .verify import verify_dual_bank

log = logging.getLogger(__name__)

MAX_RINGS = 3


@dataclass(frozen=True)
class DualBank:
    ctx: DilationContext
    a: Filter
    ta: Filter
    bs: tuple[Filter, ...]
    tbs: tuple[Filter, ...]
    tags: tuple[str, ...] = ()
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if len(self.bs) != len(self.tbs):
            raise ValueError("bs and tbs must have equal length")

    def __len__(self) -> int:
        return len(self.bs)

    def pairs(self):
        return list(zip(self.bs, self.tbs))


def _gamma_of(j, ctx: DilationContext) -> Point:
    if isinstance(j, int):
        if not 2 <= j <= ctx.det:
            raise ValueError(f"coset index must lie in 2..{ctx.det}, got {j}")
        return ctx.gamma[j - 1]
    g = tuple(j)
    if g not in ctx.gamma or not any(g):
        raise ValueError(f"{g} is not a nonzero coset representative")
    return g


def _check_lowpass(u: Filter, ctx: DilationContext, name: str) -> None:
    if not u.is_rational:
        raise NotInterpolatory(f"{name} must have rational coefficients")
    if not is_interpolatory(u, ctx):
        raise NotInterpolatory(f"{name} is not interpolatory for this dilation")
    if u.coefficient_sum() != 1:
        raise NotNormalized(f"coefficients of {name} sum to {u.coefficient_sum()}, not 1")


def coset_defect(a: Filter, ta: Filter, j, ctx: DilationContext) -> Filter:
    """``h = delta/d_M - d_M star(a^[g]) * ta^[g]`` for the coset ``g`` (index ``j`` counts from 1)."""
    g = _gamma_of(j, ctx)
    _check_lowpass(a, ctx, "a")
    _check_lowpass(ta, ctx, "ta")
    ca = coset_split(a, ctx)[g]
    cta = coset_split(ta, ctx)[g]
    return Filter.delta(ctx.dim, Fraction(1, ctx.det)) - (ca.star() * cta).scale(ctx.det)


def explicit_highpass(u: Filter, gamma: Sequence[int], ctx: DilationContext) -> Filter:
    """``sqrt(1/d_M) (delta - d_M up_gamma(u^[gamma]))``."""
    part = coset_split(u, ctx)[tuple(gamma)]
    inner = Filter.delta(ctx.dim) - upsample_shift(part, gamma, ctx).scale(ctx.det)
    return inner.times_sqrt(Fraction(1, ctx.det))


# -- factorization in the difference ideal ----------------------------------
def _solve_on_boxes(
    target: Filter,
    gens: Sequence[Filter],
    boxes: Sequence[Sequence[tuple[int, int]]],
    moment_order: int = 0,
) -> list[Filter] | None:
    """Find ``v_i`` supported on ``boxes[i]`` with ``sum gens[i] * v_i = target``.

    When ``moment_order > 0`` every ``v_i`` must also have that many vanishing
    moments.  Free unknowns are set to zero.
    """
    d = target.dim
    cols: list[tuple[int, Point]] = []
    for i, box in enumerate(boxes):
        for p in itertools.product(*(range(lo, hi + 1) for lo, hi in box)):
            cols.append((i, p))
    rows: dict[Point, dict[int, Fraction]] = {}
    for col, (i, p) in enumerate(cols):
        for q, val in gens[i].items():
            k = tuple(x + y for x, y in zip(p, q))
            rows.setdefault(k, {})[col] = val
    eqs = []
    rhs = []
    for k in sorted(set(rows) | set(target.points())):
        eqs.append(rows.get(k, {}))
        rhs.append(target[k])
    if moment_order:
        for i in range(len(gens)):
            for mu in multi_indices_below(moment_order, d):
                row = {}
                for col, (ii, p) in enumerate(cols):
                    if ii == i:
                        val = 1
                        for x, m in zip(p, mu):
                            val *= x**m
                        if val:
                            row[col] = val
                eqs.append(row)
                rhs.append(0)
    res = solve_affine(eqs, rhs, len(cols))
    if res is None:
        return None
    x0, _ = res
    parts: list[dict] = [{} for _ in gens]
    for (i, p), v in zip(cols, x0):
        if v:
            parts[i][p] = v
    return [Filter(pv, dim=d) for pv in parts]


def _grow(box, r: int):
    return [(lo - r, hi + r) for lo, hi in box]


def difference_ideal_divide(h: Filter, n: int) -> dict[Point, Filter]:
    """Write ``h = sum_{|alpha|=n} nabla^alpha * v_alpha`` exactly.

    Each ``v_alpha`` is sought on ``fsupp(h)`` shrunk by ``alpha`` at the top
    end, enlarged ring by ring if that box is infeasible.
    """
    if not h.is_rational:
        raise ValueError("the filter to divide must be rational")
    d = h.dim
    alphas = multi_indices(n, d)
    if h.is_zero():
        return {al: Filter.zero(d) for al in alphas}
    if vanishing_moment_order(h, n) < n:
        raise InsufficientVanishingMoments(f"filter has fewer than {n} vanishing moments")
    gens = [nabla_delta(al) for al in alphas]
    box = h.support
    for ring in range(MAX_RINGS + 1):
        boxes = [_grow([(lo, hi - m) for (lo, hi), m in zip(box, al)], ring) for al in alphas]
        sol = _solve_on_boxes(h, gens, boxes)
        if sol is not None:
            out = dict(zip(alphas, sol))
            if filter_sum((g * v for g, v in zip(gens, sol)), d) != h:
                raise AssertionError("division failed reconvolution check")
            return out
    raise NoSolutionInBox(f"no division of order {n} found within {MAX_RINGS} rings")


def _first_below(alpha: Point, n1: int) -> Point:
    for mu in multi_indices(n1, len(alpha)):
        if all(m <= a for m, a in zip(mu, alpha)):
            return mu
    raise BadOrderSplit(f"{alpha} has no sub-index of order {n1}")


def split_vanishing_factors(
    vs: Mapping[Point, Filter], n1: int, n2: int, group_terms: bool = True
) -> list[tuple[Filter, Filter]]:
    """Turn ``sum nabla^alpha * v_alpha`` into pairs ``(u, tu)`` with ``sum star(u) * tu`` equal to it.

    ``alpha`` splits as ``mu + nu`` with ``mu`` the first order-``n1`` index
    below ``alpha``; ``u = star(nabla^mu)`` and ``tu = nabla^nu * v_alpha``.
    With ``group_terms`` all ``alpha`` sharing a ``mu`` are summed into one pair.
    """
    if n1 < 1 or n2 < 1:
        raise BadOrderSplit("both vanishing-moment orders must be at least 1")
    if not vs:
        return []
    dim = next(iter(vs)).__len__()
    for al in vs:
        if sum(al) != n1 + n2:
            raise BadOrderSplit(f"|{al}| != {n1} + {n2}")
    terms: dict[Point, Filter] = {}
    out = []
    for al in multi_indices(n1 + n2, dim):
        v = vs.get(al)
        if v is None or v.is_zero():
            continue
        mu = _first_below(al, n1)
        nu = tuple(a - m for a, m in zip(al, mu))
        tu = nabla_delta(nu) * v
        if group_terms:
            terms[mu] = terms[mu] + tu if mu in terms else tu
        else:
            out.append((nabla_delta(mu).star(), tu))
    if group_terms:
        for mu in multi_indices(n1, dim):
            if mu in terms and not terms[mu].is_zero():
                out.append((nabla_delta(mu).star(), terms[mu]))
    return out


def _find_image(q: Filter, gens: Sequence[Filter]) -> tuple[int, int, Point] | None:
    """Return ``(j, sign, s)`` with ``q == sign * shift(gens[j], s)``."""
    qlo = tuple(lo for lo, _ in q.support)
    for j, p in enumerate(gens):
        if len(p) != len(q):
            continue
        s = tuple(a - lo for a, (lo, _) in zip(qlo, p.support))
        ps = p.shift(s)
        if ps == q:
            return j, 1, s
        if -ps == q:
            return j, -1, s
    return None


def factor_with_generators(
    h: Filter, gens: Sequence[Filter], n2: int, group=None, rings: int = MAX_RINGS
) -> list[tuple[Filter, Filter]]:
    """Solve ``sum star(p_i) * tu_i = h`` with ``vmo(tu_i) >= n2`` for given ``p_i``.

    When ``group`` (a :class:`SymmetryGroup` under which ``h`` is symmetric
    about the origin) is given and permutes the generators up to sign and
    shift, the solution is averaged over the group so the duals inherit the
    symmetry of the generators.
    """
    d = h.dim
    gens = list(gens)
    if h.is_zero():
        return []
    sg = [p.star() for p in gens]
    hb = h.support
    base = [[(hlo - plo, hhi - phi) for (hlo, hhi), (plo, phi) in zip(hb, p.support)] for p in sg]
    sol = None
    for ring in range(rings + 1):
        boxes = [_grow([(lo, max(lo, hi)) for lo, hi in b], ring) for b in base]
        sol = _solve_on_boxes(h, sg, boxes, moment_order=n2)
        if sol is not None:
            break
    if sol is None:
        raise NoSolutionInBox("generators do not divide the defect on the allowed boxes")
    if group is not None:
        sol = _reynolds(sol, gens, group)
    out = [(p, tu) for p, tu in zip(gens, sol) if not tu.is_zero()]
    total = filter_sum((p.star() * tu for p, tu in out), d)
    if total != h:
        raise AssertionError("generator factorization failed reconvolution check")
    return out


def _reynolds(sol: list[Filter], gens: list[Filter], group) -> list[Filter]:
    d = gens[0].dim
    acc = [Filter.zero(d) for _ in gens]
    for E in group:
        for i, (p, tu) in enumerate(zip(gens, sol)):
            hit = _find_image(p.transform(E), gens)
            if hit is None:
                raise ValueError("generators are not permuted by the symmetry group")
            j, sign, s = hit
            moved = tu.transform(E).shift(tuple(-x for x in s))
            acc[j] = acc[j] + (moved if sign > 0 else -moved)
    return [f.scale(Fraction(1, len(group))) for f in acc]


def default_generators(n1: int, dim: int) -> list[Filter]:
    return [nabla_delta(mu).star() for mu in multi_indices(n1, dim)]


def factor_defect(
    h: Filter, n1: int, n2: int, generators: Sequence[Filter] | None = None, group=None
) -> list[tuple[Filter, Filter]]:
    """Pairs ``(u, tu)`` with ``sum star(u) * tu = h``, ``vmo(u) >= n1`` and ``vmo(tu) >= n2``."""
    if generators is None and group is None:
        vs = difference_ideal_divide(h, n1 + n2)
        return split_vanishing_factors(vs, n1, n2)
    gens = list(generators) if generators is not None else default_generators(n1, h.dim)
    for p in gens:
        if vanishing_moment_order(p, n1) < n1:
            raise InsufficientVanishingMoments("every generator needs n1 vanishing moments")
    return factor_with_generators(h, gens, n2, group)


# -- assembly -----------------------------------------------------------------
def merge_proportional(bank: DualBank) -> DualBank:
    """Fold pairs with ``b_k = l b_i`` and ``tb_k = n tb_i`` (``l n`` rational) into pair ``i``."""
    bs = list(bank.bs)
    tbs = list(bank.tbs)
    tags = list(bank.tags) or [""] * len(bs)
    alive = [True] * len(bs)
    for i in range(len(bs)):
        if not alive[i]:
            continue
        for k in range(i + 1, len(bs)):
            if not alive[k] or not alive[i]:
                continue
            lam = bs[k].ratio_to(bs[i])
            nu = tbs[k].ratio_to(tbs[i])
            if lam is None or nu is None or lam[1] != nu[1]:
                continue
            factor = 1 + lam[0] * nu[0] * lam[1]
            alive[k] = False
            if factor == 0:
                alive[i] = False
            else:
                tbs[i] = tbs[i].scale(factor)
                tags[i] = tags[i] + f"+merged({tags[k]})"
    keep = [i for i in range(len(bs)) if alive[i]]
    meta = dict(bank.metadata, merged=True)
    return DualBank(
        bank.ctx, bank.a, bank.ta, tuple(bs[i] for i in keep), tuple(tbs[i] for i in keep), tuple(tags[i] for i in keep), meta
    )


def build_dual_bank(
    a: Filter,
    ta: Filter,
    ctx: DilationContext,
    n1: int,
    n2: int,
    *,
    merge: bool = False,
    symmetry_group=None,
    generators: Mapping[Point, Sequence[Filter]] | Sequence[Filter] | None = None,
    verify: bool = True,
) -> DualBank:
    """Construct an interpolatory dual framelet filter bank.

    ``symmetry_group`` (the group under which ``a`` and ``ta`` are symmetric
    about the origin) switches the defect factorization to a symmetrized
    solve; ``generators`` fixes the primal factors per coset (a mapping from
    coset representative to a list) or for all cosets (a list).
    """
    _check_lowpass(a, ctx, "a")
    _check_lowpass(ta, ctx, "ta")
    if n1 < 1 or n2 < 1:
        raise BadOrderSplit("n1 and n2 must both be at least 1")
    budget = min(int(sum_rule_order(a, ctx)), int(sum_rule_order(ta, ctx)))
    if n1 + n2 > budget:
        raise OrderBudgetExceeded(f"n1 + n2 = {n1 + n2} exceeds the available {budget} sum rules")
    d = ctx.dim
    delta = Filter.delta(d)
    bs = [delta - a]
    tbs = [ta - delta]
    tags = ["explicit-b1"]
    for j, g in enumerate(ctx.gamma[1:], start=2):
        bs.append(explicit_highpass(a, g, ctx))
        tbs.append(explicit_highpass(ta, g, ctx))
        tags.append(f"explicit-bj:{j}")
    for j, g in enumerate(ctx.gamma[1:], start=2):
        h = coset_defect(a, ta, j, ctx)
        sub = None
        if symmetry_group is not None:
            from .symmetry import coset_symmetry_subgroup

            sub = coset_symmetry_subgroup(symmetry_group, g, ctx)
        gens = generators.get(g) if isinstance(generators, Mapping) else generators
        terms = factor_defect(h, n1, n2, gens, sub)
        for t, (u, tu) in enumerate(terms, start=1):
            bs.append(upsample_shift(u, g, ctx))
            tbs.append(upsample_shift(tu, g, ctx))
            tags.append(f"factor-term:{j},{t}")
    meta = {"n1": n1, "n2": n2}
    bank = DualBank(ctx, a, ta, tuple(bs), tuple(tbs), tuple(tags), meta)
    if merge:
        bank = merge_proportional(bank)
    if verify:
        rep = verify_dual_bank(bank)
        if not rep.identity_holds:
            raise AssertionError(f"constructed bank fails the identity at {rep.failing_entry}")
    return bank
