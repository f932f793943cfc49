"""Quasi-tight interpolatory framelet filter banks from a single low-pass filter."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .dual import _check_lowpass, _first_below, difference_ideal_divide, explicit_highpass
from .errors import InsufficientVanishingMoments, NotHermitian, OddSumRuleOrder
from .laurent import Filter, multi_indices, nabla_delta
from .lattice import DilationContext, coset_split, upsample_shift
from .moments import sum_rule_order, vanishing_moment_order
from .verify import verify_quasitight


@dataclass(frozen=True)
class QuasiTightBank:
    ctx: DilationContext
    a: Filter
    bs: tuple[Filter, ...]
    eps: tuple[int, ...]
    tags: tuple[str, ...] = ()
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if len(self.bs) != len(self.eps):
            raise ValueError("one sign per high-pass filter is required")
        if any(e not in (-1, 1) for e in self.eps):
            raise ValueError("signs must be +1 or -1")

    def __len__(self) -> int:
        return len(self.bs)

    def with_sign_flipped(self, i: int) -> "QuasiTightBank":
        eps = list(self.eps)
        eps[i] = -eps[i]
        return QuasiTightBank(self.ctx, self.a, self.bs, tuple(eps), self.tags, self.metadata)


def hermitian_sos_decompose(A: Filter, m: int) -> list[tuple[int, Filter]]:
    """Signed squares: ``A = sum eps_l star(u_l) * u_l`` with ``vmo(u_l) >= m``.

    ``A`` is divided in the difference ideal of order ``2m``; grouping the
    quotient by a leading order-``m`` index gives ``A = sum star(p) * q`` with
    both factors of order ``m``, and for Hermitian ``A`` each pair is polarized:
    ``(star(p) q + star(q) p) / 2 = |(p+q)/2|^2 - |(p-q)/2|^2``.
    """
    if A.star() != A:
        raise NotHermitian("filter is not equal to its adjoint")
    if m < 1:
        raise ValueError("m must be positive")
    if A.is_zero():
        return []
    if vanishing_moment_order(A, 2 * m) < 2 * m:
        raise InsufficientVanishingMoments(f"filter has fewer than {2 * m} vanishing moments")
    d = A.dim
    vs = difference_ideal_divide(A, 2 * m)
    grouped: dict = {}
    for al in multi_indices(2 * m, d):
        v = vs[al]
        if v.is_zero():
            continue
        mu = _first_below(al, m)
        nu = tuple(x - y for x, y in zip(al, mu))
        q = nabla_delta(nu) * v
        grouped[mu] = grouped[mu] + q if mu in grouped else q
    out: list[tuple[int, Filter]] = []
    half = Fraction(1, 2)
    for mu in multi_indices(m, d):
        q = grouped.get(mu)
        if q is None or q.is_zero():
            continue
        p = nabla_delta(mu).star()
        ratio = q.ratio_to(p)
        if ratio is not None and ratio[1] == 1:
            # star(p) q + star(q) p = 2 lam |p|^2 collapses to one square
            lam = ratio[0]
            out.append((1 if lam > 0 else -1, p.times_sqrt(abs(lam))))
            continue
        plus = (p + q).scale(half)
        minus = (p - q).scale(half)
        if not plus.is_zero():
            out.append((1, plus))
        if not minus.is_zero():
            out.append((-1, minus))
    total = Filter.zero(d)
    for e, u in out:
        sq = u.star() * u
        total = total + (sq if e > 0 else -sq)
    if total != A:
        raise AssertionError("signed sum of squares does not re-expand to the input")
    return out


def build_quasitight(a: Filter, ctx: DilationContext, m: int, *, verify: bool = True) -> QuasiTightBank:
    """Quasi-tight bank from an interpolatory ``a`` with at least ``2m`` sum rules."""
    _check_lowpass(a, ctx, "a")
    if m < 1:
        raise ValueError("m must be positive")
    sr = int(sum_rule_order(a, ctx))
    if 2 * m > sr:
        raise OddSumRuleOrder(f"2m = {2 * m} exceeds the sum rule order {sr}")
    d = ctx.dim
    bs = [Filter.delta(d) - a]
    eps = [-1]
    tags = ["explicit-b1"]
    for j, g in enumerate(ctx.gamma[1:], start=2):
        bs.append(explicit_highpass(a, g, ctx))
        eps.append(1)
        tags.append(f"explicit-bj:{j}")
    parts = coset_split(a, ctx)
    for j, g in enumerate(ctx.gamma[1:], start=2):
        c = parts[g]
        h = Filter.delta(d, Fraction(1, ctx.det)) - (c.star() * c).scale(ctx.det)
        for t, (e, u) in enumerate(hermitian_sos_decompose(h, m), start=1):
            bs.append(upsample_shift(u, g, ctx))
            eps.append(e)
            tags.append(f"factor-term:{j},{t}")
    bank = QuasiTightBank(ctx, a, tuple(bs), tuple(eps), tuple(tags), {"m": m})
    if verify:
        rep = verify_quasitight(bank)
        if not rep.identity_holds:
            raise AssertionError(f"constructed bank fails the identity at {rep.failing_entry}")
    return bank
