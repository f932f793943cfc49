"""Sum rules, vanishing moments and linear-phase moments as exact lattice sums."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod

from .laurent import Filter, Point, multi_indices
from .lattice import DilationContext

DEFAULT_CAP = 16


@dataclass(frozen=True)
class Order:
    """A moment order, possibly only known as a lower bound (``value >= cap``)."""

    value: int
    saturated: bool = False

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def __eq__(self, other) -> bool:
        if isinstance(other, Order):
            return (self.value, self.saturated) == (other.value, other.saturated)
        if isinstance(other, int):
            return not self.saturated and self.value == other
        return NotImplemented

    def __lt__(self, other) -> bool:
        return self.value < int(other)

    def __le__(self, other) -> bool:
        return self.value <= int(other)

    def __gt__(self, other) -> bool:
        return self.value > int(other)

    def __ge__(self, other) -> bool:
        return self.value >= int(other)

    def __hash__(self) -> int:
        return hash((self.value, self.saturated))

    def __str__(self) -> str:
        return f">={self.value}" if self.saturated else str(self.value)


@dataclass(frozen=True)
class MomentReport:
    sr: Order | None
    vmo: Order
    lpm: Order
    cap: int


def moment(u: Filter, mu: Point) -> Fraction:
    """``sum_k u(k) k^mu`` over the rational part of ``u``."""
    return sum((v * prod(x**m for x, m in zip(k, mu)) for k, v in u.items()), Fraction(0))


def _moments_of_degree(u: Filter, r: int) -> list[Fraction]:
    return [moment(u, mu) for mu in multi_indices(r, u.dim)]


def vanishing_moment_order(u: Filter, cap: int = DEFAULT_CAP) -> Order:
    """Largest ``m <= cap`` with all moments of order ``< m`` equal to zero."""
    if cap < 1:
        raise ValueError("cap must be positive")
    if u.is_zero():
        return Order(cap, True)
    for r in range(cap):
        if any(_moments_of_degree(u, r)):
            return Order(r)
    return Order(cap, True)


def linear_phase_moment_order(u: Filter, cap: int = DEFAULT_CAP) -> Order:
    """Largest ``m <= cap`` with ``sum u = 1`` and vanishing moments of orders ``1..m-1``."""
    if cap < 1:
        raise ValueError("cap must be positive")
    if not u.is_rational or u.coefficient_sum() != 1:
        return Order(0)
    for r in range(1, cap):
        if any(_moments_of_degree(u, r)):
            return Order(r)
    return Order(cap, True)


def coset_moments(a: Filter, ctx: DilationContext, mu: Point) -> dict[Point, Fraction]:
    """``S_mu(gamma) = sum_k a(gamma + M k) (gamma + M k)^mu`` for each gamma."""
    out = {g: Fraction(0) for g in ctx.gamma}
    for k, v in a.items():
        g, _ = ctx.reduce(k)
        out[g] += v * prod(x**m for x, m in zip(k, mu))
    return out


def sum_rule_order(a: Filter, ctx: DilationContext, cap: int = DEFAULT_CAP) -> Order:
    """Largest ``m <= cap`` such that every coset moment of order ``< m`` is coset independent."""
    if cap < 1:
        raise ValueError("cap must be positive")
    for r in range(cap):
        for mu in multi_indices(r, ctx.dim):
            if len(set(coset_moments(a, ctx, mu).values())) > 1:
                return Order(r)
    return Order(cap, True)


def mixing_filter(a: Filter, ta: Filter) -> Filter:
    """``delta - star(a) * ta``; its symbol is ``1 - conj(a^) ta^``."""
    return Filter.delta(a.dim) - a.star() * ta


def moment_report(u: Filter, ctx: DilationContext | None = None, cap: int = DEFAULT_CAP) -> MomentReport:
    sr = sum_rule_order(u, ctx, cap) if ctx is not None else None
    return MomentReport(sr=sr, vmo=vanishing_moment_order(u, cap), lpm=linear_phase_moment_order(u, cap), cap=cap)


vmo = vanishing_moment_order
lpm = linear_phase_moment_order
sr = sum_rule_order
