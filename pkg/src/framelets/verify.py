"""Exact polyphase verification of dual and quasi-tight filter banks.

For a dual bank the identity checked is

    d_M^{-1} I - [a*^{[g_r]} ta^{[g_c]}]_{r,c} = sum_l [b_l*^{[g_r]} tb_l^{[g_c]}]_{r,c}

entry by entry over the cosets ``g`` of ``M``; for a quasi-tight bank the
right-hand side carries the signs ``eps_l`` and ``tb_l = b_l``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .laurent import Filter
from .lattice import DilationContext, coset_split, has_zero_coset
from .moments import Order, linear_phase_moment_order, mixing_filter, sum_rule_order, vanishing_moment_order


class LaurentMatrix:
    """A rectangular grid of filters sharing one dimension."""

    def __init__(self, entries: Sequence[Sequence[Filter]]):
        self.entries = [list(r) for r in entries]
        if not self.entries or any(len(r) != len(self.entries[0]) for r in self.entries):
            raise ValueError("entries must form a non-empty rectangle")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), len(self.entries[0])

    def __getitem__(self, rc) -> Filter:
        r, c = rc
        return self.entries[r][c]

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentMatrix) and self.entries == other.entries

    def __repr__(self) -> str:
        return f"LaurentMatrix({self.shape[0]}x{self.shape[1]})"


def polyphase_defect(a: Filter, ta: Filter, ctx: DilationContext) -> LaurentMatrix:
    """``d_M^{-1} delta(r-c) delta - star(a^[g_r]) * ta^[g_c]``."""
    ca = coset_split(a, ctx)
    cta = coset_split(ta, ctx)
    base = Filter.delta(ctx.dim, Fraction(1, ctx.det))
    rows = []
    for r, gr in enumerate(ctx.gamma):
        sa = ca[gr].star()
        rows.append([(base if r == c else Filter.zero(ctx.dim)) - sa * cta[gc] for c, gc in enumerate(ctx.gamma)])
    return LaurentMatrix(rows)


def _outer_sum(pairs, ctx: DilationContext) -> list[list[dict[int, Filter]]]:
    """Entry-wise sums of ``sign * star(u^[g_r]) * v^[g_c]``, grouped by radicand."""
    n = ctx.det
    acc: list[list[dict[int, Filter]]] = [[{} for _ in range(n)] for _ in range(n)]
    for sign, u, v in pairs:
        cu = coset_split(u, ctx)
        cv = coset_split(v, ctx)
        for r, gr in enumerate(ctx.gamma):
            su = cu[gr].star()
            if su.is_zero():
                continue
            for c, gc in enumerate(ctx.gamma):
                term = su * cv[gc]
                if term.is_zero():
                    continue
                if sign < 0:
                    term = -term
                slot = acc[r][c]
                slot[term.radicand] = slot[term.radicand] + term if term.radicand in slot else term
    return acc


@dataclass
class FilterReport:
    index: int
    tag: str
    vmo: Order
    vmo_dual: Order | None
    zero_coset: bool
    zero_coset_dual: bool | None
    symmetry: object = None
    symmetry_dual: object = None


@dataclass
class BankReport:
    kind: str
    identity_holds: bool
    failing_entry: tuple[int, int] | None
    residual: Filter | None
    filters: list[FilterReport]
    sr: Order
    sr_dual: Order | None
    lpm_mixing: Order | None
    inequalities: dict[str, bool]
    count: int
    coset_counts: dict[str, int]
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.identity_holds and all(f.zero_coset and f.zero_coset_dual is not False for f in self.filters)

    def min_vmo(self) -> int:
        return min((int(f.vmo) for f in self.filters), default=0)

    def min_vmo_dual(self) -> int:
        return min((int(f.vmo_dual) for f in self.filters if f.vmo_dual is not None), default=0)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "identity_holds": self.identity_holds,
            "failing_entry": list(self.failing_entry) if self.failing_entry else None,
            "sr": str(self.sr),
            "sr_dual": None if self.sr_dual is None else str(self.sr_dual),
            "lpm_mixing": None if self.lpm_mixing is None else str(self.lpm_mixing),
            "inequalities": self.inequalities,
            "count": self.count,
            "coset_counts": self.coset_counts,
            "filters": [
                {
                    "index": f.index,
                    "tag": f.tag,
                    "vmo": str(f.vmo),
                    "vmo_dual": None if f.vmo_dual is None else str(f.vmo_dual),
                    "zero_coset": f.zero_coset,
                    "zero_coset_dual": f.zero_coset_dual,
                    "symmetry": None if f.symmetry is None else repr(f.symmetry),
                    "symmetry_dual": None if f.symmetry_dual is None else repr(f.symmetry_dual),
                }
                for f in self.filters
            ],
            "notes": self.notes,
        }

    def text(self) -> str:
        lines = [f"{self.kind} bank with {self.count} high-pass filter(s)"]
        lines.append(f"identity: {'holds' if self.identity_holds else 'FAILS at entry ' + str(self.failing_entry)}")
        lines.append(f"sum rules: {self.sr}" + (f" / {self.sr_dual}" if self.sr_dual is not None else ""))
        if self.lpm_mixing is not None:
            lines.append(f"lpm of mixing filter: {self.lpm_mixing}")
        for f in self.filters:
            extra = f" / {f.vmo_dual}" if f.vmo_dual is not None else ""
            sym = f"  sym {f.symmetry!r}" if f.symmetry is not None else ""
            lines.append(f"  b{f.index} [{f.tag}] vmo {f.vmo}{extra} zero-coset {f.zero_coset}{sym}")
        for k, v in self.inequalities.items():
            lines.append(f"  {k}: {'ok' if v else 'VIOLATED'}")
        lines.extend(self.notes)
        return "\n".join(lines)


def _compare(N: LaurentMatrix, acc) -> tuple[bool, tuple[int, int] | None, Filter | None]:
    n = N.shape[0]
    for r in range(n):
        for c in range(n):
            slot = dict(acc[r][c])
            rational = slot.pop(1, Filter.zero(N[r, c].dim))
            diff = N[r, c] - rational
            if not diff.is_zero():
                return False, (r, c), diff
            for rad, f in slot.items():
                if not f.is_zero():
                    return False, (r, c), f
    return True, None, None


def _detect(u: Filter, groups):
    if not groups or u.is_zero():
        return None
    from .symmetry import detect_symmetry

    for G in groups:
        t = detect_symmetry(u, G)
        if t is not None:
            return t
    return None


def _coset_counts(tags: Sequence[str]) -> dict[str, int]:
    counts: dict[str, int] = {}
    for t in tags:
        key = t.split(":")[0] if ":" in t else t
        counts[key] = counts.get(key, 0) + 1
    return counts


def verify_dual_bank(bank, groups=None, cap: int = 16) -> BankReport:
    """Exact check of the dual identity plus moment and interpolation diagnostics."""
    ctx = bank.ctx
    N = polyphase_defect(bank.a, bank.ta, ctx)
    acc = _outer_sum([(1, b, tb) for b, tb in zip(bank.bs, bank.tbs)], ctx)
    holds, where, residual = _compare(N, acc)
    tags = list(getattr(bank, "tags", ())) or ["?"] * len(bank.bs)
    filters = []
    for i, (b, tb) in enumerate(zip(bank.bs, bank.tbs), start=1):
        filters.append(
            FilterReport(
                i,
                tags[i - 1],
                vanishing_moment_order(b, cap),
                vanishing_moment_order(tb, cap),
                has_zero_coset(b, ctx),
                has_zero_coset(tb, ctx),
                _detect(b, groups),
                _detect(tb, groups),
            )
        )
    sr_a = sum_rule_order(bank.a, ctx, cap)
    sr_ta = sum_rule_order(bank.ta, ctx, cap)
    lpm_u = linear_phase_moment_order(Filter.delta(ctx.dim) + mixing_filter(bank.a, bank.ta), cap)
    ineq = {}
    if filters:
        mb = min(int(f.vmo) for f in filters)
        mtb = min(int(f.vmo_dual) for f in filters)
        ineq["min vmo(b) <= sr(ta)"] = sr_ta.saturated or mb <= int(sr_ta)
        ineq["min vmo(tb) <= sr(a)"] = sr_a.saturated or mtb <= int(sr_a)
        ineq["min vmo(b) + min vmo(tb) <= lpm(mixing)"] = lpm_u.saturated or mb + mtb <= int(lpm_u)
    return BankReport("dual", holds, where, residual, filters, sr_a, sr_ta, lpm_u, ineq, len(filters), _coset_counts(tags))


def verify_quasitight(bank, groups=None, cap: int = 16) -> BankReport:
    ctx = bank.ctx
    N = polyphase_defect(bank.a, bank.a, ctx)
    acc = _outer_sum([(e, b, b) for e, b in zip(bank.eps, bank.bs)], ctx)
    holds, where, residual = _compare(N, acc)
    tags = list(getattr(bank, "tags", ())) or ["?"] * len(bank.bs)
    filters = [
        FilterReport(i, tags[i - 1], vanishing_moment_order(b, cap), None, has_zero_coset(b, ctx), None, _detect(b, groups))
        for i, b in enumerate(bank.bs, start=1)
    ]
    sr_a = sum_rule_order(bank.a, ctx, cap)
    ineq = {}
    if filters:
        ineq["min vmo(b) <= sr(a)"] = sr_a.saturated or min(int(f.vmo) for f in filters) <= int(sr_a)
    return BankReport("quasitight", holds, where, residual, filters, sr_a, None, None, ineq, len(filters), _coset_counts(tags))


def verify_bank(bank, groups=None) -> BankReport:
    if hasattr(bank, "eps"):
        return verify_quasitight(bank, groups)
    return verify_dual_bank(bank, groups)


def frequency_check(bank, samples: int = 20, seed: int = 0) -> float:
    """Largest deviation of the modulated frequency-domain identity at random points.

    Checks ``conj(a(x)) ta(x + 2 pi w) + sum_l eps_l conj(b_l(x)) tb_l(x + 2 pi w) = delta(w)``.
    """
    rng = np.random.default_rng(seed)
    ctx = bank.ctx
    quasi = hasattr(bank, "eps")
    ta = bank.a if quasi else bank.ta
    tbs = bank.bs if quasi else bank.tbs
    eps = bank.eps if quasi else [1] * len(bank.bs)
    worst = 0.0
    for _ in range(samples):
        xi = rng.uniform(-np.pi, np.pi, ctx.dim)
        lhs_a = np.conj(bank.a.evaluate(xi))
        lhs_b = [np.conj(b.evaluate(xi)) for b in bank.bs]
        for j, w in enumerate(ctx.omega):
            x2 = xi + 2 * np.pi * np.array([float(v) for v in w])
            val = lhs_a * ta.evaluate(x2) + sum(e * cb * tb.evaluate(x2) for e, cb, tb in zip(eps, lhs_b, tbs))
            worst = max(worst, abs(val - (1.0 if j == 0 else 0.0)))
    return worst
