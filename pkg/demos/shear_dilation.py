"""The constructions work for any expansive integer matrix, here a shear.

Run with ``python3 demos/shear_dilation.py``.
"""

from __future__ import annotations

from fractions import Fraction

from framelets import (
    DesignConstraints,
    build_dual_bank,
    build_quasitight,
    frequency_check,
    instantiate,
    make_context,
    parametrize,
    sum_rule_order,
    verify_bank,
)

ctx = make_context([[2, 1], [0, 2]])
print(f"|det M| = {ctx.det}, coset representatives {ctx.gamma}")

family = parametrize([(-2, 2), (-2, 2)], ctx, DesignConstraints(2, True))
print(f"interpolatory masks with two sum rules on [-2,2]^2: {family.dimension} parameters")
a = instantiate(family, [0] * family.dimension)
ta = instantiate(family, [Fraction(1, 32)] + [0] * (family.dimension - 1))
print(f"sr(a) = {sum_rule_order(a, ctx)}, sr(ta) = {sum_rule_order(ta, ctx)}")

for bank in (build_dual_bank(a, ta, ctx, 1, 1), build_quasitight(a, ctx, 1)):
    rep = verify_bank(bank)
    print(f"{rep.kind}: {rep.count} filters, exact identity {rep.identity_holds}, float residual {frequency_check(bank):.1e}")
