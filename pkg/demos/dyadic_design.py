"""Search a one-parameter family of hexagonally symmetric masks for smoothness.

Run with ``python3 demos/dyadic_design.py``.
"""

from __future__ import annotations

from fractions import Fraction

from framelets import (
    DesignConstraints,
    SymmetryType,
    build_dual_bank,
    detect_symmetry,
    instantiate,
    make_context,
    named_group,
    optimize_sm2,
    parametrize,
    verify_dual_bank,
    with_coordinates,
)

ctx = make_context([[2, 0], [0, 2]])
D6 = named_group("D6")
family = parametrize([(-3, 3), (-3, 3)], ctx, DesignConstraints(4, True, SymmetryType(D6, (0, 0), 1)))
family = with_coordinates(family, [(0, 3)], ["t"])
print(f"family dimension: {family.dimension}")

# A coarse scan of t; the estimator is cheap enough for a few dozen points.
step = Fraction(1, 128)
result = optimize_sm2(family, [(-4 * step, 4 * step, step)], refine=2)
for params, score in sorted(result.evaluated):
    print(f"  t = {str(params[0]):>7}: sm2 = {score:.4f}")
print(f"best t = {result.params[0]}, sm2 = {result.estimate.sm2:.4f}, continuous: {result.certifies_continuity}")

a = instantiate(family, result.params)
ta = instantiate(family, [Fraction(-1, 64)])
bank = build_dual_bank(a, ta, ctx, 2, 2)
print(f"{len(bank)} high-pass pairs, identity holds = {verify_dual_bank(bank).identity_holds}")
for i, b in enumerate(bank.bs[:4], start=1):
    print(f"  b{i}: {detect_symmetry(b, D6) or 'no D6 symmetry about one center'}")
