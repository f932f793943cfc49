"""Design a quincunx interpolatory pair, build a dual framelet bank and check it.

Run with ``python3 demos/quincunx_dual.py [OUTDIR]``.
"""

from __future__ import annotations

import sys
from fractions import Fraction
from pathlib import Path

from framelets import (
    DesignConstraints,
    SymmetryType,
    build_dual_bank,
    instantiate,
    make_context,
    merge_proportional,
    named_group,
    parametrize,
    save_bank,
    sm2_estimate,
    subdivide_phi,
    verify_dual_bank,
    with_coordinates,
)
from framelets.cascade import export_grid

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_output/quincunx")
ctx = make_context([[1, 1], [1, -1]])

# Masks on [-3,3]^2 that are D4-symmetric, interpolatory and have 4 sum rules
# form a two-parameter family; use the coefficients at (-3,2) and (-3,0) as coordinates.
sym = SymmetryType(named_group("D4"), (0, 0), 1)
family = parametrize([(-3, 3), (-3, 3)], ctx, DesignConstraints(4, True, sym))
family = with_coordinates(family, [(-3, 2), (-3, 0)], ["t1", "t2"])
print(f"design family has {family.dimension} free parameters")

a = instantiate(family, [0, 0])
ta = instantiate(family, [0, Fraction(1, 64)])
for name, u in (("a", a), ("ta", ta)):
    est = sm2_estimate(u, ctx)
    print(f"sm2({name}) = {est.sm2:.4f}, so sm_inf >= {est.sm_inf_lower:.4f}")

# Two vanishing moments on each side; the explicit filters get four.
bank = build_dual_bank(a, ta, ctx, 2, 2)
rep = verify_dual_bank(bank, [named_group("D4")])
print(rep.text())

# b2 is a multiple of b1, so the two pairs fold into one.
reduced = merge_proportional(bank)
print(f"after merging proportional pairs: {len(reduced)} pairs, identity holds = {verify_dual_bank(reduced).identity_holds}")

out.mkdir(parents=True, exist_ok=True)
save_bank(reduced, out / "bank.json")
phi = subdivide_phi(a, ctx, 8)
export_grid(phi, out / "phi.csv")
print(f"bank and refinable function samples written to {out}")
