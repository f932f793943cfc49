"""Quasi-tight framelet bank for the sqrt(3) dilation from a single mask.

Run with ``python3 demos/sqrt3_quasitight.py``.
"""

from __future__ import annotations

from collections import Counter

from framelets import build_quasitight, make_context, sm2_estimate, vanishing_moment_order, verify_quasitight
from framelets.io import load_fixture

ctx = make_context([[1, -2], [2, -1]])
a = load_fixture("sqrt3_a")
print(f"cosets: {ctx.gamma}")
print(f"sm2(a) = {sm2_estimate(a, ctx).sm2:.5f}")

# m = 2 uses the four sum rules of a: every high-pass filter gets two
# vanishing moments and the explicit ones get four.
bank = build_quasitight(a, ctx, 2)
rep = verify_quasitight(bank)
print(f"{len(bank)} high-pass filters, identity holds = {rep.identity_holds}")
print("signs:", Counter(bank.eps))
print("vanishing moments:", [int(vanishing_moment_order(b)) for b in bank.bs])

# The signs matter: flipping any one of them breaks the identity.
print("with one sign flipped:", verify_quasitight(bank.with_sign_flipped(0)).identity_holds)
