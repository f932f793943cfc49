from __future__ import annotations

from fractions import Fraction

from framelets import DualBank, Filter, build_dual_bank, coset_split, frequency_check, named_group, polyphase_defect, verify_bank
from framelets.verify import LaurentMatrix

from oracles import dual_identity_residual


def test_polyphase_defect_shape(quincunx, fx):
    N = polyphase_defect(fx("quincunx_a"), fx("quincunx_ta"), quincunx)
    assert isinstance(N, LaurentMatrix) and N.shape == (2, 2)
    # interpolatory cosets are delta/2, so the (0,0) entry is 1/2 - 1/4
    assert N[0, 0] == Filter.delta(2, Fraction(1, 4))
    assert N[0, 1] == -coset_split(fx("quincunx_ta"), quincunx)[(1, 0)].scale(Fraction(1, 2))


def test_report_contents(quincunx, fx):
    bank = build_dual_bank(fx("quincunx_a"), fx("quincunx_ta"), quincunx, 2, 2)
    rep = verify_bank(bank, [named_group("D4")])
    assert rep.ok and rep.count == 5 and rep.min_vmo() == 2
    assert rep.sr == 4 and rep.sr_dual == 4
    assert all(rep.inequalities.values())
    assert rep.coset_counts == {"explicit-b1": 1, "explicit-bj": 1, "factor-term": 3}
    assert rep.filters[0].symmetry.group.label() == "D4"
    d = rep.to_dict()
    assert d["identity_holds"] and len(d["filters"]) == 5
    assert "identity: holds" in rep.text()


def test_frequency_check_agrees_with_oracle(quincunx, fx):
    bank = build_dual_bank(fx("quincunx_a"), fx("quincunx_ta"), quincunx, 2, 2)
    assert frequency_check(bank) < 1e-12
    assert dual_identity_residual(bank) < 1e-12


def test_broken_bank_reports_failure(quincunx, fx):
    a = fx("quincunx_a")
    bank = DualBank(quincunx, a, a, (Filter.delta(2) - a,), (a - Filter.delta(2),))
    rep = verify_bank(bank)
    assert not rep.identity_holds and not rep.ok
    assert rep.failing_entry is not None
    assert frequency_check(bank) > 1e-3


def test_radical_entries_must_cancel(quincunx, fx):
    bank = build_dual_bank(fx("quincunx_a"), fx("quincunx_ta"), quincunx, 2, 2)
    bs = list(bank.bs)
    bs[1] = bs[1].scale(Fraction(2))
    rep = verify_bank(DualBank(quincunx, bank.a, bank.ta, tuple(bs), bank.tbs))
    assert not rep.identity_holds
