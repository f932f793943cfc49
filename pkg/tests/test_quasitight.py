from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from framelets import Filter, build_quasitight, has_zero_coset, hermitian_sos_decompose, vanishing_moment_order, verify_quasitight
from framelets.errors import InsufficientVanishingMoments, NotHermitian, OddSumRuleOrder
from framelets.laurent import filter_sum, nabla_delta

from conftest import filters
from oracles import quasitight_identity_residual


def _reexpand(terms, dim):
    return filter_sum(((u.star() * u) if e > 0 else -(u.star() * u) for e, u in terms), dim)


@pytest.fixture(scope="module")
def sqrt3_bank(sqrt3, fx):
    return build_quasitight(fx("sqrt3_a"), sqrt3, 2)


def test_sqrt3_bank(sqrt3_bank, fx):
    bank = sqrt3_bank
    assert verify_quasitight(bank).identity_holds
    assert quasitight_identity_residual(bank) < 1e-12
    assert bank.bs[0] == fx("sqrt3_b1") and bank.bs[0][(0, 0)] == Fraction(162, 243)
    assert bank.bs[1] == fx("sqrt3_b2") and bank.bs[2] == fx("sqrt3_b3")
    assert bank.eps[:3] == (-1, 1, 1)
    assert [int(vanishing_moment_order(b)) for b in bank.bs[:3]] == [4, 4, 4]
    assert all(vanishing_moment_order(b) >= 2 for b in bank.bs)
    assert all(has_zero_coset(b, bank.ctx) for b in bank.bs)


def test_sign_flip_breaks_identity(sqrt3_bank):
    for i in (0, 3, len(sqrt3_bank) - 1):
        assert not verify_quasitight(sqrt3_bank.with_sign_flipped(i)).identity_holds


def test_sos_degenerate_merge():
    A = Filter({(-1, 0): -1, (0, 0): 2, (1, 0): -1}, dim=2)
    terms = hermitian_sos_decompose(A, 1)
    assert len(terms) == 1 and terms[0][0] == 1
    assert terms[0][1] in (nabla_delta((1, 0)), nabla_delta((1, 0)).star())
    assert _reexpand(terms, 2) == A


def test_sos_errors():
    with pytest.raises(NotHermitian):
        hermitian_sos_decompose(Filter({(1, 0): 1}, dim=2), 1)
    with pytest.raises(InsufficientVanishingMoments):
        hermitian_sos_decompose(Filter.delta(2), 1)


def test_quasitight_needs_enough_sum_rules(quincunx, fx):
    with pytest.raises(OddSumRuleOrder):
        build_quasitight(fx("quincunx_a"), quincunx, 3)


@settings(max_examples=30, deadline=None)
@given(filters(max_terms=4, radius=2), filters(max_terms=4, radius=2), st.sampled_from([(1, 0), (0, 1)]), st.sampled_from([(1, 0), (0, 1)]))
def test_sos_reexpansion_random(v, w, mu, nu):
    p = nabla_delta(mu) * v
    q = nabla_delta(nu) * w
    A = p.star() * q + q.star() * p
    if A.is_zero():
        return
    terms = hermitian_sos_decompose(A, 1)
    assert _reexpand(terms, 2) == A
    assert all(vanishing_moment_order(u) >= 1 for _, u in terms)
