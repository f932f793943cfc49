from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from framelets import Filter, coset_merge, coset_split, is_interpolatory, make_context, upsample, upsample_shift
from framelets.errors import MissingCoset, NotExpansive, NotSquare
from framelets.lattice import has_zero_coset, parse_matrix

from conftest import SPLIT_DILATIONS, filters


def test_coset_representatives(quincunx, dyadic, sqrt3):
    assert quincunx.gamma == ((0, 0), (1, 0))
    assert dyadic.gamma == ((0, 0), (1, 0), (0, 1), (1, 1))
    assert sqrt3.gamma == ((0, 0), (-1, 0), (0, 1))
    assert quincunx.det == 2 and sqrt3.det == 3


def test_frequency_representatives(quincunx, dyadic):
    assert set(quincunx.omega) == {(0, 0), (Fraction(1, 2), Fraction(1, 2))}
    assert len(dyadic.omega) == 4


def test_reduce_round_trip(sqrt3):
    for k in [(5, -7), (0, 0), (-3, 2), (11, 4)]:
        g, n = sqrt3.reduce(k)
        assert g in sqrt3.gamma
        assert tuple(a + b for a, b in zip(g, sqrt3.apply(n))) == k


def test_bad_matrices():
    with pytest.raises(NotSquare):
        make_context([[1, 2, 3], [4, 5, 6]])
    with pytest.raises(NotExpansive):
        make_context([[1, 0], [0, 2]])
    assert parse_matrix("1 1; 1 -1") == [[1, 1], [1, -1]]


def test_interpolatory_fixtures(quincunx, dyadic, sqrt3, fx):
    assert is_interpolatory(fx("quincunx_a"), quincunx)
    assert is_interpolatory(fx("dyadic_ta"), dyadic)
    assert is_interpolatory(fx("sqrt3_a"), sqrt3)
    assert not is_interpolatory(Filter.delta(2, Fraction(1, 2)) + Filter({(1, 0): Fraction(1, 2)}, dim=2), dyadic)


def test_zero_coset_of_highpass(quincunx, fx):
    assert has_zero_coset(fx("quincunx_b1"), quincunx)
    # interpolatory masks also vanish on the 0-coset away from the origin
    assert has_zero_coset(fx("quincunx_a"), quincunx)
    assert not has_zero_coset(Filter({(0, 0): 1, (1, 1): 1}, dim=2), quincunx)


def test_merge_requires_all_cosets(quincunx):
    with pytest.raises(MissingCoset):
        coset_merge({(0, 0): Filter.delta(2)}, quincunx)


@pytest.mark.parametrize("name", sorted(SPLIT_DILATIONS))
@settings(max_examples=25, deadline=None)
@given(data=st.data())
def test_split_merge_round_trip(name, data):
    ctx = make_context(SPLIT_DILATIONS[name])
    u = data.draw(filters(dim=ctx.dim))
    parts = coset_split(u, ctx)
    assert set(parts) == set(ctx.gamma)
    assert coset_merge(parts, ctx) == u
    total = Filter.zero(ctx.dim)
    for g, p in parts.items():
        total = total + upsample_shift(p, g, ctx)
    assert total == u


def test_upsample_places_on_lattice(quincunx):
    u = Filter({(1, 0): 1, (0, 1): 2}, dim=2)
    assert upsample(u, quincunx) == Filter({(1, 1): 1, (1, -1): 2}, dim=2)
