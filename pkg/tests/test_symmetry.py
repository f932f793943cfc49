from __future__ import annotations

from fractions import Fraction

import pytest

from framelets import (
    Filter,
    SymmetryType,
    check_interpolatory_center,
    coset_split,
    coset_symmetry_subgroup,
    coset_symmetry_type,
    detect_symmetry,
    has_symmetry,
    is_compatible,
    make_context,
    named_group,
    transfer_symmetry,
    upsample_shift,
)
from framelets.errors import ConditionNotMet, NotCompatible
from framelets.symmetry import SymmetryGroup, generate_group, identify_group

h = Fraction(1, 2)


def test_named_groups_are_groups():
    for name, n in [("D4", 8), ("D6", 12), ("H1", 4), ("H2", 4), ("G1", 4), ("G2", 4), ("G3", 4), ("H", 6), ("pmI", 2)]:
        assert len(named_group(name)) == n
    assert identify_group(named_group("G3")) == "H1"  # same element set
    with pytest.raises(ValueError):
        SymmetryGroup((((1, 0), (0, 1)), ((0, 1), (1, 0)), ((-1, 0), (0, 1))))


def test_generate_group():
    G = generate_group([[[0, 1], [1, 0]], [[-1, 0], [0, 1]]])
    assert len(G) == 8 and identify_group(G) == "D4"


def test_compatibility(quincunx, sqrt3, dyadic):
    assert is_compatible(quincunx, named_group("D4"))
    assert is_compatible(sqrt3, named_group("D6"))
    assert not is_compatible(sqrt3, named_group("D4"))
    assert is_compatible(dyadic, named_group("D6"))


def test_detect_fixture_symmetry(fx):
    t = detect_symmetry(fx("quincunx_a"), named_group("D4"))
    assert t.group.label() == "D4" and t.center == (0, 0) and t.sign == 1
    t = detect_symmetry(fx("dyadic_a"), named_group("D6"))
    assert t.center == (0, 0)
    assert detect_symmetry(Filter({(0, 0): 1, (1, 0): -1}, dim=2), named_group("pmI")) == SymmetryType(
        named_group("pmI"), (h, 0), -1
    )
    assert detect_symmetry(Filter({(0, 0): 1, (1, 0): 2}, dim=2), named_group("pmI")) is None


COSET_CASES = [
    ("quincunx_a", [[1, 1], [1, -1]], "D4", (1, 0), "D4", (-h, -h)),
    ("dyadic_a", [[2, 0], [0, 2]], "D6", (1, 0), "G1", (-h, 0)),
    ("dyadic_a", [[2, 0], [0, 2]], "D6", (0, 1), "G2", (0, -h)),
    ("dyadic_a", [[2, 0], [0, 2]], "D6", (1, 1), "H1", (-h, -h)),
    ("sqrt3_a", [[1, -2], [2, -1]], "D6", (-1, 0), "H", (Fraction(-1, 3), Fraction(-2, 3))),
    ("sqrt3_a", [[1, -2], [2, -1]], "D6", (0, 1), "H", (Fraction(-2, 3), Fraction(-1, 3))),
]


@pytest.mark.parametrize("name,M,group,gamma,sub,center", COSET_CASES)
def test_coset_symmetry_prediction(name, M, group, gamma, sub, center, fx):
    ctx = make_context(M)
    t = coset_symmetry_type(SymmetryType(named_group(group), (0, 0), 1), gamma, ctx)
    assert identify_group(t.group) == sub
    assert t.center == center and t.sign == 1
    # the actual coset of the fixture carries the predicted symmetry
    assert has_symmetry(coset_split(fx(name), ctx)[gamma], t)


def test_coset_subgroup_requires_compatibility(sqrt3):
    with pytest.raises(NotCompatible):
        coset_symmetry_subgroup(named_group("D4"), (0, 1), sqrt3)


def test_transfer_symmetry(quincunx):
    u = Filter({(0, 0): 1, (1, 0): -1}, dim=2)
    t = SymmetryType(named_group("pmI"), (h, 0), -1)
    t2 = transfer_symmetry(t, (1, 0), quincunx)
    assert has_symmetry(upsample_shift(u, (1, 0), quincunx), t2)


def test_interpolatory_center_branches(quincunx, dyadic, fx):
    diag = check_interpolatory_center(fx("quincunx_a"), quincunx, SymmetryType(named_group("D4"), (0, 0), 1))
    assert diag.branch == 1 and diag.consistent
    a = Filter({(0, 0): Fraction(1, 4), (1, 0): Fraction(1, 4), (0, 1): Fraction(1, 4), (1, -1): Fraction(1, 4)}, dim=2)
    t = detect_symmetry(a, named_group("pmI"))
    diag = check_interpolatory_center(a, dyadic, t)
    assert diag.branch == 2 and diag.consistent and diag.sum_rules <= 1
    with pytest.raises(ConditionNotMet):
        check_interpolatory_center(fx("quincunx_a"), quincunx, SymmetryType(named_group("trivial"), (0, 0), 1))
