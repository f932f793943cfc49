from __future__ import annotations

from fractions import Fraction

import pytest

from framelets import (
    DesignConstraints,
    SymmetryType,
    detect_symmetry,
    instantiate,
    is_interpolatory,
    named_group,
    optimize_sm2,
    parametrize,
    solve_parameters,
    sum_rule_order,
    with_coordinates,
)
from framelets.errors import ConstraintViolation, Infeasible
from framelets.io import family_from_fixture

BOX = [(-3, 3), (-3, 3)]


@pytest.fixture(scope="module")
def quincunx_family(quincunx):
    fam = parametrize(BOX, quincunx, DesignConstraints(4, True, SymmetryType(named_group("D4"), (0, 0), 1)))
    return with_coordinates(fam, [(-3, 2), (-3, 0)], ["t1", "t2"])


@pytest.fixture(scope="module")
def dyadic_family(dyadic):
    fam = parametrize(BOX, dyadic, DesignConstraints(4, True, SymmetryType(named_group("D6"), (0, 0), 1)))
    return with_coordinates(fam, [(0, 3)], ["t"])


def test_quincunx_family(quincunx_family, fx):
    fam = quincunx_family
    assert fam.dimension == 2
    assert instantiate(fam, [0, 0]) == fx("quincunx_a")
    assert instantiate(fam, [0, Fraction(1, 64)]) == fx("quincunx_ta")
    _, _, constant, directions, _ = family_from_fixture("quincunx_family")
    assert fam.base == constant and fam.directions == directions


def test_dyadic_family(dyadic_family, fx):
    fam = dyadic_family
    assert fam.dimension == 1
    assert instantiate(fam, [0]) == fx("dyadic_a")
    assert instantiate(fam, [Fraction(-1, 64)]) == fx("dyadic_ta")
    assert solve_parameters(fam, fx("dyadic_ta")) == [Fraction(-1, 64)]


@pytest.mark.parametrize("t", [(0, 0), (Fraction(1, 7), Fraction(-2, 9)), (3, Fraction(1, 64))])
def test_instances_satisfy_constraints(quincunx_family, quincunx, t):
    u = instantiate(quincunx_family, t)
    assert is_interpolatory(u, quincunx)
    assert sum_rule_order(u, quincunx) >= 4
    assert detect_symmetry(u, named_group("D4")).center == (0, 0)


def test_wrong_arity(quincunx_family):
    with pytest.raises(ValueError):
        instantiate(quincunx_family, [0])


def test_constraint_violation_detected(quincunx_family):
    from dataclasses import replace

    broken = replace(quincunx_family, base=quincunx_family.base.shift((1, 0)))
    with pytest.raises(ConstraintViolation):
        instantiate(broken, [0, 0])


def test_infeasible(dyadic):
    with pytest.raises(Infeasible):
        parametrize(BOX, dyadic, DesignConstraints(2, True, SymmetryType(named_group("pmI"), (Fraction(1, 2), 0), 1)))


def test_optimize_dyadic(dyadic_family):
    res = optimize_sm2(dyadic_family, [[Fraction(-1, 64), 0]])
    assert res.params == [0]
    assert res.estimate.sm2 == pytest.approx(2.4408, abs=1e-3)
    scores = sorted(s for _, s in res.evaluated)
    assert scores[0] == pytest.approx(1.7658, abs=1e-3)
    assert res.certifies_continuity


def test_optimize_quincunx_grid(quincunx_family):
    step = Fraction(1, 64)
    res = optimize_sm2(quincunx_family, [(-2 * step, 2 * step, step)] * 2)
    assert len(res.evaluated) == 25
    assert res.estimate.sm2 >= 2.44


def test_singleton_family(quincunx):
    fam = parametrize([(-2, 2), (-2, 2)], quincunx, DesignConstraints(4, True, SymmetryType(named_group("D4"), (0, 0), 1)))
    assert fam.dimension == 0
    res = optimize_sm2(fam, [])
    assert res.params == [] and res.estimate.sm2 > 0
