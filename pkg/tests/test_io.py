from __future__ import annotations

import json
from importlib import resources

import pytest

from framelets import build_dual_bank, build_quasitight, load_bank, save_bank
from framelets.io import bank_from_dict, bank_to_dict, filter_from_dict, filter_to_dict, family_from_dict, family_to_dict

FIXTURES = sorted(
    p.name[:-5]
    for p in resources.files("framelets").joinpath("data").iterdir()
    if p.name.endswith(".json") and not p.name.endswith("family.json") and p.name != "reference_values.json"
)


@pytest.mark.parametrize("name", FIXTURES)
def test_filter_round_trip(name, fx):
    u = fx(name)
    assert filter_from_dict(json.loads(json.dumps(filter_to_dict(u)))) == u


def test_fixture_layout(fx):
    obj = json.loads(resources.files("framelets").joinpath("data/quincunx_b1.json").read_text())
    assert obj["support"] == [[-2, 2], [-2, 2]]
    assert len(obj["coeffs"]) == 5 and all(isinstance(x, str) for row in obj["coeffs"] for x in row)


def test_bank_round_trip(tmp_path, quincunx, sqrt3, fx):
    dual = build_dual_bank(fx("quincunx_a"), fx("quincunx_ta"), quincunx, 2, 2)
    save_bank(dual, tmp_path / "d.json")
    back = load_bank(tmp_path / "d.json")
    assert back.bs == dual.bs and back.tbs == dual.tbs and back.tags == dual.tags
    text1 = (tmp_path / "d.json").read_text()
    save_bank(back, tmp_path / "d2.json")
    assert (tmp_path / "d2.json").read_text() == text1
    qt = build_quasitight(fx("sqrt3_a"), sqrt3, 2)
    back = bank_from_dict(json.loads(json.dumps(bank_to_dict(qt))))
    assert back.bs == qt.bs and back.eps == qt.eps


def test_bank_kind_validation(quincunx, fx):
    obj = bank_to_dict(build_dual_bank(fx("quincunx_a"), fx("quincunx_ta"), quincunx, 2, 2))
    obj["eps"] = [1]
    with pytest.raises(ValueError):
        bank_from_dict(obj)
    obj.pop("eps")
    obj["kind"] = "tight"
    with pytest.raises(ValueError):
        bank_from_dict(obj)


def test_family_round_trip(dyadic):
    from framelets import DesignConstraints, SymmetryType, named_group, parametrize

    fam = parametrize([(-3, 3), (-3, 3)], dyadic, DesignConstraints(4, True, SymmetryType(named_group("D6"), (0, 0), 1)))
    back = family_from_dict(json.loads(json.dumps(family_to_dict(fam))))
    assert back.base == fam.base and back.directions == fam.directions
    assert back.constraints.symmetry.group.same_elements(fam.constraints.symmetry.group)
