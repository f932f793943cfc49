from __future__ import annotations

import csv
import json
from fractions import Fraction

import numpy as np
import pytest

from framelets import Filter, export_grid, make_context, sample_psi, subdivide_phi
from framelets.errors import LevelMismatch, NotNormalized, UnsupportedFormat

ONE_D = make_context([[2]])
HAT = Filter({(-1,): Fraction(1, 4), (0,): Fraction(1, 2), (1,): Fraction(1, 4)}, dim=1)


def test_hat_function_samples():
    g = subdivide_phi(HAT, ONE_D, 3)
    assert g.exact is not None
    for k in range(-8, 9):
        assert g.exact[(k,)] == 1 - Fraction(abs(k), 8)
    assert g.integral() == pytest.approx(1.0)


def test_float_and_exact_agree(quincunx, fx):
    a = fx("quincunx_a")
    ex = subdivide_phi(a, quincunx, 4)
    fl = subdivide_phi(a, quincunx, 4, exact=False)
    assert ex.exact is not None and fl.exact is None
    for k in [(0, 0), (1, 0), (3, -1), (2, 2)]:
        assert ex.at(k) == pytest.approx(fl.at(k), abs=1e-12)


@pytest.mark.parametrize("name,M", [("quincunx_a", [[1, 1], [1, -1]]), ("dyadic_a", [[2, 0], [0, 2]]), ("sqrt3_a", [[1, -2], [2, -1]])])
def test_interpolatory_invariance(name, M, fx):
    ctx = make_context(M)
    n = 3
    g = subdivide_phi(fx(name), ctx, n)
    Mn = np.linalg.matrix_power(ctx.matrix(), n)
    for k in [(0, 0), (1, 0), (0, 1), (-1, 2), (2, -1)]:
        p = tuple(int(x) for x in Mn @ np.array(k))
        assert g.exact[p] == (1 if k == (0, 0) else 0)


def test_psi_samples(quincunx, fx):
    a, b1 = fx("quincunx_a"), fx("quincunx_b1")
    phi = subdivide_phi(a, quincunx, 4)
    psi = sample_psi(b1, phi, quincunx)
    assert psi.level == 5
    assert psi.integral() == pytest.approx(0.0, abs=1e-12)
    # psi(x) = 2 phi(Mx) - phi(x): one at the origin, zero at other integers
    M5 = np.linalg.matrix_power(quincunx.matrix(), 5)
    for k in [(0, 0), (1, 0), (0, -1), (1, 1)]:
        p = tuple(int(x) for x in M5 @ np.array(k))
        assert psi.at(p) == pytest.approx(1.0 if k == (0, 0) else 0.0, abs=1e-12)


def test_errors(quincunx, fx):
    with pytest.raises(NotNormalized):
        subdivide_phi(fx("quincunx_b1"), quincunx, 2)
    with pytest.raises(LevelMismatch):
        sample_psi(fx("quincunx_b1"), subdivide_phi(fx("quincunx_a"), quincunx, 0), quincunx)
    with pytest.raises(UnsupportedFormat):
        export_grid(subdivide_phi(HAT, ONE_D, 1), "/tmp/never.xml", "xml")


def test_export(tmp_path):
    g = subdivide_phi(HAT, ONE_D, 2)
    export_grid(g, tmp_path / "phi.csv", "csv")
    rows = list(csv.reader(open(tmp_path / "phi.csv")))
    assert rows[0] == ["x1", "value"]
    vals = {float(r[0]): float(r[1]) for r in rows[1:]}
    assert vals[0.0] == 1.0 and vals[0.25] == 0.75
    export_grid(g, tmp_path / "phi.json", "json")
    obj = json.load(open(tmp_path / "phi.json"))
    assert obj["level"] == 2 and len(obj["values"]) == len(rows) - 1
