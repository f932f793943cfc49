from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from framelets import DesignConstraints, Filter, instantiate, make_context, parametrize
from framelets.io import load_fixture

QUINCUNX = [[1, 1], [1, -1]]
DYADIC = [[2, 0], [0, 2]]
SQRT3 = [[1, -2], [2, -1]]
SHEAR = [[2, 1], [0, 2]]

ROUND_TRIP_DILATIONS = {"2": [[2]], "2I": DYADIC, "quincunx": QUINCUNX, "sqrt3": SQRT3, "shear": SHEAR}
SPLIT_DILATIONS = {"2I": DYADIC, "quincunx": QUINCUNX, "sqrt3": SQRT3, "3": [[3]], "shear": SHEAR}


@pytest.fixture(scope="session")
def quincunx():
    return make_context(QUINCUNX)


@pytest.fixture(scope="session")
def dyadic():
    return make_context(DYADIC)


@pytest.fixture(scope="session")
def sqrt3():
    return make_context(SQRT3)


@pytest.fixture(scope="session")
def fx():
    return load_fixture


def dyadic_unscaled(name: str) -> Filter:
    return load_fixture(f"{name}_unscaled").scale(Fraction(1, 32))


# -- random filters ------------------------------------------------------------
fractions = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 8))


@st.composite
def filters(draw, dim: int = 2, max_terms: int = 6, radius: int = 3):
    n = draw(st.integers(0, max_terms))
    pts = draw(st.lists(st.tuples(*[st.integers(-radius, radius)] * dim), min_size=n, max_size=n))
    vals = draw(st.lists(fractions, min_size=n, max_size=n))
    return Filter(dict(zip(pts, vals)), dim=dim)


_FAMILY_CACHE: dict = {}


def interpolatory_family(M, sr: int = 2):
    """Interpolatory masks with ``sr`` sum rules for ``M`` on a small box."""
    key = (str(M), sr)
    if key not in _FAMILY_CACHE:
        ctx = make_context(M)
        box = [(-3, 3)] * ctx.dim if ctx.dim == 1 else [(-2, 2)] * ctx.dim
        _FAMILY_CACHE[key] = (ctx, parametrize(box, ctx, DesignConstraints(sr, True)))
    return _FAMILY_CACHE[key]


def random_interpolatory(M, seed: int, sr: int = 2):
    ctx, fam = interpolatory_family(M, sr)
    rng = random.Random(seed)
    return ctx, instantiate(fam, [Fraction(rng.randint(-8, 8), 64) for _ in range(fam.dimension)])


# -- acceptance summary ---------------------------------------------------------
ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        ok, text = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {text}")
