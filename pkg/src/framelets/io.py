"""JSON file formats for filters, filter banks and design families.

Filter layout: ``coeffs`` is a nested list.  In two dimensions the first row
holds the largest second coordinate and each row runs over increasing first
coordinate, which is how masks are usually printed.  In general the outermost
axis is the last coordinate (descending) and the innermost is the first
coordinate (increasing); one-dimensional filters are a flat increasing list.
"""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

from .laurent import Filter, to_fraction
from .lattice import DilationContext, format_matrix, make_context


def _nest(u: Filter, box) -> Any:
    d = len(box)
    if d == 1:
        return [str(u[(x,)]) for x in range(box[0][0], box[0][1] + 1)]

    def build(axis: int, fixed: tuple[int, ...]):
        # axis counts down from d-1 to 0; fixed holds coordinates axis+1..d-1
        lo, hi = box[axis]
        if axis == 0:
            return [str(u[(x,) + fixed]) for x in range(lo, hi + 1)]
        return [build(axis - 1, (y,) + fixed) for y in range(hi, lo - 1, -1)]

    return build(d - 1, ())


def filter_to_dict(u: Filter, scale=None) -> dict:
    """Serialize a filter; ``scale`` (a rational) is factored out of the entries."""
    box = u.support or tuple((0, 0) for _ in range(u.dim))
    s = to_fraction(scale) if scale is not None else Fraction(1)
    body = u.scale(1 / s) if s != 1 else u
    return {
        "dim": u.dim,
        "radicand": u.radicand,
        "scale": str(s),
        "support": [list(b) for b in box],
        "coeffs": _nest(body, box),
    }


def filter_from_dict(obj: dict) -> Filter:
    dim = int(obj["dim"])
    box = [tuple(int(x) for x in b) for b in obj["support"]]
    if len(box) != dim:
        raise ValueError("support does not match dimension")
    scale = to_fraction(obj.get("scale", "1"))
    coeffs = obj["coeffs"]
    data = {}

    def walk(node, axis: int, fixed: tuple[int, ...]):
        lo, hi = box[axis]
        if not isinstance(node, list) or len(node) != hi - lo + 1:
            raise ValueError(f"coefficient array does not match support on axis {axis}")
        if axis == 0:
            for x, v in zip(range(lo, hi + 1), node):
                data[(x,) + fixed] = to_fraction(v) * scale
        else:
            for y, row in zip(range(hi, lo - 1, -1), node):
                walk(row, axis - 1, (y,) + fixed)

    if dim == 1:
        lo, hi = box[0]
        if len(coeffs) != hi - lo + 1:
            raise ValueError("coefficient array does not match support")
        for x, v in zip(range(lo, hi + 1), coeffs):
            data[(x,)] = to_fraction(v) * scale
    else:
        walk(coeffs, dim - 1, ())
    return Filter(data, dim=dim, radicand=int(obj.get("radicand", 1)))


def common_scale(u: Filter) -> Fraction:
    """Reciprocal of the lcm of denominators, used for compact output."""
    from math import lcm

    den = 1
    for _, v in u.items():
        den = lcm(den, v.denominator)
    return Fraction(1, den)


def read_json(path) -> Any:
    with open(path, encoding="utf-8") as f:
        return json.load(f)


def write_json(path, obj) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(obj, f, indent=1)
        f.write("\n")


def load_filter(path) -> Filter:
    return filter_from_dict(read_json(path))


def save_filter(u: Filter, path) -> None:
    write_json(path, filter_to_dict(u, common_scale(u) if u else None))


# -- packaged example data ---------------------------------------------------
def data_path(name: str):
    return resources.files("framelets") / "data" / name


def load_fixture(name: str) -> Filter:
    """Load a packaged filter, e.g. ``load_fixture("quincunx_a")``."""
    if not name.endswith(".json"):
        name += ".json"
    with data_path(name).open(encoding="utf-8") as f:
        return filter_from_dict(json.load(f))


def load_fixture_json(name: str) -> Any:
    if not name.endswith(".json"):
        name += ".json"
    with data_path(name).open(encoding="utf-8") as f:
        return json.load(f)


def family_from_fixture(name: str):
    """Return ``(ctx, params, constant, directions)`` from a packaged family table."""
    obj = load_fixture_json(name)
    ctx = make_context(obj["dilation"])
    box = obj["support"]

    def grid(rows):
        return filter_from_dict({"dim": 2, "support": box, "coeffs": rows})

    constant = grid(obj["constant"])
    directions = [grid(obj[p]) for p in obj["params"]]
    choices = {k: [Fraction(x) for x in v] for k, v in obj.get("choices", {}).items()}
    return ctx, list(obj["params"]), constant, directions, choices


# -- banks --------------------------------------------------------------------
def bank_to_dict(bank) -> dict:
    from .dual import DualBank
    from .quasitight import QuasiTightBank

    enc = lambda u: filter_to_dict(u, common_scale(u) if u else None)  # noqa: E731
    if isinstance(bank, DualBank):
        return {
            "kind": "dual",
            "dilation": format_matrix(bank.ctx.M),
            "a": enc(bank.a),
            "ta": enc(bank.ta),
            "bs": [enc(b) for b in bank.bs],
            "tbs": [enc(b) for b in bank.tbs],
            "metadata": dict(bank.metadata, tags=list(bank.tags)),
        }
    if isinstance(bank, QuasiTightBank):
        return {
            "kind": "quasitight",
            "dilation": format_matrix(bank.ctx.M),
            "a": enc(bank.a),
            "bs": [enc(b) for b in bank.bs],
            "eps": list(bank.eps),
            "metadata": dict(bank.metadata, tags=list(bank.tags)),
        }
    raise TypeError(f"not a filter bank: {type(bank).__name__}")


def bank_from_dict(obj: dict):
    from .dual import DualBank
    from .quasitight import QuasiTightBank

    kind = obj.get("kind")
    ctx: DilationContext = make_context(obj["dilation"])
    meta = dict(obj.get("metadata", {}))
    tags = tuple(meta.pop("tags", ()))
    if kind == "dual":
        if "eps" in obj:
            raise ValueError("dual bank files carry no signs")
        bs = [filter_from_dict(b) for b in obj["bs"]]
        tbs = [filter_from_dict(b) for b in obj["tbs"]]
        if len(bs) != len(tbs):
            raise ValueError("bs and tbs differ in length")
        return DualBank(ctx, filter_from_dict(obj["a"]), filter_from_dict(obj["ta"]), tuple(bs), tuple(tbs), tags or ("file",) * len(bs), meta)
    if kind == "quasitight":
        bs = [filter_from_dict(b) for b in obj["bs"]]
        eps = [int(e) for e in obj["eps"]]
        if len(eps) != len(bs) or any(e not in (-1, 1) for e in eps):
            raise ValueError("eps must hold one sign per high-pass filter")
        return QuasiTightBank(ctx, filter_from_dict(obj["a"]), tuple(bs), tuple(eps), tags or ("file",) * len(bs), meta)
    raise ValueError(f"unknown bank kind {kind!r}")


def save_bank(bank, path) -> None:
    write_json(path, bank_to_dict(bank))


def load_bank(path):
    return bank_from_dict(read_json(path))


# -- design families ------------------------------------------------------------
def family_to_dict(fam) -> dict:
    c = fam.constraints
    sym = None
    if c.symmetry is not None:
        t = c.symmetry
        sym = {
            "group": t.group.name or None,
            "elements": [[list(r) for r in E] for E in t.group],
            "center": [str(x) for x in t.center],
            "sign": t.sign,
        }
    return {
        "kind": "family",
        "dilation": format_matrix(fam.ctx.M),
        "support": [list(b) for b in fam.box],
        "constraints": {"sum_rules": c.sum_rules, "interpolatory": c.interpolatory, "normalized": c.normalized, "symmetry": sym},
        "params": list(fam.names),
        "base": filter_to_dict(fam.base),
        "directions": [filter_to_dict(u) for u in fam.directions],
    }


def family_from_dict(obj: dict):
    from .design import AffineFilterFamily, DesignConstraints
    from .symmetry import SymmetryGroup, SymmetryType

    if obj.get("kind") != "family":
        raise ValueError("not a design family file")
    ctx = make_context(obj["dilation"])
    c = obj["constraints"]
    sym = None
    if c.get("symmetry"):
        s = c["symmetry"]
        G = SymmetryGroup(tuple(tuple(tuple(int(x) for x in r) for r in E) for E in s["elements"]), s.get("group") or "")
        sym = SymmetryType(G, tuple(to_fraction(x) for x in s["center"]), int(s["sign"]))
    cons = DesignConstraints(int(c["sum_rules"]), bool(c["interpolatory"]), sym, bool(c.get("normalized", True)))
    box = tuple(tuple(int(x) for x in b) for b in obj["support"])
    return AffineFilterFamily(
        ctx, box, filter_from_dict(obj["base"]), [filter_from_dict(u) for u in obj["directions"]], list(obj["params"]), cons
    )
