"""Command-line driver: design, construct, verify, analyze and render filter banks.

Exit codes: 0 on success, 1 when a verification fails, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .errors import FrameletError
from .io import (
    family_to_dict,
    filter_from_dict,
    load_bank,
    load_filter,
    read_json,
    save_bank,
    save_filter,
    write_json,
)
from .laurent import to_fraction
from .lattice import is_interpolatory, has_zero_coset, make_context, parse_matrix
from .moments import moment_report
from .symmetry import (
    SymmetryGroup,
    SymmetryType,
    check_interpolatory_center,
    detect_symmetry,
    generate_group,
    named_group,
)

log = logging.getLogger("framelets")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- argument parsing helpers ---------------------------------------------------
def parse_group(text: str, dim: int = 2) -> SymmetryGroup:
    """``D4``/``D6``/``pmI``/... or generators ``"0 1; 1 0 | -1 0; 0 1"``."""
    text = text.strip()
    if "|" in text or ";" in text:
        mats = [parse_matrix(part) for part in text.split("|")]
        return generate_group(mats)
    try:
        return named_group(text, dim)
    except KeyError as exc:
        raise UsageError(str(exc)) from exc


def parse_symmetry(text: str, dim: int = 2) -> SymmetryType:
    """``GROUP@c1,c2[:sign]``, e.g. ``D4@0,0`` or ``pmI@1/2,0:-1``."""
    sign = 1
    if ":" in text:
        text, s = text.rsplit(":", 1)
        sign = int(s)
    if "@" in text:
        name, cen = text.split("@", 1)
        center = tuple(Fraction(x) for x in cen.split(","))
    else:
        name, center = text, (Fraction(0),) * dim
    return SymmetryType(parse_group(name, dim), center, sign)


def parse_support(text: str) -> list[tuple[int, int]]:
    box = []
    for part in text.split(","):
        lo, hi = part.split(":")
        box.append((int(lo), int(hi)))
    return box


def parse_points(text: str) -> list[tuple[int, ...]]:
    return [tuple(int(x) for x in p.split(",")) for p in text.split(";") if p.strip()]


def parse_values(text: str) -> list[Fraction]:
    return [to_fraction(x.strip()) for x in text.split(",") if x.strip()]


def _emit(obj, as_json: bool, text: str) -> None:
    print(json.dumps(obj, indent=2) if as_json else text)


# -- subcommands ------------------------------------------------------------------
def cmd_analyze(args) -> int:
    u = load_filter(args.filter)
    ctx = make_context(parse_matrix(args.dilation))
    if u.dim != ctx.dim:
        raise UsageError("filter and dilation dimensions differ")
    rep = moment_report(u, ctx)
    interp = is_interpolatory(u, ctx)
    out = {
        "sum_rules": str(rep.sr),
        "vmo": str(rep.vmo),
        "lpm": str(rep.lpm),
        "interpolatory": interp,
        "zero_coset": has_zero_coset(u, ctx),
        "coefficient_sum": str(u.coefficient_sum()),
        "support": [list(b) for b in u.support] if u.support else None,
    }
    if args.group:
        G = parse_group(args.group, ctx.dim)
        t = detect_symmetry(u, G)
        out["symmetry"] = None if t is None else {"group": t.group.label(), "center": [str(x) for x in t.center], "sign": t.sign}
        if t is not None and interp:
            diag = check_interpolatory_center(u, ctx, t)
            out["center_check"] = {"branch": diag.branch, "consistent": diag.consistent, "message": diag.message}
    lines = [f"{k}: {v}" for k, v in out.items()]
    _emit(out, args.json, "\n".join(lines))
    return EXIT_OK


def _load_generators(path: str | None):
    if path is None:
        return None
    obj = read_json(path)
    if isinstance(obj, dict):
        return {tuple(int(x) for x in k.split(",")): [filter_from_dict(f) for f in v] for k, v in obj.items()}
    return [filter_from_dict(f) for f in obj]


def cmd_dual(args) -> int:
    from .dual import build_dual_bank

    ctx = make_context(parse_matrix(args.dilation))
    a, ta = load_filter(args.a), load_filter(args.ta)
    G = parse_group(args.group, ctx.dim) if args.group else None
    t0 = time.perf_counter()
    bank = build_dual_bank(
        a, ta, ctx, args.n1, args.n2, merge=args.merge_proportional, symmetry_group=G, generators=_load_generators(args.generators)
    )
    save_bank(bank, args.out)
    print(f"dual bank with {len(bank)} high-pass pair(s) written to {args.out} ({time.perf_counter() - t0:.2f} s)")
    return EXIT_OK


def cmd_qt(args) -> int:
    from .quasitight import build_quasitight

    ctx = make_context(parse_matrix(args.dilation))
    a = load_filter(args.a)
    t0 = time.perf_counter()
    bank = build_quasitight(a, ctx, args.m)
    save_bank(bank, args.out)
    print(f"quasi-tight bank with {len(bank)} high-pass filter(s) written to {args.out} ({time.perf_counter() - t0:.2f} s)")
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import verify_bank

    bank = load_bank(args.bank)
    groups = [parse_group(g, bank.ctx.dim) for g in args.group] if args.group else None
    rep = verify_bank(bank, groups)
    _emit(rep.to_dict(), args.json, rep.text())
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_sm2(args) -> int:
    from .smoothness import sm2_estimate, sm_inf_bracket

    u = load_filter(args.filter)
    ctx = make_context(parse_matrix(args.dilation))
    methods = ["eig", "norm"] if args.method == "both" else [args.method]
    out = {}
    for m in methods:
        est = sm2_estimate(u, ctx, m, max_n=args.max_n)
        lo, hi = sm_inf_bracket(est, ctx.dim)
        out[m] = {"sm2": est.sm2, "sum_rules": est.sum_rules, "sm_inf_bracket": [lo, hi], "continuous": lo > 0, "warning": est.warning}
    lines = []
    for m, r in out.items():
        lines.append(f"{m}: sm2 = {r['sm2']:.4f}  sm_inf in [{r['sm_inf_bracket'][0]:.4f}, {r['sm_inf_bracket'][1]:.4f}]")
        if r["warning"]:
            lines.append(f"  warning: {r['warning']}")
    _emit(out, args.json, "\n".join(lines))
    return EXIT_OK


def cmd_design(args) -> int:
    from .design import DesignConstraints, instantiate, parametrize, with_coordinates

    ctx = make_context(parse_matrix(args.dilation))
    sym = parse_symmetry(args.sym, ctx.dim) if args.sym else None
    fam = parametrize(parse_support(args.support), ctx, DesignConstraints(args.sr, args.interpolatory, sym))
    if args.coords:
        names = args.names.split(",") if args.names else None
        fam = with_coordinates(fam, parse_points(args.coords), names)
    if args.out:
        write_json(args.out, family_to_dict(fam))
    print(f"family dimension {fam.dimension} (parameters: {', '.join(fam.names) or 'none'})")
    if args.at is not None:
        u = instantiate(fam, parse_values(args.at))
        if not args.filter_out:
            raise UsageError("--at needs --filter-out")
        save_filter(u, args.filter_out)
        print(f"instance written to {args.filter_out}")
    return EXIT_OK


def cmd_render(args) -> int:
    from .cascade import export_grid, sample_psi, subdivide_phi
    from .dual import DualBank

    bank = load_bank(args.bank)
    ctx = bank.ctx
    if args.levels < 1:
        raise UsageError("--levels must be at least 1")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    ext = args.format
    lows = [("phi", bank.a, bank.bs)]
    if isinstance(bank, DualBank):
        lows.append(("tphi", bank.ta, bank.tbs))
    written = 0
    for name, low, highs in lows:
        phi = subdivide_phi(low, ctx, args.levels)
        export_grid(phi, out / f"{name}.{ext}", ext)
        written += 1
        prefix = "psi" if name == "phi" else "tpsi"
        for i, b in enumerate(highs, start=1):
            export_grid(sample_psi(b, phi, ctx), out / f"{prefix}{i}.{ext}", ext)
            written += 1
    print(f"{written} grid(s) written to {out}")
    return EXIT_OK


# -- parser -------------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="framelets", description="Interpolatory dual and quasi-tight framelet filter banks.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("analyze", help="moments, sum rules, interpolation and symmetry of a filter")
    s.add_argument("--filter", required=True)
    s.add_argument("--dilation", required=True)
    s.add_argument("--group")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("dual", help="construct a dual framelet filter bank")
    s.add_argument("--a", required=True)
    s.add_argument("--ta", required=True)
    s.add_argument("--dilation", required=True)
    s.add_argument("--n1", type=int, required=True)
    s.add_argument("--n2", type=int, required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--merge-proportional", action="store_true")
    s.add_argument("--group", help="symmetry group of the low-pass pair; symmetrizes the factorization")
    s.add_argument("--generators", help="JSON list of primal factor filters (or a coset -> list mapping)")
    s.set_defaults(func=cmd_dual)

    s = sub.add_parser("qt", help="construct a quasi-tight framelet filter bank")
    s.add_argument("--a", required=True)
    s.add_argument("--dilation", required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_qt)

    s = sub.add_parser("verify", help="exactly verify a bank file")
    s.add_argument("--bank", required=True)
    s.add_argument("--group", action="append", help="symmetry group to detect (repeatable)")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("sm2", help="estimate the L2 smoothness exponent")
    s.add_argument("--filter", required=True)
    s.add_argument("--dilation", required=True)
    s.add_argument("--method", choices=["eig", "norm", "both"], default="both")
    s.add_argument("--max-n", type=int, default=12)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_sm2)

    s = sub.add_parser("design", help="parametrize interpolatory symmetric masks on a support box")
    s.add_argument("--support", required=True, help='e.g. "-3:3,-3:3"')
    s.add_argument("--dilation", required=True)
    s.add_argument("--sr", type=int, default=0)
    s.add_argument("--interpolatory", action="store_true")
    s.add_argument("--sym", help='GROUP@c1,c2[:sign], e.g. "D4@0,0"')
    s.add_argument("--coords", help='points whose coefficients become the parameters, e.g. "-3,2;-3,0"')
    s.add_argument("--names", help="comma-separated parameter names for --coords")
    s.add_argument("--at", help="comma-separated parameter values to instantiate")
    s.add_argument("--filter-out", help="where to write the instance from --at")
    s.add_argument("--out", help="family JSON output")
    s.set_defaults(func=cmd_design)

    s = sub.add_parser("render", help="sample refinable functions and framelets by the cascade algorithm")
    s.add_argument("--bank", required=True)
    s.add_argument("--levels", type=int, required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--format", choices=["csv", "json"], default="csv")
    s.set_defaults(func=cmd_render)
    return p


_VALUE_OPTIONS = {"--support", "--at", "--coords", "--sym", "--dilation"}


def _join_negative_values(argv: Sequence[str]) -> list[str]:
    # "--support -3:3,-3:3" would otherwise be read as an unknown option
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_OPTIONS:
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-"):
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
        else:
            out.append(tok)
    return out


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = _join_negative_values(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (FrameletError, UsageError, ValueError, KeyError, OSError, ArithmeticError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
