"""Finite symmetry groups on Z^d and symmetry types of filters.

A filter ``u`` has symmetry type ``(G, c, eps)`` when
``u(E(k - c) + c) = eps * u(k)`` for all ``k`` and all ``E`` in ``G``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import ConditionNotMet, NotCompatible
from .laurent import Filter, Point
from .lattice import DilationContext, IntMatrix, as_int_matrix, is_interpolatory
from .moments import sum_rule_order

Vec = tuple[Fraction, ...]


def _mm(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    n = len(A)
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def _mv(A, v) -> tuple:
    return tuple(sum(a * x for a, x in zip(row, v)) for row in A)


def _identity(d: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(d)) for i in range(d))


def _det(A: IntMatrix) -> int:
    return int(round(np.linalg.det(np.array(A, dtype=float))))


@dataclass(frozen=True)
class SymmetryGroup:
    elements: tuple[IntMatrix, ...]
    name: str = ""

    def __post_init__(self):
        elems = tuple(dict.fromkeys(as_int_matrix(E) for E in self.elements))
        if not elems:
            raise ValueError("a group needs at least one element")
        d = len(elems[0])
        S = set(elems)
        if _identity(d) not in S:
            raise ValueError("group must contain the identity")
        for E in elems:
            if len(E) != d or abs(_det(E)) != 1:
                raise ValueError(f"{E} is not unimodular")
            for F in elems:
                if _mm(E, F) not in S:
                    raise ValueError("element set is not closed under multiplication")
        object.__setattr__(self, "elements", elems)

    @property
    def dim(self) -> int:
        return len(self.elements[0])

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, E) -> bool:
        return as_int_matrix(E) in set(self.elements)

    def same_elements(self, other: "SymmetryGroup") -> bool:
        return set(self.elements) == set(other.elements)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymmetryGroup):
            return NotImplemented
        return self.same_elements(other)

    def __hash__(self) -> int:
        return hash(frozenset(self.elements))

    def label(self) -> str:
        return self.name or identify_group(self) or f"<{len(self)} elements>"

    def __repr__(self) -> str:
        return f"SymmetryGroup({self.label()})"


def _pm(*mats) -> list:
    out = []
    for m in mats:
        out.append(m)
        out.append([[-x for x in row] for row in m])
    return out


I2 = [[1, 0], [0, 1]]

_NAMED = {
    "D4": _pm(I2, [[1, 0], [0, -1]], [[0, 1], [1, 0]], [[0, 1], [-1, 0]]),
    "D6": _pm(I2, [[0, 1], [1, 0]], [[-1, 1], [0, 1]], [[1, 0], [1, -1]], [[0, 1], [-1, 1]], [[1, -1], [1, 0]]),
    "H1": _pm(I2, [[0, 1], [1, 0]]),
    "H2": _pm(I2, [[1, 0], [0, -1]]),
    "G1": _pm(I2, [[1, -1], [0, -1]]),
    "G2": _pm(I2, [[1, 0], [1, -1]]),
    "G3": _pm(I2, [[0, 1], [1, 0]]),
    "H": [I2, [[0, -1], [1, -1]], [[-1, 1], [-1, 0]], [[0, -1], [-1, 0]], [[-1, 1], [0, 1]], [[1, 0], [1, -1]]],
}


def named_group(name: str, dim: int = 2) -> SymmetryGroup:
    """Look up ``D4``, ``D6``, ``pmI`` (``{I, -I}``), ``trivial`` or the subgroups
    ``H1``, ``H2``, ``G1``, ``G2``, ``G3``, ``H``."""
    key = name.strip()
    if key in ("pmI", "+-I", "±I"):
        I = _identity(dim)
        return SymmetryGroup((I, tuple(tuple(-x for x in r) for r in I)), "pmI")
    if key == "trivial":
        return SymmetryGroup((_identity(dim),), "trivial")
    if key not in _NAMED:
        raise KeyError(f"unknown symmetry group {name!r}")
    return SymmetryGroup(tuple(as_int_matrix(m) for m in _NAMED[key]), key)


def identify_group(G: SymmetryGroup) -> str | None:
    """Name of a known group with exactly these elements, if any."""
    names = ["pmI", "trivial"] + list(_NAMED) if G.dim == 2 else ["pmI", "trivial"]
    for n in names:
        if named_group(n, G.dim).same_elements(G):
            return n
    return None


def group_from_matrices(mats: Iterable, name: str = "") -> SymmetryGroup:
    return SymmetryGroup(tuple(as_int_matrix(m) for m in mats), name)


def generate_group(gens: Iterable, name: str = "") -> SymmetryGroup:
    """Closure of a set of unimodular generators."""
    gens = [as_int_matrix(g) for g in gens]
    d = len(gens[0])
    elems = {_identity(d)}
    frontier = list(elems)
    while frontier:
        new = []
        for E in frontier:
            for g in gens:
                F = _mm(E, g)
                if F not in elems:
                    elems.add(F)
                    new.append(F)
        frontier = new
        if len(elems) > 10_000:
            raise ValueError("generated group is not finite")
    return SymmetryGroup(tuple(sorted(elems)), name)


@dataclass(frozen=True)
class SymmetryType:
    """``u(E(k-c)+c) = sign * u(k)``; the identity element is exempt from the sign."""

    group: SymmetryGroup
    center: Vec
    sign: int

    def __post_init__(self):
        c = tuple(Fraction(x) for x in self.center)
        object.__setattr__(self, "center", c)
        if self.sign not in (-1, 1):
            raise ValueError("sign must be +1 or -1")
        if len(c) != self.group.dim:
            raise ValueError("center has wrong dimension")
        for E in self.group:
            if any(x.denominator != 1 for x in _sub(c, _mv(E, c))):
                raise ValueError(f"center {c} is not admissible for {E}")

    def __repr__(self) -> str:
        cen = "(" + ", ".join(str(x) for x in self.center) + ")"
        return f"({self.group.label()}, {cen}, {self.sign:+d})"


def _sub(u, v) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def _act(E: IntMatrix, k: Point, c: Vec) -> Point | None:
    y = tuple(a + b for a, b in zip(_mv(E, _sub(k, c)), c))
    if any(Fraction(x).denominator != 1 for x in y):
        return None
    return tuple(int(x) for x in y)


def has_symmetry(u: Filter, t: SymmetryType) -> bool:
    """Check ``u(E(k-c)+c) = eps u(k)`` for every non-identity E in the group."""
    I = _identity(u.dim)
    for E in t.group:
        if E == I:
            continue
        for k, v in u.items():
            k2 = _act(E, k, t.center)
            if k2 is None or u[k2] != t.sign * v:
                return False
    return True


def _admissible(G: SymmetryGroup, c: Vec) -> bool:
    return all(all(Fraction(x).denominator == 1 for x in _sub(c, _mv(E, c))) for E in G)


def _candidate_centers(u: Filter, G: SymmetryGroup, extra: Sequence[Sequence] = ()) -> list[Vec]:
    pts = u.points()
    n = len(pts)
    d = u.dim
    cands: list[Vec] = [tuple(Fraction(x) for x in c) for c in extra]
    # the centroid of the support is fixed by every affine symmetry map
    cands.append(tuple(Fraction(sum(p[i] for p in pts), n) for i in range(d)))
    box = u.support
    cands.append(tuple(Fraction(lo + hi, 2) for lo, hi in box))
    for twice in itertools.product(*(range(2 * lo, 2 * hi + 1) for lo, hi in box)):
        cands.append(tuple(Fraction(x, 2) for x in twice))
    return list(dict.fromkeys(cands))


def detect_symmetry(u: Filter, G: SymmetryGroup, candidates: Sequence[Sequence] = ()) -> SymmetryType | None:
    """Find a center and sign making ``u`` ``G``-(anti)symmetric; None if there is none."""
    if u.is_zero():
        raise ValueError("the zero filter has every symmetry")
    k0, v0 = next(iter(u.items()))
    for c in _candidate_centers(u, G, candidates):
        if not _admissible(G, c):
            continue
        for sign in (1, -1):
            t = SymmetryType(G, c, sign)
            if has_symmetry(u, t):
                return t
    return None


def conjugate_matrix(ctx: DilationContext, E: IntMatrix) -> IntMatrix | None:
    """``M E M^{-1}`` if integral, else None."""
    ME = _mm(ctx.M, as_int_matrix(E))
    prod = _mm(ME, ctx._adj)
    if any(x % ctx.det for row in prod for x in row):
        return None
    return tuple(tuple(x // ctx.det for x in row) for row in prod)


def is_compatible(ctx: DilationContext, G: SymmetryGroup) -> bool:
    if G.dim != ctx.dim:
        raise ValueError("group and dilation have different dimensions")
    for E in G:
        F = conjugate_matrix(ctx, E)
        if F is None or F not in G:
            return False
    return True


def coset_symmetry_subgroup(G: SymmetryGroup, gamma: Sequence[int], ctx: DilationContext) -> SymmetryGroup:
    """Elements ``E`` of ``G`` with ``(I - E) M^{-1} gamma`` integral."""
    if not is_compatible(ctx, G):
        raise NotCompatible(f"{G.label()} is not compatible with the dilation")
    x = ctx.apply_inverse(gamma)
    elems = [E for E in G if all(Fraction(v).denominator == 1 for v in _sub(x, _mv(E, x)))]
    sub = SymmetryGroup(tuple(elems))
    return SymmetryGroup(sub.elements, identify_group(sub) or "")


def coset_symmetry_type(t: SymmetryType, gamma: Sequence[int], ctx: DilationContext) -> SymmetryType:
    """Predicted type of the gamma-coset of a filter of type ``(G, 0, eps)``.

    The coset is ``G_gamma``-symmetric about ``-M^{-1} gamma`` with the same sign.
    """
    if any(t.center):
        raise ValueError("coset prediction is implemented for filters symmetric about the origin")
    sub = coset_symmetry_subgroup(t.group, gamma, ctx)
    return SymmetryType(sub, tuple(-x for x in ctx.apply_inverse(gamma)), t.sign)


def transfer_symmetry(t: SymmetryType, gamma: Sequence[int], ctx: DilationContext) -> SymmetryType:
    """Type of ``v = upsample_shift(u, gamma)`` when ``u`` has type ``t``: ``(M G M^{-1}, gamma + M c, eps)``."""
    conj = []
    for E in t.group:
        F = conjugate_matrix(ctx, E)
        if F is None:
            raise NotCompatible(f"M E M^-1 is not integral for E = {E}")
        conj.append(F)
    G2 = SymmetryGroup(tuple(conj))
    G2 = SymmetryGroup(G2.elements, identify_group(G2) or "")
    center = tuple(Fraction(g) + Fraction(x) for g, x in zip(gamma, _mv(ctx.M, t.center)))
    return SymmetryType(G2, center, t.sign)


@dataclass(frozen=True)
class CenterDiagnostic:
    """Which alternative holds for an interpolatory filter with a given symmetry type."""

    branch: int  # 1: (I-E)c in M Z^d, so the center must be 0 with sign +1; 2: otherwise, sr <= 1
    witness: IntMatrix
    sum_rules: int
    consistent: bool
    message: str


def check_interpolatory_center(a: Filter, ctx: DilationContext, t: SymmetryType) -> CenterDiagnostic:
    """Classify an interpolatory symmetric filter by the position of its center.

    With ``E`` such that ``I - E`` is invertible: if ``(I - E)c`` lies in
    ``M Z^d`` the center must be the origin and the filter symmetric; otherwise
    the filter has at most one sum rule.
    """
    d = ctx.dim
    I = _identity(d)
    witness = None
    for E in t.group:
        IE = tuple(tuple(I[i][j] - E[i][j] for j in range(d)) for i in range(d))
        if _det(IE) != 0:
            witness, witness_ie = E, IE
            break
    if witness is None:
        raise ConditionNotMet("no group element E with I - E invertible")
    if not is_interpolatory(a, ctx):
        raise ValueError("filter is not interpolatory")
    if not has_symmetry(a, t):
        raise ValueError(f"filter does not have symmetry type {t}")
    sr = int(sum_rule_order(a, ctx))
    v = _mv(witness_ie, t.center)
    in_lattice = all(Fraction(x).denominator == 1 for x in v) and all(
        x.denominator == 1 for x in ctx.apply_inverse([int(y) for y in v])
    )
    if in_lattice:
        ok = t.sign == 1 and not any(t.center)
        msg = "center in M Z^d: symmetric about the origin" if ok else "center in M Z^d but type is not (G, 0, +1)"
        return CenterDiagnostic(1, witness, sr, ok, msg)
    ok = sr <= 1
    msg = f"center off M Z^d: sum rule order {sr} (at most 1 expected)"
    return CenterDiagnostic(2, witness, sr, ok, msg)
