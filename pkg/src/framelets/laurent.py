"""Exact sparse multivariate Laurent polynomials ("filters").

A :class:`Filter` is a finitely supported map ``Z^d -> Q`` multiplied by a
single square-free radical ``sqrt(radicand)``.  Its Fourier series is the
Laurent polynomial ``sum_k u(k) z^k`` with ``z_i = exp(-i xi_i)``.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np
from sympy import factorint

from .errors import RadicandMismatch

Point = tuple[int, ...]
Box = tuple[tuple[int, int], ...]


def to_fraction(value) -> Fraction:
    """Convert an exact scalar (int, Fraction, ``"p/q"`` string, mpq) to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not filter coefficients")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError(f"refusing inexact float coefficient {value!r}")
    if isinstance(value, Rational) or hasattr(value, "numerator"):
        return Fraction(int(value.numerator), int(value.denominator))
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


@lru_cache(maxsize=1024)
def _squarefree_split(n: int) -> tuple[int, int]:
    # n = s**2 * r with r square-free
    s, r = 1, 1
    for p, e in factorint(n).items():
        s *= p ** (e // 2)
        if e % 2:
            r *= p
    return s, r


def normalize_radical(q) -> tuple[Fraction, int]:
    """Return ``(c, r)`` with ``sqrt(q) == c * sqrt(r)``, ``c`` rational, ``r`` square-free."""
    q = to_fraction(q)
    if q <= 0:
        raise ValueError("radicand must be positive")
    # sqrt(p/q) = sqrt(p*q)/q
    s, r = _squarefree_split(q.numerator * q.denominator)
    return Fraction(s, q.denominator), r


class Filter:
    """Immutable finitely supported filter with an optional radical scale.

    ``coeffs`` maps lattice points (tuples, or ints when ``dim == 1``) to exact
    rationals.  The represented value at ``k`` is ``sqrt(radicand) * coeffs[k]``.
    """

    __slots__ = ("_dim", "_radicand", "_coeffs", "_support", "_hash")

    def __init__(self, coeffs: Mapping | None = None, *, dim: int | None = None, radicand=1):
        data: dict[Point, Fraction] = {}
        for key, value in (coeffs or {}).items():
            k = (key,) if isinstance(key, (int, np.integer)) else tuple(int(x) for x in key)
            if dim is None:
                dim = len(k)
            elif len(k) != dim:
                raise ValueError(f"point {k} does not have dimension {dim}")
            v = to_fraction(value)
            if v:
                data[k] = data.get(k, Fraction(0)) + v
                if not data[k]:
                    del data[k]
        if dim is None:
            raise ValueError("dimension of an empty filter must be given")
        scale, rad = normalize_radical(radicand)
        if scale != 1:
            data = {k: v * scale for k, v in data.items()}
        if not data:
            rad = 1
        self._dim = int(dim)
        self._radicand = rad
        self._coeffs = data
        self._support = None
        self._hash = None

    @classmethod
    def _raw(cls, data: dict[Point, Fraction], dim: int, radicand: int) -> "Filter":
        # trusted constructor: data has no zeros, radicand already square-free
        obj = cls.__new__(cls)
        obj._dim = dim
        obj._radicand = radicand if data else 1
        obj._coeffs = data
        obj._support = None
        obj._hash = None
        return obj

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, dim: int) -> "Filter":
        return cls._raw({}, dim, 1)

    @classmethod
    def delta(cls, dim: int, value=1) -> "Filter":
        return cls({(0,) * dim: value}, dim=dim)

    @classmethod
    def monomial(cls, point: Sequence[int], value=1) -> "Filter":
        point = tuple(point)
        return cls({point: value}, dim=len(point))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], support: Sequence[Sequence[int]], scale=1, radicand=1) -> "Filter":
        """Build a 2-D filter from a matrix display.

        The first row holds the largest second coordinate; within a row the
        first coordinate increases.  ``support`` is ``[[s1, t1], [s2, t2]]``.
        """
        (x0, x1), (y0, y1) = support
        rows = list(rows)
        if len(rows) != y1 - y0 + 1 or any(len(r) != x1 - x0 + 1 for r in rows):
            raise ValueError("matrix shape does not match support box")
        scale = to_fraction(scale)
        data = {}
        for i, row in enumerate(rows):
            y = y1 - i
            for j, v in enumerate(row):
                data[(x0 + j, y)] = to_fraction(v) * scale
        return cls(data, dim=2, radicand=radicand)

    # -- basic access -----------------------------------------------------
    @property
    def dim(self) -> int:
        return self._dim

    @property
    def radicand(self) -> int:
        return self._radicand

    @property
    def radical(self) -> float:
        return math.sqrt(self._radicand)

    @property
    def is_rational(self) -> bool:
        return self._radicand == 1

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __getitem__(self, k) -> Fraction:
        if isinstance(k, (int, np.integer)):
            k = (int(k),)
        return self._coeffs.get(tuple(k), Fraction(0))

    def items(self) -> Iterator[tuple[Point, Fraction]]:
        return iter(self._coeffs.items())

    def points(self) -> list[Point]:
        return list(self._coeffs)

    def coeffs(self) -> dict[Point, Fraction]:
        return dict(self._coeffs)

    @property
    def support(self) -> Box | None:
        """Tight bounding box ``((s_1, t_1), ..., (s_d, t_d))``; None for the zero filter."""
        if self._support is None and self._coeffs:
            pts = np.array(list(self._coeffs), dtype=np.int64)
            self._support = tuple((int(lo), int(hi)) for lo, hi in zip(pts.min(0), pts.max(0)))
        return self._support

    # -- arithmetic -------------------------------------------------------
    def _check_dim(self, other: "Filter") -> None:
        if other._dim != self._dim:
            raise ValueError(f"dimension mismatch: {self._dim} vs {other._dim}")

    def __add__(self, other: "Filter") -> "Filter":
        if not isinstance(other, Filter):
            return NotImplemented
        self._check_dim(other)
        if not other._coeffs:
            return self
        if not self._coeffs:
            return other
        if self._radicand != other._radicand:
            raise RadicandMismatch(f"cannot add sqrt({self._radicand}) and sqrt({other._radicand}) filters")
        data = dict(self._coeffs)
        for k, v in other._coeffs.items():
            s = data.get(k, 0) + v
            if s:
                data[k] = s
            else:
                data.pop(k, None)
        return Filter._raw(data, self._dim, self._radicand)

    def __neg__(self) -> "Filter":
        return Filter._raw({k: -v for k, v in self._coeffs.items()}, self._dim, self._radicand)

    def __sub__(self, other: "Filter") -> "Filter":
        if not isinstance(other, Filter):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "Filter":
        c = to_fraction(c)
        if not c:
            return Filter.zero(self._dim)
        return Filter._raw({k: v * c for k, v in self._coeffs.items()}, self._dim, self._radicand)

    def times_sqrt(self, q) -> "Filter":
        """Multiply by ``sqrt(q)`` for a positive rational ``q``."""
        c, r = normalize_radical(q)
        c2, r2 = normalize_radical(r * self._radicand)
        return Filter._raw({k: v * c * c2 for k, v in self._coeffs.items()}, self._dim, r2)

    def convolve(self, other: "Filter") -> "Filter":
        self._check_dim(other)
        if not self._coeffs or not other._coeffs:
            return Filter.zero(self._dim)
        c, rad = normalize_radical(self._radicand * other._radicand)
        data: dict[Point, Fraction] = {}
        get = data.get
        for k1, v1 in self._coeffs.items():
            for k2, v2 in other._coeffs.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                data[k] = get(k, 0) + v1 * v2
        out = {k: v * c for k, v in data.items() if v}
        return Filter._raw(out, self._dim, rad)

    def __mul__(self, other):
        if isinstance(other, Filter):
            return self.convolve(other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __truediv__(self, other):
        return self.scale(1 / to_fraction(other))

    # -- lattice operations ----------------------------------------------
    def star(self) -> "Filter":
        """``u*(k) = conj(u(-k))``; coefficients are real so this is index reversal."""
        return Filter._raw({tuple(-x for x in k): v for k, v in self._coeffs.items()}, self._dim, self._radicand)

    def shift(self, s: Sequence[int]) -> "Filter":
        """Translate: ``result(k + s) = u(k)`` (multiplication by ``z^s``)."""
        s = tuple(int(x) for x in s)
        return Filter._raw({tuple(a + b for a, b in zip(k, s)): v for k, v in self._coeffs.items()}, self._dim, self._radicand)

    def transform(self, E) -> "Filter":
        """Apply a unimodular integer matrix: ``result(E k) = u(k)``."""
        E = np.asarray(E, dtype=np.int64)
        data = {}
        for k, v in self._coeffs.items():
            data[tuple(int(x) for x in E @ np.array(k, dtype=np.int64))] = v
        if len(data) != len(self._coeffs):
            raise ValueError("matrix is not injective on the support")
        return Filter._raw(data, self._dim, self._radicand)

    def rational_part(self) -> "Filter":
        return Filter._raw(dict(self._coeffs), self._dim, 1)

    def with_radicand(self, radicand: int) -> "Filter":
        return Filter(self._coeffs, dim=self._dim, radicand=radicand)

    def coefficient_sum(self) -> Fraction:
        """Sum of the rational coefficients (the radical factor is not applied)."""
        return sum(self._coeffs.values(), Fraction(0))

    def ratio_to(self, other: "Filter") -> tuple[Fraction, int] | None:
        """Return ``(c, r)`` with ``self == c*sqrt(r) * other`` (as values), or None."""
        if not self._coeffs or not other._coeffs or set(self._coeffs) != set(other._coeffs):
            return None
        k0 = next(iter(self._coeffs))
        c = self._coeffs[k0] / other._coeffs[k0]
        if any(v != c * other._coeffs[k] for k, v in self._coeffs.items()):
            return None
        # sqrt(ks)/sqrt(ko) = sqrt(ks*ko)/ko
        s, r = normalize_radical(Fraction(self._radicand, other._radicand))
        return c * s, r

    # -- numerics ---------------------------------------------------------
    def evaluate(self, xi) -> complex:
        xi = np.asarray(xi, dtype=float).reshape(-1)
        if xi.size != self._dim:
            raise ValueError("frequency has wrong dimension")
        if not self._coeffs:
            return 0j
        pts = np.array(list(self._coeffs), dtype=float)
        vals = np.array([float(v) for v in self._coeffs.values()])
        return complex(self.radical * np.sum(vals * np.exp(-1j * (pts @ xi))))

    def to_dense(self) -> tuple[np.ndarray, Point]:
        """Dense float array (axis i = coordinate i) and the lattice point of index 0."""
        box = self.support
        if box is None:
            return np.zeros((1,) * self._dim), (0,) * self._dim
        lo = tuple(b[0] for b in box)
        arr = np.zeros(tuple(b[1] - b[0] + 1 for b in box))
        r = self.radical
        for k, v in self._coeffs.items():
            arr[tuple(a - b for a, b in zip(k, lo))] = float(v) * r
        return arr, lo

    # -- dunder -----------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, Filter):
            return NotImplemented
        return self._dim == other._dim and self._radicand == other._radicand and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._dim, self._radicand, frozenset(self._coeffs.items())))
        return self._hash

    def __repr__(self) -> str:
        if not self._coeffs:
            return f"Filter(0, dim={self._dim})"
        body = ", ".join(f"{k if self._dim > 1 else k[0]}: {v}" for k, v in sorted(self._coeffs.items()))
        rad = f", radicand={self._radicand}" if self._radicand != 1 else ""
        return f"Filter({{{body}}}{rad})"


def delta(dim: int) -> Filter:
    return Filter.delta(dim)


def nabla_delta(mu: Sequence[int]) -> Filter:
    """Filter with symbol ``prod_i (1 - z_i)^mu_i``."""
    mu = tuple(int(m) for m in mu)
    if any(m < 0 for m in mu):
        raise ValueError("multi-index must be non-negative")
    d = len(mu)
    data = {}
    for k in itertools.product(*(range(m + 1) for m in mu)):
        c = 1
        for m, j in zip(mu, k):
            c *= (-1) ** j * math.comb(m, j)
        data[k] = c
    return Filter(data, dim=d)


def convolve(u: Filter, v: Filter) -> Filter:
    return u.convolve(v)


def star(u: Filter) -> Filter:
    return u.star()


def evaluate_at(u: Filter, xi) -> complex:
    return u.evaluate(xi)


def filter_sum(filters: Iterable[Filter], dim: int) -> Filter:
    total = Filter.zero(dim)
    for f in filters:
        total = total + f
    return total


def multi_indices(order: int, dim: int) -> list[Point]:
    """All ``mu`` with ``|mu| == order``, first coordinate largest first.

    For ``dim=2, order=2`` this yields ``(2,0), (1,1), (0,2)``.
    """
    if dim == 1:
        return [(order,)]
    out = []
    for first in range(order, -1, -1):
        for rest in multi_indices(order - first, dim - 1):
            out.append((first,) + rest)
    return out


def multi_indices_below(order: int, dim: int) -> list[Point]:
    """All ``mu`` with ``|mu| < order`` in graded order."""
    return [mu for r in range(order) for mu in multi_indices(r, dim)]
