"""Truncated power series in ``n`` complex variables.

Coefficients live in a dict keyed by multi-index tuples. Indices are kept in
graded lexicographic order (by weight, then lexicographically), and every
floating point reduction goes through :func:`math.fsum`, so sums do not
depend on insertion order and repeat bit for bit.

Text format, used by the ``expand`` command::

    n K
    a_1 ... a_n  re  im
    ...

one line per stored coefficient, floats written with 17 significant digits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .combinatorics import MultiIndex, check_index, enumerate_upto, enumerate_weight, multinomial
from .domains import DomainSpec, _l1_trusted, _sup_trusted


def _sort_key(alpha: MultiIndex):
    return (sum(alpha), alpha)


def _csum(values: Iterable[complex]) -> complex:
    """Correctly rounded sum of complex numbers, component-wise."""
    values = list(values)
    return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))


def _monomial(z: Sequence[complex], alpha: MultiIndex) -> complex:
    out = 1 + 0j
    for zj, aj in zip(z, alpha):
        if aj:
            out *= zj**aj
    return out


@dataclass(frozen=True)
class TruncatedSeries:
    """Finite map from multi-indices of weight at most ``cap`` to complex numbers.

    Missing indices are zero; exact zeros passed in are dropped.
    """

    dimension: int
    cap: int
    coeffs: Mapping[MultiIndex, complex] = field(default_factory=dict)

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError(f"dimension must be >= 1, got {self.dimension}")
        if self.cap < 0:
            raise ValueError(f"degree cap must be >= 0, got {self.cap}")
        clean = {}
        for alpha, c in self.coeffs.items():
            alpha = check_index(alpha)
            if len(alpha) != self.dimension:
                raise ValueError(f"index {alpha} does not have dimension {self.dimension}")
            if sum(alpha) > self.cap:
                raise ValueError(f"index {alpha} exceeds degree cap {self.cap}")
            c = complex(c)
            if c != 0:
                clean[alpha] = c
        ordered = {a: clean[a] for a in sorted(clean, key=_sort_key)}
        object.__setattr__(self, "coeffs", ordered)

    @classmethod
    def constant(cls, c: complex, n: int = 1) -> "TruncatedSeries":
        return cls(n, 0, {(0,) * n: c})

    @classmethod
    def from_1d(cls, coefficients: Sequence[complex]) -> "TruncatedSeries":
        """One-variable series ``sum_k coefficients[k] z^k``."""
        return cls(1, len(coefficients) - 1, {(k,): c for k, c in enumerate(coefficients)})

    def __getitem__(self, alpha: Sequence[int]) -> complex:
        return self.coeffs.get(tuple(alpha), 0j)

    def __len__(self) -> int:
        return len(self.coeffs)

    def coefficients_1d(self) -> list[complex]:
        if self.dimension != 1:
            raise ValueError("series is not one-dimensional")
        return [self[(k,)] for k in range(self.cap + 1)]

    @cached_property
    def _arrays(self):
        exps = np.array(list(self.coeffs) or np.zeros((0, self.dimension)), dtype=np.int64)
        exps = exps.reshape(len(self.coeffs), self.dimension)
        values = np.array(list(self.coeffs.values()), dtype=complex)
        return exps, values


# -- construction ----------------------------------------------------------


def _check_open_unit(a: float, what: str) -> None:
    if not 0 < a < 1:
        raise ValueError(f"{what} must lie in (0, 1), got {a}")


def extremal_cone_family(a: float, n: int, K: int) -> TruncatedSeries:
    """Expansion of ``(1+a)/2 * (1 - s) / (1 - a s)`` with ``s = z_1 + ... + z_n``.

    The function is bounded by 1 on the hypercone. Its weight-``k``
    coefficients are ``-(1-a^2)/2 * a^(k-1) * multinomial(alpha)``.
    """
    _check_open_unit(a, "a")
    if K < 1:
        raise ValueError(f"degree cap must be >= 1, got {K}")
    coeffs: dict[MultiIndex, complex] = {(0,) * n: (1 + a) / 2}
    scale = (1 - a * a) / 2
    for k in range(1, K + 1):
        layer = -scale * a ** (k - 1)
        for alpha in enumerate_weight(n, k):
            coeffs[alpha] = layer * multinomial(alpha)
    return TruncatedSeries(n, K, coeffs)


def mobius_witness(a: float, K: int) -> TruncatedSeries:
    """Taylor coefficients of the disk automorphism ``(a - z) / (1 - a z)``.

    Its Bohr sum ``a + (1-a^2) r / (1 - a r)`` reaches 1 exactly at
    ``r = 1/(1+2a)``, which tends to 1/3 as ``a -> 1``.
    """
    _check_open_unit(a, "a")
    if K < 0:
        raise ValueError(f"degree cap must be >= 0, got {K}")
    coeffs = [a] + [-(1 - a * a) * a ** (k - 1) for k in range(1, K + 1)]
    return TruncatedSeries.from_1d(coeffs)


def compose_linear(f: TruncatedSeries, a: Sequence[complex]) -> TruncatedSeries:
    """``f(a_1 z_1 + ... + a_n z_n)`` for a one-variable series ``f``."""
    if f.dimension != 1:
        raise ValueError("compose_linear needs a one-dimensional series")
    a = [complex(x) for x in a]
    n = len(a)
    if n == 0:
        raise ValueError("direction vector must be non-empty")
    coeffs: dict[MultiIndex, complex] = {}
    for k in range(f.cap + 1):
        fk = f[(k,)]
        if fk == 0:
            continue
        for alpha in enumerate_weight(n, k):
            coeffs[alpha] = fk * multinomial(alpha) * _monomial(a, alpha)
    return TruncatedSeries(n, f.cap, coeffs)


# -- evaluation -------------------------------------------------------------


def _check_point(f_dimension: int, z: Sequence[complex]) -> list[complex]:
    z = [complex(x) for x in z]
    if len(z) != f_dimension:
        raise ValueError(f"point has dimension {len(z)}, series has {f_dimension}")
    return z


def evaluate(f: TruncatedSeries, z: Sequence[complex]) -> complex:
    z = _check_point(f.dimension, z)
    return _csum(c * _monomial(z, alpha) for alpha, c in f.coeffs.items())


def evaluate_many(f: TruncatedSeries, points, chunk: int = 64) -> np.ndarray:
    """Vectorised :func:`evaluate` over an array of points, shape ``(P, n)``.

    Uses a BLAS reduction, so results can differ from :func:`evaluate` in
    the last few ulps.
    """
    pts = np.asarray(points, dtype=complex)
    if pts.ndim != 2 or pts.shape[1] != f.dimension:
        raise ValueError(f"points must have shape (P, {f.dimension})")
    exps, values = f._arrays
    out = np.empty(len(pts), dtype=complex)
    for start in range(0, len(pts), chunk):
        block = pts[start : start + chunk]
        mono = np.ones((len(block), len(values)), dtype=complex)
        for j in range(f.dimension):
            powers = np.ones((len(block), f.cap + 1), dtype=complex)
            for e in range(1, f.cap + 1):
                powers[:, e] = powers[:, e - 1] * block[:, j]
            mono *= powers[:, exps[:, j]]
        out[start : start + chunk] = mono @ values
    return out


def _check_radius(r: float) -> None:
    if not 0 < r <= 1:
        raise ValueError(f"radius must lie in (0, 1], got {r}")


def _majorant_terms(f: TruncatedSeries, D: DomainSpec, r: float) -> list[float]:
    _check_radius(r)
    if D.dimension != f.dimension:
        raise ValueError(f"domain dimension {D.dimension} != series dimension {f.dimension}")
    rk = [r**k for k in range(f.cap + 1)]
    # Indices were validated against f.dimension at construction.
    return [abs(c) * rk[sum(a)] * _sup_trusted(D, a) for a, c in f.coeffs.items()]


def _l1_terms(f: TruncatedSeries, r: float) -> list[float]:
    _check_radius(r)
    return [abs(c) * _l1_trusted(a, r) for a, c in f.coeffs.items()]


def _by_layer(f: TruncatedSeries, terms: list[float]) -> list[float]:
    layers: list[list[float]] = [[] for _ in range(f.cap + 1)]
    for alpha, t in zip(f.coeffs, terms):
        layers[sum(alpha)].append(t)
    return [math.fsum(layer) for layer in layers]


def majorant_layers(f: TruncatedSeries, D: DomainSpec, r: float) -> list[float]:
    """Per-degree pieces of :func:`bohr_majorant_sum`; entry ``k`` covers weight ``k``."""
    return _by_layer(f, _majorant_terms(f, D, r))


def bohr_majorant_sum(f: TruncatedSeries, D: DomainSpec, r: float) -> float:
    """``sum |c_alpha| d_alpha(r D)``, the sup-norm Bohr sum on ``r D``."""
    return math.fsum(_majorant_terms(f, D, r))


def majorant_with_layers(f: TruncatedSeries, D: DomainSpec, r: float) -> tuple[float, list[float]]:
    """:func:`bohr_majorant_sum` and :func:`majorant_layers` from one pass."""
    terms = _majorant_terms(f, D, r)
    return math.fsum(terms), _by_layer(f, terms)


def l1_layers(f: TruncatedSeries, r: float) -> list[float]:
    """Per-degree pieces of :func:`cone_l1_sum`."""
    return _by_layer(f, _l1_terms(f, r))


def cone_l1_sum(f: TruncatedSeries, r: float) -> float:
    """``sum |c_alpha| * ||z^alpha||_1`` on the boundary of ``r`` times the hypercone."""
    return math.fsum(_l1_terms(f, r))


def l1_with_layers(f: TruncatedSeries, r: float) -> tuple[float, list[float]]:
    terms = _l1_terms(f, r)
    return math.fsum(terms), _by_layer(f, terms)


# -- homogeneous expansions -------------------------------------------------


@dataclass(frozen=True)
class HomogeneousExpansion:
    """``f = P_0 + P_1 + ... + P_K`` with layer ``k`` holding weight-``k`` terms."""

    dimension: int
    layers: tuple

    def __post_init__(self):
        for k, layer in enumerate(self.layers):
            for alpha in layer:
                if len(alpha) != self.dimension or sum(alpha) != k:
                    raise ValueError(f"index {alpha} does not belong in layer {k}")

    @property
    def cap(self) -> int:
        return len(self.layers) - 1

    def to_series(self) -> TruncatedSeries:
        coeffs = {alpha: c for layer in self.layers for alpha, c in layer.items()}
        return TruncatedSeries(self.dimension, max(self.cap, 0), coeffs)


def to_homogeneous(f: TruncatedSeries) -> HomogeneousExpansion:
    layers: list[dict[MultiIndex, complex]] = [{} for _ in range(f.cap + 1)]
    for alpha, c in f.coeffs.items():
        layers[sum(alpha)][alpha] = c
    return HomogeneousExpansion(f.dimension, tuple(layers))


def _layer_values(h: HomogeneousExpansion, z: Sequence[complex]) -> list[complex]:
    z = _check_point(h.dimension, z)
    return [_csum(c * _monomial(z, alpha) for alpha, c in layer.items()) for layer in h.layers]


def homogeneous_bohr_sums(h: HomogeneousExpansion, points, chunk: int = 64) -> np.ndarray:
    """Vectorised :func:`homogeneous_bohr_sum` over points of shape ``(P, n)``."""
    f = h.to_series()
    pts = np.asarray(points, dtype=complex)
    if pts.ndim != 2 or pts.shape[1] != h.dimension:
        raise ValueError(f"points must have shape (P, {h.dimension})")
    exps, values = f._arrays
    if len(values) == 0:
        return np.zeros(len(pts))
    # Coefficients are stored by weight, so each layer is a contiguous run.
    weights = exps.sum(axis=1)
    starts = np.flatnonzero(np.r_[True, weights[1:] != weights[:-1]])
    out = np.empty(len(pts))
    for start in range(0, len(pts), chunk):
        block = pts[start : start + chunk]
        mono = np.ones((len(block), len(values)), dtype=complex)
        for j in range(h.dimension):
            powers = np.ones((len(block), f.cap + 1), dtype=complex)
            for e in range(1, f.cap + 1):
                powers[:, e] = powers[:, e - 1] * block[:, j]
            mono *= powers[:, exps[:, j]]
        layer_values = np.add.reduceat(mono * values, starts, axis=1)
        out[start : start + chunk] = np.abs(layer_values).sum(axis=1)
    return out


def slice_to_line(h: HomogeneousExpansion, a: Sequence[complex]) -> list[complex]:
    """Coefficients ``P_k(a)`` of the one-variable restriction ``t -> f(a t)``."""
    return _layer_values(h, a)


def homogeneous_bohr_sum(h: HomogeneousExpansion, z: Sequence[complex]) -> float:
    """``sum_k |P_k(z)|``."""
    return math.fsum(abs(v) for v in _layer_values(h, z))


# -- text format ------------------------------------------------------------


def _fmt(x: float) -> str:
    return format(x, ".17g")


def dumps(f: TruncatedSeries) -> str:
    lines = [f"{f.dimension} {f.cap}"]
    for alpha, c in f.coeffs.items():
        parts = " ".join(str(a) for a in alpha)
        lines.append(f"{parts}  {_fmt(c.real)}  {_fmt(c.imag)}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> TruncatedSeries:
    rows = [line.split() for line in text.splitlines() if line.strip()]
    if not rows or len(rows[0]) != 2:
        raise ValueError("series text must start with a 'n K' header")
    n, K = int(rows[0][0]), int(rows[0][1])
    coeffs: dict[MultiIndex, complex] = {}
    for row in rows[1:]:
        if len(row) != n + 2:
            raise ValueError(f"expected {n} index parts plus re and im, got {row}")
        alpha = tuple(int(p) for p in row[:n])
        if alpha in coeffs:
            raise ValueError(f"duplicate index {alpha}")
        coeffs[alpha] = complex(float(row[n]), float(row[n + 1]))
    return TruncatedSeries(n, K, coeffs)


def random_polynomial(rng: np.random.Generator, n: int, K: int) -> TruncatedSeries:
    """Polynomial with independent standard complex normal coefficients."""
    indices = list(enumerate_upto(n, K))
    draws = rng.standard_normal((len(indices), 2))
    return TruncatedSeries(
        n, K, {alpha: complex(re, im) for alpha, (re, im) in zip(indices, draws)}
    )
