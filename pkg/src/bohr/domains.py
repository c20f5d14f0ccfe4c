"""Complete Reinhardt domains and the monomial weights attached to them.

A domain is described by a :class:`DomainSpec`. The central quantity is
``d_alpha(D) = max over closure(D) of |z^alpha|``, which turns a coefficient
bound into a bound on the sup of a single term.

Custom domains are read from a whitespace separated text table::

    # comment lines and blank lines are ignored
    0 0   1
    1 0   0.5
    0 1   0.5
    1 1   0.25

Each line holds the ``n`` parts of a multi-index followed by its ``d_alpha``
value (a positive real). All lines must have the same number of parts.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Mapping, Optional, Sequence

from .combinatorics import (
    MultiIndex,
    check_index,
    enumerate_weight,
    factorial_product,
    self_power,
)


class DomainKind(str, enum.Enum):
    POLYDISK = "polydisk"
    BALL = "ball"
    HYPERCONE = "hypercone"
    MONOMIAL = "monomial"
    CUSTOM = "custom"


class DomainError(ValueError):
    """Raised for unsupported domain operations or malformed domain input."""


@dataclass(frozen=True)
class DomainSpec:
    kind: DomainKind
    dimension: int
    beta: Optional[MultiIndex] = None
    table: Optional[Mapping[MultiIndex, float]] = field(default=None, compare=False)

    def __post_init__(self):
        if self.dimension < 1:
            raise DomainError(f"dimension must be >= 1, got {self.dimension}")
        if self.kind is DomainKind.MONOMIAL:
            if self.beta is None or len(self.beta) != self.dimension:
                raise DomainError("monomial domain needs beta of the domain's dimension")
            if math.gcd(*self.beta) != 1:
                raise DomainError(f"beta parts must be coprime, got {self.beta}")
        if self.kind is DomainKind.CUSTOM:
            if not self.table:
                raise DomainError("custom domain needs a non-empty table")
            for alpha, value in self.table.items():
                if len(alpha) != self.dimension:
                    raise DomainError(f"table index {alpha} has wrong dimension")
                if not value > 0:
                    raise DomainError(f"d_alpha must be positive, got {value} at {alpha}")

    @classmethod
    def polydisk(cls, n: int) -> "DomainSpec":
        return cls(DomainKind.POLYDISK, n)

    @classmethod
    def ball(cls, n: int) -> "DomainSpec":
        return cls(DomainKind.BALL, n)

    @classmethod
    def hypercone(cls, n: int) -> "DomainSpec":
        return cls(DomainKind.HYPERCONE, n)

    @classmethod
    def monomial(cls, beta: Sequence[int]) -> "DomainSpec":
        beta = check_index(beta)
        return cls(DomainKind.MONOMIAL, len(beta), beta=beta)

    @classmethod
    def custom(cls, table: Mapping[Sequence[int], float]) -> "DomainSpec":
        clean = {check_index(a): float(v) for a, v in table.items()}
        dims = {len(a) for a in clean}
        if len(dims) != 1:
            raise DomainError(f"table indices have mixed dimensions {sorted(dims)}")
        return cls(DomainKind.CUSTOM, dims.pop(), table=clean)

    @property
    def name(self) -> str:
        return self.kind.value


def load_custom_domain(path) -> DomainSpec:
    """Read a custom ``d_alpha`` table (format in the module docstring)."""
    table: dict[MultiIndex, float] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) < 2:
            raise DomainError(f"{path}:{lineno}: need index parts and a value")
        try:
            alpha = check_index(int(p) for p in fields[:-1])
            value = float(fields[-1])
        except ValueError as exc:
            raise DomainError(f"{path}:{lineno}: {exc}") from None
        if alpha in table:
            raise DomainError(f"{path}:{lineno}: duplicate index {alpha}")
        table[alpha] = value
    if not table:
        raise DomainError(f"{path}: no entries")
    return DomainSpec.custom(table)


def _check_alpha(D: DomainSpec, alpha: Sequence[int]) -> MultiIndex:
    alpha = check_index(alpha)
    if len(alpha) != D.dimension:
        raise DomainError(f"index {alpha} does not match dimension {D.dimension}")
    return alpha


@lru_cache(maxsize=None)
def _hypercone_exact(alpha: MultiIndex) -> Fraction:
    k = sum(alpha)
    if k == 0:
        return Fraction(1)
    return Fraction(self_power(alpha), k**k)


def monomial_sup_sq(D: DomainSpec, alpha: Sequence[int]) -> Fraction:
    """Exact square of ``d_alpha(D)`` for the polydisk, ball and hypercone.

    The ball value itself is irrational in general, but its square is the
    rational ``alpha^alpha / |alpha|^|alpha|``.
    """
    alpha = _check_alpha(D, alpha)
    if D.kind is DomainKind.POLYDISK:
        return Fraction(1)
    if D.kind is DomainKind.BALL:
        return _hypercone_exact(alpha)
    if D.kind is DomainKind.HYPERCONE:
        return _hypercone_exact(alpha) ** 2
    raise DomainError(f"no exact d_alpha for {D.name} domains")


@lru_cache(maxsize=None)
def _named_sup(kind: DomainKind, alpha: MultiIndex) -> float:
    if kind is DomainKind.POLYDISK:
        return 1.0
    # float(Fraction) is correctly rounded, even for huge numerators.
    value = float(_hypercone_exact(alpha))
    if kind is DomainKind.BALL:
        return math.sqrt(value)
    return value


def monomial_sup(D: DomainSpec, alpha: Sequence[int]) -> float:
    """``d_alpha(D)``, the maximum of ``|z^alpha|`` over the closed domain."""
    return _sup_trusted(D, _check_alpha(D, alpha))


def _sup_trusted(D: DomainSpec, alpha: MultiIndex) -> float:
    # For callers that already validated alpha against D.
    if D.kind is DomainKind.CUSTOM:
        try:
            return D.table[alpha]
        except KeyError:
            raise DomainError(f"custom table has no entry for {alpha}") from None
    if D.kind is DomainKind.MONOMIAL:
        raise DomainError(
            "monomial domains are unbounded; use bounds.monomial_domain_radius"
        )
    return _named_sup(D.kind, alpha)


def _check_radius(r: float) -> float:
    if not 0 < r <= 1:
        raise ValueError(f"radius must lie in (0, 1], got {r}")
    return r


def scaled_monomial_sup(D: DomainSpec, alpha: Sequence[int], r: float) -> float:
    """``d_alpha(r D) = r**|alpha| * d_alpha(D)``."""
    _check_radius(r)
    return r ** sum(alpha) * monomial_sup(D, alpha)


def sphere_moment(alpha: Sequence[int], n: int) -> Fraction:
    """Integral of ``|z^(2 alpha)|`` over the unit sphere, invariant measure.

    Equals ``alpha! (n-1)! / (|alpha| + n - 1)!``.
    """
    alpha = check_index(alpha)
    if len(alpha) != n:
        raise DomainError(f"index {alpha} does not match dimension {n}")
    return _moment(alpha)


@lru_cache(maxsize=None)
def _moment(alpha: MultiIndex) -> Fraction:
    n = len(alpha)
    return Fraction(
        factorial_product(alpha) * math.factorial(n - 1),
        math.factorial(sum(alpha) + n - 1),
    )


@lru_cache(maxsize=None)
def _moment_float(alpha: MultiIndex) -> float:
    return float(_moment(alpha))


def cone_l1_weight(alpha: Sequence[int], n: int, r: float) -> float:
    """L1 norm of ``z^alpha`` on the boundary of ``r`` times the hypercone.

    Uses the same factorial ratio as :func:`sphere_moment`, times
    ``r**|alpha|``.
    """
    _check_radius(r)
    alpha = check_index(alpha)
    if len(alpha) != n:
        raise DomainError(f"index {alpha} does not match dimension {n}")
    return _moment_float(alpha) * r ** sum(alpha)


def _l1_trusted(alpha: MultiIndex, r: float) -> float:
    return _moment_float(alpha) * r ** sum(alpha)


def _phase_grid(count: int, density: int) -> list[tuple[complex, ...]]:
    """All ``density**count`` tuples of equally spaced unit phases."""
    roots = [cmath.exp(2j * math.pi * j / density) for j in range(density)]
    grid: list[tuple[complex, ...]] = [()]
    for _ in range(count):
        grid = [g + (w,) for g in grid for w in roots]
    return grid


def boundary_sample(D: DomainSpec, density: int) -> list[tuple[complex, ...]]:
    """Deterministic grid of points on the boundary of ``D``.

    Polydisk points lie on the torus. For the ball and hypercone the moduli
    run over the simplex grid ``beta / density`` (``|beta| = density``),
    mapped through a square root for the ball, and each non-zero coordinate
    gets ``density`` equally spaced phases. The grid only ever sees part of
    the boundary, so a max over it underestimates the true sup.
    """
    if density < 1:
        raise ValueError(f"density must be >= 1, got {density}")
    n = D.dimension
    if D.kind is DomainKind.POLYDISK:
        return _phase_grid(n, density)
    if D.kind not in (DomainKind.BALL, DomainKind.HYPERCONE):
        raise DomainError(f"cannot sample the boundary of a {D.name} domain")

    points: list[tuple[complex, ...]] = []
    for beta in enumerate_weight(n, density):
        t = [b / density for b in beta]
        moduli = [math.sqrt(x) for x in t] if D.kind is DomainKind.BALL else t
        support = [j for j, m in enumerate(moduli) if m > 0]
        for phases in _phase_grid(len(support), density):
            z = [0j] * n
            for j, w in zip(support, phases):
                z[j] = moduli[j] * w
            points.append(tuple(z))
    return points
