"""Closed-form and root-based bounds on Bohr radii.

Three radii appear here. ``B_n`` is the sup-norm radius of a complete
Reinhardt domain, ``K_n`` the polydisk radius and ``L_n`` the L1 radius on
the hypercone boundary. Bounds that come from an equation carry the
:class:`~bohr.rootfind.CertifiedRoot` that justifies them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import ROUND_CEILING, ROUND_FLOOR, ROUND_HALF_EVEN, Decimal
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .combinatorics import check_index, enumerate_weight, multinomial, self_power, simplex_count
from .rootfind import CertifiedRoot, SeriesEquation, bisect_increasing, tail_geometric, tail_stirling

LOWER = "lower"
UPPER = "upper"

#: Reference numerator of the hypercone upper bound, ``B_n < 0.446663 / n``.
REFERENCE_CONE_NUMERATOR = 0.446663


def round_directed(x: float, direction: str, digits: int = 6) -> Decimal:
    """Round ``x`` to ``digits`` decimals, down for lower bounds and up for upper ones.

    A float whose shortest repr already has at most ``digits`` decimals (say
    ``0.446662``) is shown as that decimal rather than nudged by one unit.
    """
    quantum = Decimal(1).scaleb(-digits)
    short = Decimal(repr(float(x)))
    if short == short.quantize(quantum):
        return short.quantize(quantum)
    mode = {LOWER: ROUND_FLOOR, UPPER: ROUND_CEILING}.get(direction, ROUND_HALF_EVEN)
    return Decimal(x).quantize(quantum, rounding=mode)


@dataclass(frozen=True)
class RadiusBound:
    """One side of an estimate for a Bohr radius.

    ``exact`` marks a value that is the radius itself rather than a bound.
    ``asymptotic`` holds a sharper constant that the source only claims for
    large enough ``n``; it is informational and never used in comparisons.
    """

    quantity: str
    direction: str
    value: float
    domain: str
    n: Optional[int]
    note: str = ""
    exact: bool = False
    asymptotic: Optional[float] = None
    certificate: Optional[CertifiedRoot] = field(default=None, compare=False)

    def __post_init__(self):
        if self.direction not in (LOWER, UPPER):
            raise ValueError(f"direction must be lower or upper, got {self.direction}")
        if not self.value > 0:
            raise ValueError(f"radius bound must be positive, got {self.value}")
        # Upper bounds above 1 are trivially true but still reported as computed.
        if self.direction == LOWER and not self.value < 1:
            raise ValueError(f"lower bound must be < 1, got {self.value}")

    def rounded(self, digits: int = 6) -> Decimal:
        direction = "exact" if self.exact else self.direction
        return round_directed(self.value, direction, digits)

    def to_dict(self) -> dict:
        out = {
            "quantity": self.quantity,
            "direction": self.direction,
            "value": self.value,
            "rounded": str(self.rounded()),
            "domain": self.domain,
            "n": self.n,
            "exact": self.exact,
            "note": self.note,
        }
        if self.asymptotic is not None:
            out["asymptotic"] = self.asymptotic
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_dict()
        return out


def _check_n(n: int, least: int = 1) -> None:
    if n < least:
        raise ValueError(f"n must be >= {least}, got {n}")


# -- every bounded domain ---------------------------------------------------


def general_lower(n: int) -> RadiusBound:
    """``1 - (2/3)^(1/n)``, valid for every complete bounded Reinhardt domain."""
    _check_n(n)
    value = 1 / 3 if n == 1 else -math.expm1(math.log(2 / 3) / n)
    return RadiusBound("B_n", LOWER, value, "any", n, "binomial majorant threshold")


def binomial_majorant(c0: float, n: int, r: float) -> float:
    """``c0 + (1 - c0^2) ((1-r)^(-n) - 1)``.

    Bounds the sup-norm Bohr sum of any function with ``|f| < 1`` and
    ``|f(0)| = c0``. At ``r = general_lower(n)`` the bracket equals 1/2 and
    the value becomes ``1 - (1-c0)^2 / 2``.
    """
    if not 0 <= c0 < 1:
        raise ValueError(f"c0 must lie in [0, 1), got {c0}")
    if not 0 <= r < 1:
        raise ValueError(f"r must lie in [0, 1), got {r}")
    return c0 + (1 - c0 * c0) * math.expm1(-n * math.log1p(-r))


# -- ball -------------------------------------------------------------------


def ball_lower(n: int) -> RadiusBound:
    """``2/(5n)`` for ``n >= 2``; ``1/(2n)`` is attached as the large-``n`` constant."""
    _check_n(n)
    if n == 1:
        return general_lower(1)
    return RadiusBound(
        "B_n", LOWER, 2 / (5 * n), "ball", n, "2/(5n); 1/(2n) for large n",
        asymptotic=1 / (2 * n),
    )


def ball_majorant(c0: float, n: int, r: float, K: int = 60) -> float:
    """Truncated majorant ``c0 + (1-c0^2)(x + sum_{k=2}^K sqrt(C(n+k-1,k)) x^k)``, ``x = r sqrt(n)``."""
    if not 0 <= c0 < 1:
        raise ValueError(f"c0 must lie in [0, 1), got {c0}")
    if K < 2:
        raise ValueError(f"K must be >= 2, got {K}")
    x = r * math.sqrt(n)
    if not 0 <= x < 1:
        raise ValueError(f"need r*sqrt(n) < 1, got {x}")
    tail = math.fsum(math.sqrt(simplex_count(n, k)) * x**k for k in range(2, K + 1))
    return c0 + (1 - c0 * c0) * (x + tail)


# -- polydisk ---------------------------------------------------------------


def polydisk_bounds(n: int) -> tuple[RadiusBound, RadiusBound]:
    """Imported polydisk estimates: ``2/(5 sqrt n) < K_n < 2 sqrt(log n) / sqrt(n)``.

    The older lower constant ``1/(3 sqrt n)`` is always weaker, and
    ``1/(2 sqrt n)`` is attached as the large-``n`` constant.
    """
    _check_n(n, 2)
    root = math.sqrt(n)
    lower = RadiusBound(
        "K_n", LOWER, max(1 / (3 * root), 2 / (5 * root)), "polydisk", n,
        "2/(5 sqrt n); 1/(2 sqrt n) for large n", asymptotic=1 / (2 * root),
    )
    upper = RadiusBound(
        "K_n", UPPER, 2 * math.sqrt(math.log(n)) / root, "polydisk", n, "2 sqrt(log n)/sqrt(n)"
    )
    return lower, upper


# -- hypercone --------------------------------------------------------------


@lru_cache(maxsize=None)
def cone_layer_mass(k: int, n: int) -> Fraction:
    """``sum_{|alpha|=k} multinomial(alpha) alpha^alpha / k^k`` exactly.

    The numerator is an integer, so only one division is needed.
    """
    if k < 1 or n < 1:
        raise ValueError(f"need k >= 1 and n >= 1, got k={k}, n={n}")
    total = sum(multinomial(a) * self_power(a) for a in enumerate_weight(n, k))
    return Fraction(total, k**k)


@lru_cache(maxsize=None)
def _cone_layer_mass_float(k: int, n: int) -> float:
    return float(cone_layer_mass(k, n))


def self_power_equation(target: float = 0.5) -> SeriesEquation:
    """``sum_{k>=1} x^k / k^k = target`` on ``(0, 0.9)`` with a geometric tail."""
    return SeriesEquation(
        term=lambda k, x: (x / k) ** k,
        target=target,
        tail_bound=tail_geometric,
        x_lo=0.0,
        x_hi=0.9,
        name="sum x^k/k^k",
    )


@lru_cache(maxsize=None)
def _stirling_coefficient(k: int) -> float:
    return float(Fraction(k**k, math.factorial(k)))


def l1_equation() -> SeriesEquation:
    """``sum_{k>=1} k^k/k! x^k = 1/2`` on ``(0, 0.3)`` with the Stirling tail."""
    return SeriesEquation(
        term=lambda k, x: _stirling_coefficient(k) * x**k,
        target=0.5,
        tail_bound=lambda p, x: tail_stirling(x, p),
        x_lo=0.0,
        x_hi=0.3,
        name="sum k^k/k! x^k",
    )


def cone_mass_equation(n: int, target: float = 0.5) -> SeriesEquation:
    """``sum_{k>=1} T_k(n) x^k = target`` with ``T_k = cone_layer_mass(k, n)``.

    Since ``T_k <= n^k`` the tail past ``p`` is at most ``(nx)^(p+1)/(1-nx)``.
    """
    _check_n(n)

    def tail(p: int, x: float) -> float:
        q = n * x
        if not q < 1:
            raise ValueError(f"tail envelope needs n*x < 1, got {q}")
        return q ** (p + 1) / (1 - q)

    return SeriesEquation(
        term=lambda k, x: _cone_layer_mass_float(k, n) * x**k,
        target=target,
        tail_bound=tail,
        x_lo=0.0,
        x_hi=0.9 / n,
        name=f"sum T_k({n}) x^k",
    )


def cone_threshold_root(a: float = 1.0, p: int = 25, tol: float = 1e-9) -> CertifiedRoot:
    """Root ``x0(a)`` of ``sum x^k/k^k = a/(1+a)``.

    For ``0 < a <= 1`` the cone family fails the Bohr inequality at every
    radius ``r >= x0(a) / (a n)``; ``a = 1`` gives the ``1/2`` equation.
    """
    if not 0 < a <= 1:
        raise ValueError(f"a must lie in (0, 1], got {a}")
    return bisect_increasing(self_power_equation(a / (1 + a)), p, tol)


def hypercone_upper(n: int, p: int = 25, tol: float = 1e-9) -> RadiusBound:
    """``x0 / n`` with ``x0`` the certified upper end rounded up to 6 decimals."""
    _check_n(n)
    root = cone_threshold_root(1.0, p, tol)
    numerator = float(round_directed(root.hi, UPPER, 6))
    return RadiusBound(
        "B_n", UPPER, numerator / n, "hypercone", n,
        f"{numerator}/n from the cone family as a -> 1", certificate=root,
    )


def refined_cone_upper(n: int, K: int = 60, tol: float = 1e-9) -> RadiusBound:
    """Upper bound from the cone family with exact layer masses ``T_k(n)``.

    Sharper than :func:`hypercone_upper` because ``T_k(n) >= n^k/k^k``.
    """
    root = bisect_increasing(cone_mass_equation(n), K, tol)
    return RadiusBound(
        "B_n", UPPER, root.hi, "hypercone", n, "exact layer masses, a -> 1", certificate=root
    )


def l1_bounds(p: int = 25, tol: float = 1e-9) -> tuple[RadiusBound, RadiusBound]:
    """Dimension-free bounds on the hypercone L1 radius: root of the k^k/k! series, and 1/3."""
    # The Stirling tail is coarse at p = 25, so the bracket is wider than tol.
    root = bisect_increasing(l1_equation(), p, tol, strict=False)
    lower = RadiusBound(
        "L_n", LOWER, root.lo, "hypercone", None, "Stirling-certified root", certificate=root
    )
    upper = RadiusBound("L_n", UPPER, 1 / 3, "hypercone", None, "cone family L1 threshold as a -> 1")
    return lower, upper


@dataclass(frozen=True)
class Asymptotics:
    slope: float
    ratio_limsup: float
    ratio_limsup_certified: float

    @staticmethod
    def scaled_lower(n: int) -> float:
        """``n * general_lower(n)``, which tends to ``log(3/2)``."""
        return n * general_lower(n).value


def asymptotics() -> Asymptotics:
    """Large-``n`` behaviour of the hypercone bracket.

    ``ratio_limsup`` divides the reference numerator 0.446663 by the slope;
    ``ratio_limsup_certified`` uses the certified upper end of the root.
    """
    slope = math.log(1.5)
    hi = cone_threshold_root().hi
    return Asymptotics(slope, REFERENCE_CONE_NUMERATOR / slope, hi / slope)


# -- monomial domains -------------------------------------------------------


def monomial_domain_radius(beta: Sequence[int]) -> RadiusBound:
    """Exact radius ``3^(-1/|beta|)`` of ``{|z^beta| < c}`` for coprime ``beta``.

    Bounded holomorphic functions there depend on ``z^beta`` alone, so the
    problem reduces to the disk.
    """
    beta = check_index(beta)
    if math.gcd(*beta) != 1:
        raise ValueError(f"beta parts must be coprime, got {beta}")
    value = 3.0 ** (-1 / sum(beta))
    return RadiusBound("B_n", LOWER, value, "monomial", len(beta), f"beta={list(beta)}", exact=True)
