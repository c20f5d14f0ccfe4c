"""Certified bisection for increasing power-series equations.

An equation ``sum_{k>=k0} term(k, x) = target`` is solved with a truncated
partial sum ``S_p`` plus a rigorous bound on the discarded tail. Since all
terms are non-negative:

* ``S_p(lo) + tail(p, lo) < target`` proves the root lies above ``lo``;
* ``S_p(hi) > target`` proves it lies below ``hi``.

Both comparisons carry a slack of a few ulps of ``target`` to absorb float
rounding in the terms. This is an approximation of directed rounding, not
interval arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable

ULP_SLACK = 8


class BracketError(ValueError):
    """The search interval does not straddle the target."""


class TruncationError(ValueError):
    """The tail bound is too large to separate a point from the root."""


@dataclass(frozen=True)
class SeriesEquation:
    term: Callable[[int, float], float]
    target: float
    tail_bound: Callable[[int, float], float]
    x_lo: float
    x_hi: float
    first: int = 1
    name: str = ""

    def partial_sum(self, p: int, x: float) -> float:
        return math.fsum(self.term(k, x) for k in range(self.first, p + 1))


@dataclass(frozen=True)
class CertifiedRoot:
    lo: float
    hi: float
    p: int
    target: float
    sum_lo: float
    tail_lo: float
    sum_hi: float
    tail_hi: float
    steps: int
    equation: str = ""

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def to_dict(self) -> dict:
        out = asdict(self)
        out["width"] = self.width
        return out


def _slack(target: float) -> float:
    return ULP_SLACK * math.ulp(target)


def below_root(eq: SeriesEquation, p: int, x: float) -> tuple[bool, float, float]:
    """Whether the evidence proves the root is strictly above ``x``."""
    s = eq.partial_sum(p, x)
    t = eq.tail_bound(p, x)
    return s + t + _slack(eq.target) < eq.target, s, t


def above_root(eq: SeriesEquation, p: int, x: float) -> tuple[bool, float]:
    """Whether the partial sum alone proves the root is strictly below ``x``."""
    s = eq.partial_sum(p, x)
    return s - _slack(eq.target) > eq.target, s


def bisect_increasing(
    eq: SeriesEquation, p: int, tol: float = 1e-9, strict: bool = True
) -> CertifiedRoot:
    """Shrink ``(eq.x_lo, eq.x_hi)`` to a certified bracket of width <= ``tol``.

    Raises :class:`BracketError` if the end points are on the wrong sides of
    the target, and :class:`TruncationError` if the tail bound at ``p`` is
    too coarse to certify a point below the root. Once a midpoint falls in
    the band the tail leaves undecided, the two ends are refined separately;
    with ``strict=False`` the resulting wider bracket is returned instead of
    raising.
    """
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    lo, hi = eq.x_lo, eq.x_hi
    ok_lo, s_lo, t_lo = below_root(eq, p, lo)
    if not ok_lo:
        if s_lo < eq.target:
            raise TruncationError(
                f"tail bound {t_lo:.3g} at x={lo} swamps the gap to the target; raise p"
            )
        raise BracketError(f"partial sum at x_lo={lo} is already >= target")
    ok_hi, s_hi = above_root(eq, p, hi)
    if not ok_hi:
        raise BracketError(f"partial sum at x_hi={hi} does not exceed the target")
    t_hi = eq.tail_bound(p, hi)

    steps = 0
    undecided = None
    while hi - lo > tol:
        mid = lo + (hi - lo) / 2
        if mid <= lo or mid >= hi:
            break  # interval is down to adjacent floats
        steps += 1
        ok, s, t = below_root(eq, p, mid)
        if ok:
            lo, s_lo, t_lo = mid, s, t
            continue
        ok, s = above_root(eq, p, mid)
        if ok:
            hi, s_hi, t_hi = mid, s, eq.tail_bound(p, mid)
            continue
        undecided = mid
        break

    if undecided is not None:
        # Push lo up towards the band from below.
        a, b = lo, undecided
        while b - a > tol / 2:
            mid = a + (b - a) / 2
            if mid <= a or mid >= b:
                break
            steps += 1
            ok, s, t = below_root(eq, p, mid)
            if ok:
                a, lo, s_lo, t_lo = mid, mid, s, t
            else:
                b = mid
        # Pull hi down towards the band from above.
        a, b = undecided, hi
        while b - a > tol / 2:
            mid = a + (b - a) / 2
            if mid <= a or mid >= b:
                break
            steps += 1
            ok, s = above_root(eq, p, mid)
            if ok:
                b, hi, s_hi, t_hi = mid, mid, s, eq.tail_bound(p, mid)
            else:
                a = mid
        if strict and hi - lo > tol:
            raise TruncationError(
                f"tail at p={p} leaves a bracket of width {hi - lo:.3g} > tol {tol}; raise p"
            )
    return CertifiedRoot(lo, hi, p, eq.target, s_lo, t_lo, s_hi, t_hi, steps, eq.name)


def recheck(eq: SeriesEquation, root: CertifiedRoot, p: int) -> bool:
    """Re-verify both evidence inequalities of ``root`` at truncation ``p``."""
    return below_root(eq, p, root.lo)[0] and above_root(eq, p, root.hi)[0]


def max_steps(x_lo: float, x_hi: float, tol: float) -> int:
    return math.ceil(math.log2((x_hi - x_lo) / tol)) + 1


def tail_geometric(p: int, x: float) -> float:
    """Bound on ``sum_{k>p} x^k / k^k``: ``x^(p+1) / ((p+1)^(p+1) (1-x))``."""
    if not 0 <= x < 1:
        raise ValueError(f"x must lie in [0, 1), got {x}")
    m = p + 1
    # m**m may exceed the float range; take the ratio in log space.
    if x == 0:
        return 0.0
    return math.exp(m * (math.log(x) - math.log(m))) / (1 - x)


def tail_stirling(x: float, p: int = 25) -> float:
    """Bound on ``sum_{k>p} k^k/k! x^k`` from Stirling's lower bound on ``k!``.

    Since ``k! >= sqrt(2 pi k) (k/e)^k``, each term is at most
    ``(e x)^k / sqrt(2 pi (p+1))`` for ``k > p``; summing the geometric tail
    gives ``(e x)^(p+1) / (sqrt(2 pi (p+1)) (1 - e x))``. With the default
    ``p = 25`` the prefactor is ``1/sqrt(52 pi)``.
    """
    ex = math.e * x
    if not 0 <= x or not ex < 1:
        raise ValueError(f"need 0 <= x < 1/e, got {x}")
    m = p + 1
    return ex**m / (math.sqrt(2 * math.pi * m) * (1 - ex))
