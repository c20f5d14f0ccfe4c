"""End-to-end checks: Bohr-sum verdicts, the constants table, the seeded suite.

A :class:`BohrReport` compares a computed sum against 1. Sums of truncated
series are lower bounds for the full series, so every report also carries a
truncation ``slack`` and the verdict is ``holds`` only when
``sum < 1 - slack``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, replace
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from . import bounds
from .bounds import LOWER, UPPER, round_directed
from .domains import DomainKind, DomainSpec, boundary_sample
from .rootfind import bisect_increasing
from .series import (
    TruncatedSeries,
    compose_linear,
    evaluate_many,
    extremal_cone_family,
    homogeneous_bohr_sums,
    l1_with_layers,
    majorant_with_layers,
    mobius_witness,
    random_polynomial,
    to_homogeneous,
)

HOLDS = "holds"
FAILS = "fails"

SUP_SCALE = 0.999
RESCALE_SAFETY = 1.05
PAST_THRESHOLD = 1.02


@dataclass
class BohrReport:
    case_id: str
    check: str
    domain: str
    n: int
    r: float
    sum: float
    slack: float
    verdict: str
    K: int
    last_term: float
    threshold: float = 1.0
    expected: Optional[str] = None
    params: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.expected is None or self.verdict == self.expected

    def to_dict(self) -> dict:
        out = asdict(self)
        out["ok"] = self.ok
        return out


def geometric_slack(layers: Sequence[float]) -> float:
    """Estimate of the sum of the layers past the last one.

    Extrapolates the ratio of the last two layer sums as a geometric
    series; returns ``inf`` when that ratio is not below 1. A lone constant
    layer has nothing to extrapolate from and counts as exact.
    """
    if len(layers) < 2 or layers[-1] == 0:
        return 0.0
    if layers[-2] == 0:
        return math.inf
    q = layers[-1] / layers[-2]
    if q >= 1:
        return math.inf
    return layers[-1] * q / (1 - q)


def _verdict(total: float, slack: float) -> str:
    return HOLDS if total < 1 - slack else FAILS


@lru_cache(maxsize=32)
def _sample_array(D: DomainSpec, density: int) -> np.ndarray:
    return np.array(boundary_sample(D, density), dtype=complex).reshape(-1, D.dimension)


def estimate_sup(f: TruncatedSeries, D: DomainSpec, density: int) -> float:
    """Max of ``|f|`` over the boundary grid of ``D`` shrunk by 0.999.

    A lower bound on the true sup over ``D``; refining the grid can only
    raise it when the finer grid contains the coarser one.
    """
    if D.dimension != f.dimension:
        raise ValueError(f"domain dimension {D.dimension} != series dimension {f.dimension}")
    points = _sample_array(D, density) * SUP_SCALE
    return float(np.max(np.abs(evaluate_many(f, points))))


def check_bohr(
    f: TruncatedSeries,
    D: DomainSpec,
    r: float,
    slack: Optional[float] = None,
    case_id: str = "",
    expected: Optional[str] = None,
    params: Optional[dict] = None,
) -> BohrReport:
    """Sup-norm Bohr sum of ``f`` on ``r D`` against 1.

    ``slack=None`` treats ``f`` as a truncation and estimates the missing
    tail from its top layers; pass ``0.0`` for an exact polynomial.
    """
    total, layers = majorant_with_layers(f, D, r)
    if slack is None:
        slack = geometric_slack(layers)
    return BohrReport(
        case_id, "majorant", D.name, f.dimension, r, total, slack,
        _verdict(total, slack), f.cap, layers[-1], expected=expected, params=params or {},
    )


def check_l1(
    f: TruncatedSeries,
    r: float,
    slack: Optional[float] = None,
    case_id: str = "",
    expected: Optional[str] = None,
    params: Optional[dict] = None,
) -> BohrReport:
    """Like :func:`check_bohr` but for the L1 sum on the hypercone boundary."""
    total, layers = l1_with_layers(f, r)
    if slack is None:
        slack = geometric_slack(layers)
    return BohrReport(
        case_id, "l1", "hypercone", f.dimension, r, total, slack,
        _verdict(total, slack), f.cap, layers[-1], expected=expected, params=params or {},
    )


def _line_domain_samples(a: np.ndarray, r: float, density: int) -> np.ndarray:
    """Points with ``sum a_j z_j = r e^(i theta)``, moved along the kernel of ``a``."""
    n = len(a)
    thetas = 2 * np.pi * np.arange(density) / density
    base = np.outer(r * np.exp(1j * thetas), np.conj(a) / np.vdot(a, a))
    if n == 1:
        return base
    _, _, vh = np.linalg.svd(a[None, :])
    kernel = np.conj(vh[1:])
    shifts = [base]
    for v in kernel:
        for t in (0.5, 2.0):
            shifts.append(base + t * v)
    return np.concatenate(shifts)


def check_homogeneous_slice(
    f1d: TruncatedSeries,
    a: Sequence[complex],
    r: float,
    density: int = 64,
    slack: Optional[float] = None,
    case_id: str = "",
    expected: Optional[str] = None,
) -> BohrReport:
    """Homogeneous Bohr sum of ``f1d(a . z)`` on the boundary of ``r P_a``.

    ``P_a = {|a . z| < 1}``. The series is composed with ``a``, split into
    homogeneous layers, and ``sum_k |P_k(z)|`` is maximised over sampled
    points. Raises ``ValueError`` when the sampled sup of ``f1d`` on the disk
    exceeds 1 by more than the truncation estimate.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 1 or not np.any(a):
        raise ValueError("direction vector must be a non-zero 1-d vector")
    if f1d.dimension != 1:
        raise ValueError("check_homogeneous_slice needs a one-dimensional series")
    coeffs = f1d.coefficients_1d()
    premise_sup = estimate_sup(f1d, DomainSpec.polydisk(1), 256)
    premise_slack = geometric_slack([abs(c) for c in coeffs]) if slack is None else slack
    if premise_sup > 1 + premise_slack + 1e-12:
        raise ValueError(f"premise |f| < 1 violated on the disk: sampled sup {premise_sup}")

    h = to_homogeneous(compose_linear(f1d, a))
    points = _line_domain_samples(a, r, density)
    total = float(np.max(homogeneous_bohr_sums(h, points)))
    layers = [abs(c) * r**k for k, c in enumerate(coeffs)]
    if slack is None:
        slack = geometric_slack(layers)
    return BohrReport(
        case_id, "homogeneous", "halfspace", len(a), r, total, slack,
        _verdict(total, slack), f1d.cap, layers[-1], expected=expected,
        params={"premise_sup": premise_sup, "samples": len(points)},
    )


# -- constants table --------------------------------------------------------


@dataclass
class TableRow:
    key: str
    description: str
    computed: float
    shown: str
    relation: str
    reference: Optional[float]
    status: str

    def to_dict(self) -> dict:
        return asdict(self)


_RELATIONS = {
    "<": lambda x, y: x < y,
    "<=": lambda x, y: x <= y,
    ">": lambda x, y: x > y,
    ">=": lambda x, y: x >= y,
}


def _row(key, description, computed, direction, relation=None, reference=None, tol=None):
    shown = str(round_directed(computed, direction))
    if relation is None:
        status = "info"
    elif relation == "~":
        status = "pass" if abs(computed - reference) <= tol else "fail"
    else:
        status = "pass" if _RELATIONS[relation](computed, reference) else "fail"
    return TableRow(key, description, computed, shown, relation or "", reference, status)


def p_sweep(p_values: Sequence[int] = range(5, 26), tol: float = 1e-9) -> dict[int, float]:
    """Roots of ``sum_{k<=p} x^k/k^k = 1/2`` for each truncation degree ``p``."""
    # Each truncated equation is solved exactly, so its tail is zero.
    truncated = replace(bounds.self_power_equation(), tail_bound=lambda p, x: 0.0)
    out = {}
    for p in p_values:
        root = bisect_increasing(truncated, p, tol)
        out[p] = (root.lo + root.hi) / 2
    return out


def run_constants_table(n_max: int = 10) -> list[TableRow]:
    rows: list[TableRow] = []
    rows.append(_row("classical", "one-variable radius 1 - (2/3)^1", bounds.general_lower(1).value,
                     "exact", "~", 1 / 3, 0.0))
    for n in range(1, n_max + 1):
        rows.append(_row(f"general_lower_n{n}", f"1 - (2/3)^(1/{n})",
                         bounds.general_lower(n).value, LOWER))

    x0 = bounds.cone_threshold_root()
    rows.append(_row("x0_lower", "certified lower end of x0", x0.lo, LOWER, ">=", 0.446662))
    rows.append(_row("x0_upper", "certified upper end of x0", x0.hi, UPPER, "<=", 0.446663))
    sweep = p_sweep()
    agree = sum(1 for v in sweep.values() if round(v, 6) == 0.446662)
    rows.append(_row("x0_p_sweep", "truncations p=5..25 rounding to 0.446662",
                     agree, "exact", ">=", len(sweep)))

    for n in range(1, n_max + 1):
        rows.append(_row(f"hypercone_upper_n{n}", f"hypercone upper bound, n={n}",
                         bounds.hypercone_upper(n).value, UPPER, "<=", 0.446663 / n))
    rows.append(_row("b2_lower", "B_2 hypercone lower 1 - sqrt(2/3)",
                     bounds.general_lower(2).value, LOWER, "~", 0.183503, 1e-6))
    rows.append(_row("b2_upper", "B_2 hypercone upper from x0/2",
                     bounds.hypercone_upper(2).value, UPPER, "<=", 0.223332))
    rows.append(_row("b2_refined", "B_2 hypercone upper, exact layer masses",
                     bounds.refined_cone_upper(2).value, UPPER, "<", 0.191373))
    rows.append(_row("refined_n1", "refined bound at n=1 (classical 1/3)",
                     bounds.refined_cone_upper(1).value, UPPER, "~", 1 / 3, 1e-9))

    l1_lo, l1_hi = bounds.l1_bounds()
    rows.append(_row("l1_lower", "hypercone L1 radius lower", l1_lo.value, LOWER, ">", 0.238843))
    rows.append(_row("l1_upper", "hypercone L1 radius upper", l1_hi.value, UPPER, "~", 1 / 3, 0.0))

    asym = bounds.asymptotics()
    rows.append(_row("slope", "log(3/2)", asym.slope, "exact", "~", 0.405465, 1e-6))
    rows.append(_row("ratio_limsup", "0.446663 / log(3/2)", asym.ratio_limsup, UPPER, "<", 1.1016))
    rows.append(_row("ratio_above_one", "0.446663 / log(3/2) exceeds 1",
                     asym.ratio_limsup, LOWER, ">", 1.0))
    rows.append(_row("scaled_lower_n1000", "1000 * general_lower(1000)",
                     bounds.Asymptotics.scaled_lower(1000), LOWER, "~", asym.slope, 3e-4))

    for n in (2, 4, 9, 16, 100):
        lo, hi = bounds.polydisk_bounds(n)
        rows.append(_row(f"polydisk_lower_n{n}", f"polydisk lower 2/(5 sqrt {n})", lo.value, LOWER,
                         "<", hi.value))
        rows.append(_row(f"polydisk_upper_n{n}", f"polydisk upper 2 sqrt(log {n})/sqrt {n}",
                         hi.value, UPPER))
    for n in (2, 4, 10):
        rows.append(_row(f"ball_lower_n{n}", f"ball lower 2/(5*{n})", bounds.ball_lower(n).value, LOWER))
    for beta in ((1,), (1, 1), (1, 2), (2, 3), (1, 1, 1)):
        tag = "_".join(map(str, beta))
        rows.append(_row(f"monomial_{tag}", f"monomial domain radius, beta={beta}",
                         bounds.monomial_domain_radius(beta).value, "exact"))
    return rows


# -- seeded suite -----------------------------------------------------------


_SUITE_DENSITY = {
    DomainKind.POLYDISK: {1: 256, 2: 32, 3: 12},
    DomainKind.BALL: {1: 256, 2: 24, 3: 10},
    DomainKind.HYPERCONE: {1: 256, 2: 24, 3: 10},
}


def _random_cases(rng, budget: str) -> list[BohrReport]:
    reports = []
    per_combo = 2 if budget == "small" else 5
    degree = {1: 6, 2: 4, 3: 3} if budget == "small" else {1: 10, 2: 6, 3: 4}
    for n in (1, 2, 3):
        for kind in (DomainKind.POLYDISK, DomainKind.BALL, DomainKind.HYPERCONE):
            D = DomainSpec(kind, n)
            for i in range(per_combo):
                raw = random_polynomial(rng, n, degree[n])
                sup = estimate_sup(raw, D, _SUITE_DENSITY[kind][n])
                scale = 1 / (RESCALE_SAFETY * sup)
                f = TruncatedSeries(n, raw.cap, {a: c * scale for a, c in raw.coeffs.items()})
                r = bounds.general_lower(n).value
                reports.append(check_bohr(
                    f, D, r, slack=0.0, case_id=f"random/{kind.value}/n{n}/{i}",
                    expected=HOLDS, params={"rescale": scale},
                ))
    return reports


_cone_family = lru_cache(maxsize=16)(extremal_cone_family)


def _cone_cases(budget: str) -> list[BohrReport]:
    reports = []
    a_values = (0.6, 0.9) if budget == "small" else (0.3, 0.6, 0.9)
    for a in a_values:
        x0 = bounds.cone_threshold_root(a)
        for n in (1, 2, 3):
            f = _cone_family(a, n, 60)
            D = DomainSpec.hypercone(n)
            tag = f"a{a}/n{n}"
            params = {"a": a}
            reports.append(check_bohr(f, D, bounds.general_lower(n).value,
                                      case_id=f"cone/{tag}/guaranteed", expected=HOLDS, params=params))
            reports.append(check_bohr(f, D, PAST_THRESHOLD * x0.hi / (a * n),
                                      case_id=f"cone/{tag}/past_threshold", expected=FAILS,
                                      params=params))
            reports.append(check_l1(f, 0.23, case_id=f"cone_l1/{tag}/below", expected=HOLDS,
                                    params=params))
            reports.append(check_l1(f, PAST_THRESHOLD / (1 + 2 * a),
                                    case_id=f"cone_l1/{tag}/past_threshold", expected=FAILS,
                                    params=params))
    return reports


def _mobius_cases(budget: str) -> list[BohrReport]:
    reports = []
    a_values = (0.6, 0.9) if budget == "small" else (0.6, 0.9, 0.99)
    disk = DomainSpec.polydisk(1)
    for a in a_values:
        f = mobius_witness(a, 400)
        threshold = 1 / (1 + 2 * a)
        reports.append(check_bohr(f, disk, 0.98 * threshold, case_id=f"mobius/a{a}/below",
                                  expected=HOLDS, params={"a": a}))
        reports.append(check_bohr(f, disk, PAST_THRESHOLD * threshold,
                                  case_id=f"mobius/a{a}/past_threshold", expected=FAILS,
                                  params={"a": a}))
    return reports


def _homogeneous_cases(rng, budget: str) -> list[BohrReport]:
    reports = []
    directions = [(1.0,), (0.6, 0.8j), (0.5, -0.5, 0.5j)]
    witness = mobius_witness(0.97, 40)
    for a in directions:
        tag = f"n{len(a)}"
        reports.append(check_homogeneous_slice(witness, a, 1 / 3 - 1e-3, case_id=f"slice/{tag}/mobius/below",
                                      expected=HOLDS))
        reports.append(check_homogeneous_slice(witness, a, 1 / 3 + 1e-2,
                                      case_id=f"slice/{tag}/mobius/past_threshold", expected=FAILS))
    count = 2 if budget == "small" else 6
    disk = DomainSpec.polydisk(1)
    for i in range(count):
        raw = random_polynomial(rng, 1, 8)
        sup = estimate_sup(raw, disk, 256)
        f = TruncatedSeries(1, raw.cap, {k: c / (RESCALE_SAFETY * sup) for k, c in raw.coeffs.items()})
        a = directions[i % len(directions)]
        reports.append(check_homogeneous_slice(f, a, 1 / 3 - 1e-3, slack=0.0,
                                      case_id=f"slice/n{len(a)}/random/{i}", expected=HOLDS))
    return reports


def run_verification_suite(seed: int = 0, budget: str = "small") -> list[BohrReport]:
    """Deterministic battery of must-hold and must-fail checks.

    Random polynomials are rescaled by their sampled sup (times 1.05) and
    checked at the guaranteed radius; extremal families are checked on both
    sides of their thresholds. Output is ordered by case id.
    """
    if budget not in ("small", "full"):
        raise ValueError(f"budget must be 'small' or 'full', got {budget!r}")
    rng = np.random.default_rng(seed)
    reports = _random_cases(rng, budget)
    reports += _cone_cases(budget)
    reports += _mobius_cases(budget)
    reports += _homogeneous_cases(rng, budget)
    return sorted(reports, key=lambda rep: rep.case_id)
