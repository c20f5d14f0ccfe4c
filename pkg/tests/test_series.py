import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from bohr.combinatorics import enumerate_weight, multinomial, simplex_count
from bohr.domains import DomainSpec
from bohr.series import (
    HomogeneousExpansion,
    TruncatedSeries,
    bohr_majorant_sum,
    compose_linear,
    cone_l1_sum,
    dumps,
    evaluate,
    evaluate_many,
    extremal_cone_family,
    homogeneous_bohr_sum,
    homogeneous_bohr_sums,
    l1_layers,
    loads,
    majorant_layers,
    mobius_witness,
    random_polynomial,
    slice_to_line,
    to_homogeneous,
)


def cauchy_coefficients(g, K, radius=0.9, points=512):
    # Taylor coefficients from samples on a circle (discrete Cauchy integral).
    samples = np.array([g(radius * cmath.exp(2j * math.pi * j / points)) for j in range(points)])
    c = np.fft.fft(samples) / points
    return [c[k] / radius**k for k in range(K + 1)]


def test_mobius_coefficients_match_cauchy_integral():
    a, K = 0.6, 20
    oracle = cauchy_coefficients(lambda z: (a - z) / (1 - a * z), K)
    got = mobius_witness(a, K).coefficients_1d()
    for x, y in zip(got, oracle):
        assert abs(x - y) < 1e-12


def test_mobius_coefficients_closed_form():
    got = mobius_witness(0.5, 3).coefficients_1d()
    assert got == pytest.approx([0.5, -0.75, -0.375, -0.1875], abs=1e-15)


def test_cone_family_in_one_variable_matches_cauchy_integral():
    a, K = 0.7, 20
    oracle = cauchy_coefficients(lambda z: (1 + a) / 2 * (1 - z) / (1 - a * z), K)
    got = extremal_cone_family(a, 1, K).coefficients_1d()
    for x, y in zip(got, oracle):
        assert abs(x - y) < 1e-12


def test_cone_family_values_match_closed_form():
    a, n, K = 0.5, 3, 40
    f = extremal_cone_family(a, n, K)
    z = (0.1 + 0.05j, -0.08j, 0.12)
    s = sum(z)
    expected = (1 + a) / 2 * (1 - s) / (1 - a * s)
    assert abs(evaluate(f, z) - expected) < 1e-13


def test_cone_family_coefficient_formula():
    a, n = 0.4, 3
    f = extremal_cone_family(a, n, 6)
    assert f[(0, 0, 0)] == pytest.approx((1 + a) / 2)
    for k in range(1, 7):
        for alpha in enumerate_weight(n, k):
            expected = -(1 - a * a) / 2 * a ** (k - 1) * multinomial(alpha)
            assert f[alpha] == pytest.approx(expected, rel=1e-14)
    assert len(f) == sum(simplex_count(n, k) for k in range(7))


def test_compose_linear_values():
    g = mobius_witness(0.3, 30)
    a = [0.5, -0.25j, 0.2]
    F = compose_linear(g, a)
    z = (0.3, 0.4 + 0.1j, -0.2j)
    t = sum(x * y for x, y in zip(a, z))
    assert abs(evaluate(F, z) - evaluate(g, [t])) < 1e-14


def test_constant_and_zero_handling():
    f = TruncatedSeries.constant(2.5, 3)
    assert f.dimension == 3 and f.cap == 0
    assert bohr_majorant_sum(f, DomainSpec.ball(3), 0.2) == 2.5
    g = TruncatedSeries.from_1d([1, 0, 0, 3])
    assert len(g) == 2
    assert g[(1,)] == 0


def test_series_validation():
    with pytest.raises(ValueError):
        TruncatedSeries(2, 1, {(1, 1): 1.0})
    with pytest.raises(ValueError):
        TruncatedSeries(2, 3, {(1,): 1.0})
    with pytest.raises(ValueError):
        TruncatedSeries(0, 3, {})
    with pytest.raises(ValueError):
        extremal_cone_family(1.0, 2, 5)
    with pytest.raises(ValueError):
        mobius_witness(0.0, 5)


def test_majorant_sum_examples():
    f = TruncatedSeries.from_1d([0.5, -0.5])
    assert bohr_majorant_sum(f, DomainSpec.polydisk(1), 1.0) == 1.0
    g = TruncatedSeries(2, 2, {(0, 0): 1, (1, 1): -2})
    assert bohr_majorant_sum(g, DomainSpec.hypercone(2), 0.5) == pytest.approx(1 + 2 * 0.25 * 0.25)
    assert bohr_majorant_sum(g, DomainSpec.ball(2), 0.5) == pytest.approx(1 + 2 * 0.25 * 0.5)


def test_mobius_majorant_sum_closed_form():
    a, r = 0.8, 0.3
    f = mobius_witness(a, 400)
    expected = a + (1 - a * a) * r / (1 - a * r)
    assert bohr_majorant_sum(f, DomainSpec.polydisk(1), r) == pytest.approx(expected, rel=1e-14)


def test_majorant_sum_validates_inputs():
    f = random_polynomial(np.random.default_rng(1), 2, 3)
    with pytest.raises(ValueError):
        bohr_majorant_sum(f, DomainSpec.ball(3), 0.5)
    for r in (0.0, -0.1, 1.5):
        with pytest.raises(ValueError):
            bohr_majorant_sum(f, DomainSpec.ball(2), r)


def test_layers_add_up():
    f = random_polynomial(np.random.default_rng(7), 3, 6)
    D = DomainSpec.hypercone(3)
    layers = majorant_layers(f, D, 0.4)
    assert len(layers) == 7
    assert math.fsum(layers) == pytest.approx(bohr_majorant_sum(f, D, 0.4), rel=1e-15)
    assert math.fsum(l1_layers(f, 0.4)) == pytest.approx(cone_l1_sum(f, 0.4), rel=1e-15)


@given(st.integers(0, 2**32 - 1), st.floats(0.05, 0.95))
def test_domain_ordering_of_majorant_sums(seed, r):
    f = random_polynomial(np.random.default_rng(seed), 2, 5)
    cone = bohr_majorant_sum(f, DomainSpec.hypercone(2), r)
    ball = bohr_majorant_sum(f, DomainSpec.ball(2), r)
    disk = bohr_majorant_sum(f, DomainSpec.polydisk(2), r)
    assert cone <= ball * (1 + 1e-14) and ball <= disk * (1 + 1e-14)
    assert cone_l1_sum(f, r) <= cone * (1 + 1e-14)


def test_sum_is_independent_of_insertion_order():
    f = random_polynomial(np.random.default_rng(3), 3, 5)
    items = list(f.coeffs.items())
    g = TruncatedSeries(3, 5, dict(reversed(items)))
    D = DomainSpec.ball(3)
    assert list(g.coeffs) == list(f.coeffs)
    assert bohr_majorant_sum(f, D, 0.7) == bohr_majorant_sum(g, D, 0.7)


def test_evaluate_many_agrees_with_evaluate():
    rng = np.random.default_rng(11)
    f = random_polynomial(rng, 3, 5)
    pts = (rng.standard_normal((50, 3)) + 1j * rng.standard_normal((50, 3))) * 0.4
    batch = evaluate_many(f, pts, chunk=16)
    for p, v in zip(pts, batch):
        assert abs(v - evaluate(f, p)) < 1e-12
    with pytest.raises(ValueError):
        evaluate_many(f, pts[:, :2])


def test_homogeneous_expansion_round_trip():
    f = random_polynomial(np.random.default_rng(5), 2, 4)
    h = to_homogeneous(f)
    assert h.cap == 4
    assert h.to_series() == f
    with pytest.raises(ValueError):
        HomogeneousExpansion(2, ({(1, 0): 1.0},))


def test_homogeneous_sum_and_line_slice():
    f = extremal_cone_family(0.5, 2, 10)
    h = to_homogeneous(f)
    z = (0.2 + 0.1j, -0.1)
    slices = slice_to_line(h, z)
    assert abs(sum(slices) - evaluate(f, z)) < 1e-14
    expected = math.fsum(abs(v) for v in slices)
    assert homogeneous_bohr_sum(h, z) == pytest.approx(expected, rel=1e-15)
    batch = homogeneous_bohr_sums(h, np.array([z, (0.0, 0.3j)]))
    assert batch[0] == pytest.approx(expected, rel=1e-12)
    assert batch[1] == pytest.approx(homogeneous_bohr_sum(h, (0.0, 0.3j)), rel=1e-12)


def test_text_format_example():
    f = TruncatedSeries(2, 1, {(0, 0): 0.5, (1, 0): -0.25j})
    assert dumps(f) == "2 1\n0 0  0.5  0\n1 0  -0  -0.25\n"
    assert loads(dumps(f)) == f


@given(st.integers(0, 2**32 - 1), st.integers(1, 3), st.integers(0, 5))
def test_text_round_trip_is_exact(seed, n, K):
    f = random_polynomial(np.random.default_rng(seed), n, K)
    g = loads(dumps(f))
    assert g == f
    assert dumps(g) == dumps(f)


@pytest.mark.parametrize("text", ["", "2\n", "2 3\n1 0 1.0\n", "1 3\n1 1 0\n1 2 0\n", "1 1\n2 1 0\n"])
def test_text_format_rejects_bad_input(text):
    with pytest.raises(ValueError):
        loads(text)
