import cmath
import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from bohr.combinatorics import enumerate_upto, enumerate_weight, multinomial, self_power
from bohr.domains import (
    DomainError,
    DomainSpec,
    boundary_sample,
    cone_l1_weight,
    load_custom_domain,
    monomial_sup,
    monomial_sup_sq,
    scaled_monomial_sup,
    sphere_moment,
)

NAMED = [DomainSpec.polydisk, DomainSpec.ball, DomainSpec.hypercone]


def test_monomial_sup_examples():
    assert monomial_sup(DomainSpec.polydisk(3), (4, 0, 7)) == 1
    assert monomial_sup(DomainSpec.hypercone(2), (1, 1)) == 0.25
    assert monomial_sup(DomainSpec.ball(2), (1, 1)) == 0.5


@pytest.mark.parametrize("make", NAMED)
def test_constant_term_has_unit_sup(make):
    assert monomial_sup(make(3), (0, 0, 0)) == 1


def test_hypercone_sup_matches_grid_maximum():
    # Independent check of max |z1|^a |z2|^b on |z1| + |z2| = 1.
    for a, b in [(1, 1), (2, 1), (3, 5), (0, 4)]:
        grid = max(t**a * (1 - t) ** b for t in (i / 20000 for i in range(20001)))
        assert monomial_sup(DomainSpec.hypercone(2), (a, b)) == pytest.approx(grid, rel=1e-7)


def test_ball_squared_equals_hypercone():
    for n in range(1, 5):
        ball, cone = DomainSpec.ball(n), DomainSpec.hypercone(n)
        for alpha in enumerate_upto(n, 8):
            assert monomial_sup_sq(ball, alpha) == Fraction(self_power(alpha), max(sum(alpha), 1) ** sum(alpha))
            assert monomial_sup(ball, alpha) ** 2 == pytest.approx(monomial_sup(cone, alpha), abs=1e-12)


def test_domain_inclusions_order_the_sups():
    for n in range(1, 4):
        for alpha in enumerate_upto(n, 10):
            cone = monomial_sup(DomainSpec.hypercone(n), alpha)
            ball = monomial_sup(DomainSpec.ball(n), alpha)
            assert 0 < cone <= ball <= monomial_sup(DomainSpec.polydisk(n), alpha) == 1


def test_dimension_mismatch_is_rejected():
    with pytest.raises(DomainError):
        monomial_sup(DomainSpec.ball(2), (1, 2, 3))


def test_monomial_domain_has_no_sup_table():
    D = DomainSpec.monomial((1, 2))
    with pytest.raises(DomainError):
        monomial_sup(D, (1, 1))
    with pytest.raises(DomainError):
        DomainSpec.monomial((2, 4))


def test_scaled_sup_examples():
    assert scaled_monomial_sup(DomainSpec.polydisk(2), (2, 1), 0.5) == 0.125
    assert scaled_monomial_sup(DomainSpec.ball(2), (0, 0), 0.3) == 1
    assert scaled_monomial_sup(DomainSpec.hypercone(2), (1, 1), 0.5) == 0.25 * 0.25
    with pytest.raises(ValueError):
        scaled_monomial_sup(DomainSpec.ball(2), (1, 1), 1.5)
    with pytest.raises(ValueError):
        scaled_monomial_sup(DomainSpec.ball(2), (1, 1), 0.0)


@given(st.floats(0.01, 0.98), st.floats(0.001, 0.02), st.integers(0, 6), st.integers(0, 6))
def test_scaled_sup_increases_with_radius(r, dr, a, b):
    if a + b == 0:
        return
    D = DomainSpec.ball(2)
    assert scaled_monomial_sup(D, (a, b), r) < scaled_monomial_sup(D, (a, b), r + dr)
    assert scaled_monomial_sup(D, (a, b), 1.0) == monomial_sup(D, (a, b))


def test_sphere_moment_examples():
    assert sphere_moment((1, 0), 2) == Fraction(1, 2)
    assert sphere_moment((0, 0, 0, 0), 4) == 1
    assert sphere_moment((1, 1), 2) == Fraction(1, 6)


def test_sphere_moment_against_quadrature():
    # Under the invariant measure the squared moduli are uniform on the simplex.
    for a, b in [(1, 0), (2, 3), (4, 1)]:
        value = mpmath.quad(lambda t: t**a * (1 - t) ** b, [0, 1])
        assert float(sphere_moment((a, b), 2)) == pytest.approx(float(value), rel=1e-12)
    a, b, c = 2, 1, 3
    value = mpmath.quad(lambda s: mpmath.quad(lambda t: 2 * s**a * t**b * (1 - s - t) ** c, [0, 1 - s]), [0, 1])
    assert float(sphere_moment((a, b, c), 3)) == pytest.approx(float(value), rel=1e-10)


def test_cone_l1_weight_examples():
    for k in range(6):
        assert cone_l1_weight((k,), 1, 0.4) == pytest.approx(0.4**k, rel=1e-15)
    assert cone_l1_weight((1, 1), 2, 1.0) == pytest.approx(1 / 6)
    assert cone_l1_weight((0, 0, 0), 3, 0.5) == 1
    with pytest.raises(ValueError):
        cone_l1_weight((1, 1), 2, 1.2)


def test_layer_mass_dominates_rough_bound():
    for n in range(1, 4):
        for k in range(1, 11):
            total = sum(Fraction(multinomial(a) * self_power(a), k**k) for a in enumerate_weight(n, k))
            assert total >= Fraction(n**k, k**k)


def test_polydisk_sample_is_roots_of_unity():
    pts = boundary_sample(DomainSpec.polydisk(1), 4)
    assert len(pts) == 4
    for j, (z,) in enumerate(pts):
        assert abs(z - cmath.exp(2j * math.pi * j / 4)) < 1e-15


@pytest.mark.parametrize("density", [1, 3, 6])
def test_hypercone_and_ball_samples_lie_on_boundary(density):
    for p in boundary_sample(DomainSpec.hypercone(2), density):
        assert abs(sum(abs(z) for z in p) - 1) < 1e-12
    for p in boundary_sample(DomainSpec.ball(2), density):
        assert abs(sum(abs(z) ** 2 for z in p) - 1) < 1e-12
    for p in boundary_sample(DomainSpec.ball(3), density):
        assert abs(sum(abs(z) ** 2 for z in p) - 1) < 1e-12


def test_samples_are_deterministic_and_unsupported_kinds_fail():
    D = DomainSpec.hypercone(3)
    assert boundary_sample(D, 4) == boundary_sample(D, 4)
    with pytest.raises(DomainError):
        boundary_sample(DomainSpec.monomial((1, 1)), 4)
    with pytest.raises(DomainError):
        boundary_sample(DomainSpec.custom({(0,): 1.0}), 4)


def test_custom_table_round_trip(tmp_path):
    path = tmp_path / "square.txt"
    path.write_text("# polydisk-like table\n0 0 1\n1 0 0.5\n\n0 1  0.5   # trailing comment\n1 1 0.25\n")
    D = load_custom_domain(path)
    assert D.dimension == 2
    assert monomial_sup(D, (1, 1)) == 0.25
    assert scaled_monomial_sup(D, (1, 0), 0.5) == 0.25
    with pytest.raises(DomainError):
        monomial_sup(D, (2, 0))


@pytest.mark.parametrize(
    "text",
    ["0 0 1\n1 0 0 0.5\n", "0 0 1\n0 0 1\n", "1 0 -0.5\n", "", "a b 1\n"],
)
def test_custom_table_rejects_bad_input(tmp_path, text):
    path = tmp_path / "bad.txt"
    path.write_text(text)
    with pytest.raises(DomainError):
        load_custom_domain(path)
