"""Tests for exact Gaussian-rational and polynomial arithmetic."""

import cmath

import pytest
from gmpy2 import mpq

from src.exact.bounds import disc_sup_bound, modulus_lower, modulus_upper, round_down, round_up, sqrt_upper
from src.exact.gaussian import GaussianRational, format_rational, to_rational, unit_from_half_tangent
from src.exact.laurent import LaurentPoly, ParamLaurent
from src.exact.multipoly import MultiPoly
from src.exact.poly import DensePoly

from .conftest import random_dense, random_gaussian, random_multi


def test_to_rational_accepts_exact_scalars_only():
    assert to_rational("3/6") == mpq(1, 2)
    assert to_rational(7) == mpq(7)
    with pytest.raises(TypeError):
        to_rational(0.5)
    with pytest.raises(ValueError):
        to_rational("one half")


def test_format_rational_always_has_denominator():
    assert format_rational(4) == "4/1"
    assert format_rational("-6/4") == "-3/2"


def test_gaussian_field_operations():
    a = GaussianRational(1, 2)
    b = GaussianRational("1/3", -1)
    assert (a * b) / b == a
    assert a * a.inverse() == 1
    assert a.conjugate().im == -2
    assert a.norm2() == 5


def test_gaussian_json_forms():
    g = GaussianRational("2/3", "-1/5")
    assert GaussianRational.from_json(g.to_json()) == g
    assert GaussianRational.from_json(["2/3", "-1/5"]) == g
    assert GaussianRational.from_json("7/2") == GaussianRational("7/2")


def test_unit_from_half_tangent_is_exact_unit():
    for t in ("0", "1/2", "-3/7", "5"):
        assert unit_from_half_tangent(t).norm2() == 1
    assert unit_from_half_tangent("1/2") == GaussianRational("3/5", "4/5")


def test_dense_poly_normalizes_trailing_zeros():
    p = DensePoly([1, 2, 0, 0])
    assert p.degree == 1
    assert DensePoly.zero().degree == -1
    assert DensePoly.zero().is_zero


def test_taylor_shift_binomial_examples():
    assert DensePoly.monomial(2).taylor_shift(1) == DensePoly([1, 2, 1])
    assert DensePoly.monomial(3).taylor_shift(2) == DensePoly([8, 12, 6, 1])


def test_taylor_shift_round_trip(rng):
    p = random_dense(rng, 20)
    c = random_gaussian(rng)
    assert p.taylor_shift(c).taylor_shift(-c) == p
    assert p.taylor_shift(c).degree == p.degree


def test_taylor_shift_is_ring_homomorphism(rng):
    p, q = random_dense(rng, 6), random_dense(rng, 5)
    c = random_gaussian(rng)
    assert (p * q).taylor_shift(c) == p.taylor_shift(c) * q.taylor_shift(c)


def test_ring_operations_are_exact_at_points(rng):
    p, q = random_dense(rng, 7), random_dense(rng, 4)
    z = random_gaussian(rng)
    assert (p + q)(z) == p(z) + q(z)
    assert (p * q)(z) == p(z) * q(z)
    assert (p - q)(z) == p(z) - q(z)


def test_modulus_upper_examples():
    assert modulus_upper(GaussianRational(3, 4)).value == 5
    assert modulus_upper(GaussianRational(0)).value == 0
    m = modulus_upper(GaussianRational(1, 1), bits=32).value
    assert m * m >= 2
    assert m <= mpq(14142135624, 10 ** 10) * (1 + mpq(1, 2 ** 31))


def test_modulus_bounds_bracket_the_square(rng):
    for _ in range(50):
        a = random_gaussian(rng, 1000)
        upper = modulus_upper(a).value
        lower = modulus_lower(a)
        assert upper * upper >= a.norm2()
        assert lower * lower <= a.norm2()


def test_dyadic_rounding_brackets_value():
    q = mpq(1, 3)
    assert round_down(q, 16) <= q <= round_up(q, 16)
    assert round_up(mpq(-1, 3), 16) >= mpq(-1, 3)
    assert sqrt_upper(mpq(9, 4)) == mpq(3, 2)


def test_disc_sup_bound_examples():
    assert disc_sup_bound(DensePoly.monomial(1), 0, 2).value == 2
    assert disc_sup_bound(DensePoly.monomial(2), 1, 1).value == 4
    with pytest.raises(ValueError):
        disc_sup_bound(DensePoly.monomial(1), 0, 0)


def test_disc_sup_bound_dominates_boundary_samples(rng):
    p = random_dense(rng, 10)
    radius = mpq(3, 2)
    bound = float(disc_sup_bound(p, 0, radius).value)
    coeffs = [complex(c) for c in p.coeffs]
    for k in range(1000):
        z = float(radius) * cmath.exp(2j * cmath.pi * k / 1000)
        value = sum(c * z ** j for j, c in enumerate(coeffs))
        assert abs(value) <= bound * (1 + 1e-12)


def test_multipoly_shift_and_evaluate(rng):
    p = random_multi(rng, 3, 4)
    center = [random_gaussian(rng) for _ in range(3)]
    point = [random_gaussian(rng) for _ in range(3)]
    shifted = p.taylor_shift(center)
    assert shifted(point) == p([x + c for x, c in zip(point, center)])


def test_multipoly_disc_bound_on_ball():
    # z1 + z2 on the polydisc of radius 1 around (1, 0)
    p = MultiPoly(2, {(1, 0): 1, (0, 1): 1})
    assert disc_sup_bound(p, [1, 0], 1).value == 3


def test_multipoly_dense_conversion():
    p = DensePoly([1, 0, 3])
    assert MultiPoly.from_dense(p).to_dense() == p


def test_param_laurent_specialize_examples():
    assert ParamLaurent({1: 1}).specialize(4) == GaussianRational("1/4")
    # (2 + 3/c)·(1/c) at c = 2
    assert ParamLaurent({1: 2, 2: 3}).specialize(2) == GaussianRational("7/4")


def test_param_laurent_rejects_regular_terms():
    with pytest.raises(ValueError):
        ParamLaurent({0: 1})
    assert not ParamLaurent({1: 0})


def test_param_laurent_decay_is_monotone(rng):
    for _ in range(10):
        lp = ParamLaurent({p: random_gaussian(rng) for p in range(1, 5)})
        for c in (2, 4, 8):
            assert lp.decay_bound(2 * c).value <= lp.decay_bound(c).value
            assert modulus_upper(lp.specialize(c)).value <= lp.decay_bound(c).value * (1 + mpq(1, 2 ** 40))


def test_laurent_poly_parts():
    lp = LaurentPoly({-2: 5, 0: 1, 3: 2})
    assert set(lp.regular_part()) == {0, 3}
    assert lp.principal_part() == ParamLaurent({2: 5})
