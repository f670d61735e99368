"""Tests for scaled float evaluation and sphere quadrature."""

import math

import numpy as np
import pytest
from gmpy2 import mpq

from src.analyzers.quadrature import (
    RadialQuadrature,
    circle_values,
    evaluate_scaled,
    log2_magnitude,
    log_rational,
    scaled_coefficients,
)
from src.exact.gaussian import GaussianRational
from src.exact.multipoly import MultiPoly
from src.exact.poly import DensePoly


def test_log2_magnitude():
    assert log2_magnitude(8) == 3
    assert log2_magnitude(mpq(1, 8)) == -3
    assert log2_magnitude(-8) == 3


def test_log_rational_beyond_float_range():
    assert log_rational(mpq(10) ** 400) == pytest.approx(400 * math.log(10))
    assert log_rational(mpq(1, 10) ** 400) == pytest.approx(-400 * math.log(10))


def test_scaled_coefficients_normalize_top_term():
    keys, values, exponent = scaled_coefficients([(0, GaussianRational(1)), (3, GaussianRational(5))], 2)
    assert keys == [0, 3]
    # 5·2³ = 40 is the largest term
    assert exponent == log2_magnitude(40)
    assert abs(values[1]) * 2.0 ** exponent == pytest.approx(40)
    assert abs(values[0]) * 2.0 ** exponent == pytest.approx(1)


def test_circle_values_match_direct_evaluation():
    f = DensePoly([1, 1])
    values, exponent = circle_values(f, 1, 8)
    roots = np.exp(2j * np.pi * np.arange(8) / 8)
    np.testing.assert_allclose(values * 2.0 ** exponent, 1 + roots, atol=1e-12)


def test_evaluate_scaled_handles_huge_coefficients():
    f = DensePoly([0, mpq(10) ** 500])
    values, exponent = evaluate_scaled(f, 1, np.array([1.0 + 0j, -1.0 + 0j]))
    assert exponent == log2_magnitude(mpq(10) ** 500)
    assert np.all(np.isfinite(values))
    assert values[0] == pytest.approx(-values[1])


def test_quadrature_rejects_small_rules():
    with pytest.raises(ValueError):
        RadialQuadrature(nodes=4)
    with pytest.raises(ValueError):
        RadialQuadrature(nodes=64, n=0)


def test_mean_square_on_circle():
    mantissa, exponent = RadialQuadrature(64).mean_square([DensePoly([0, 1])], 2)
    assert mantissa * 4.0 ** exponent == pytest.approx(4.0)


def test_sphere_rule_is_normalized():
    points, weights = RadialQuadrature(256, 2).unit_rule()
    assert weights.sum() == pytest.approx(1.0)
    np.testing.assert_allclose(np.linalg.norm(points, axis=1), 1.0, atol=1e-12)


def test_mean_square_of_coordinate_on_three_sphere():
    z1 = MultiPoly(2, {(1, 0): 1})
    mantissa, exponent = RadialQuadrature(256, 2).mean_square([z1], 1)
    assert mantissa * 4.0 ** exponent == pytest.approx(0.5)


def test_refined_doubles_nodes():
    quad = RadialQuadrature(64, 3)
    assert quad.refined() == RadialQuadrature(128, 3)
