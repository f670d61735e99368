"""Tests for the characteristic functions and the Nevanlinna gap."""

import math

import pytest

from src.analyzers.characteristic import (
    cartan_T,
    euler_operator,
    nevanlinna_gap,
    projective_T,
    torus_T,
    torus_T_area,
    torus_T_radial,
)
from src.analyzers.quadrature import RadialQuadrature
from src.exact.multipoly import MultiPoly
from src.exact.poly import DensePoly

from .conftest import random_multi

Z = DensePoly([0, 1])


def test_cartan_T_of_monomials():
    value, tol = cartan_T(Z, 10)
    assert value == pytest.approx(math.log(10))
    assert tol < 1e-9
    value, _ = cartan_T(DensePoly([0, 0, 0, 1]), 10)
    assert value == pytest.approx(3 * math.log(10))


def test_cartan_T_of_constant():
    value, _ = cartan_T(DensePoly([5]), 1)
    assert value == pytest.approx(math.log(5))


def test_cartan_T_matches_jensen():
    # log|1 + z| >= 0 on |z| = 2 and the zero at -1 contributes log 2
    value, _ = cartan_T(DensePoly([1, 1]), 2)
    assert value == pytest.approx(math.log(2), abs=1e-9)


def test_cartan_T_rejects_small_radius():
    with pytest.raises(ValueError):
        cartan_T(Z, "1/2")


def test_torus_T_of_identity():
    value, tol = torus_T([Z], 3, RadialQuadrature(64))
    assert value == pytest.approx(4.0)
    assert tol < 1e-9


def test_torus_T_radial_agrees():
    quad = RadialQuadrature(64)
    assert torus_T_radial([Z], 3, quad) == pytest.approx(4.0, rel=1e-9)
    f = [DensePoly([1, 2, 0, 1])]
    direct, _ = torus_T(f, 2, quad)
    assert torus_T_radial(f, 2, quad) == pytest.approx(direct, rel=1e-8)


def test_torus_T_in_two_variables():
    # ½(r² − 1)·E|z1|² with E|z1|² = 1/2 on the unit sphere
    z1 = MultiPoly(2, {(1, 0): 1})
    value, _ = torus_T([z1], 2, RadialQuadrature(256, 2))
    assert value == pytest.approx(0.75, rel=1e-9)


def test_projective_T_of_line():
    value, _ = projective_T([Z, DensePoly([1])], 10)
    assert value == pytest.approx(0.5 * math.log(101) - 0.5 * math.log(2))


def test_euler_operator_scales_by_degree():
    assert euler_operator(DensePoly([7, 1, 1])) == DensePoly([0, 1, 2])
    p = MultiPoly(2, {(0, 0): 3, (1, 2): 1})
    assert euler_operator(p) == MultiPoly(2, {(1, 2): 3})


def test_nevanlinna_gap_of_linear_factor():
    # T(4) = log 4 and N(4, 0) = log(4/3)
    gap = nevanlinna_gap(DensePoly([-3, 1]), 4)
    assert gap == pytest.approx(math.log(3), abs=1e-5)


def test_nevanlinna_gap_with_zero_in_unit_disc():
    # f = z − 1/2: T(2) = log 2 and the zero inside |z| < 1 adds log 2 to N
    gap = nevanlinna_gap(DensePoly(["-1/2", 1]), 2)
    assert gap == pytest.approx(0.0, abs=1e-9)


@pytest.mark.parametrize("r", [2, 4, 16])
def test_nevanlinna_gap_trivial_cases(r):
    assert nevanlinna_gap(DensePoly([5]), r) == pytest.approx(math.log(5))
    assert nevanlinna_gap(Z, r) == pytest.approx(0.0, abs=1e-9)


def test_torus_T_area_of_identity():
    assert torus_T_area([Z], 3, RadialQuadrature(64)) == pytest.approx(4.0, rel=1e-9)
    assert torus_T_area([DensePoly([5])], 3) == 0.0


def test_torus_T_area_matches_sphere_difference_for_random_quadratic_map(rng):
    quad = RadialQuadrature(256, 2)
    polys = [random_multi(rng, 2, 2), random_multi(rng, 2, 2)]
    for r in (2, 3):
        direct, _ = torus_T(polys, r, quad)
        assert torus_T_area(polys, r, quad) == pytest.approx(direct, rel=1e-8, abs=1e-12)


def test_torus_T_area_in_two_variables():
    z1 = MultiPoly(2, {(1, 0): 1})
    assert torus_T_area([z1], 2, RadialQuadrature(256, 2)) == pytest.approx(0.75, rel=1e-9)
