"""Characteristic functions of exact polynomial maps, by sphere quadrature."""

import logging
from fractions import Fraction
from typing import Any, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import roots_jacobi

from ..errors import NodeVanishing
from ..exact.gaussian import to_rational
from ..exact.multipoly import MultiPoly
from ..exact.poly import DensePoly
from .quadrature import LOG2, UNDERFLOW_LOG2, RadialQuadrature
from .zeros import Annulus, Disc, count_zeros, counting_function

logger = logging.getLogger(__name__)

Polynomial = Union[DensePoly, MultiPoly]
PolyMap = Union[Polynomial, Sequence[Polynomial]]


def _components(f: PolyMap) -> Sequence[Polynomial]:
    return [f] if isinstance(f, (DensePoly, MultiPoly)) else list(f)


def _check_radius(r: Any, minimum: Any = 1) -> Any:
    r = to_rational(r)
    if r < minimum:
        raise ValueError(f"radius must be at least {minimum}, got {r}")
    return r


def _positive_log_mean(f: PolyMap, r: Any, quad: RadialQuadrature) -> float:
    logs, weights = quad.log_norm(_components(f), r)
    return float(np.dot(weights, np.maximum(logs, 0.0)))


def cartan_T(f: PolyMap, r: Any, quad: Optional[RadialQuadrature] = None) -> Tuple[float, float]:
    """
    Average of log⁺‖f‖ over the sphere of radius r.

    Args:
        f: Polynomial or map of polynomials
        r: Rational radius ≥ 1
        quad: Quadrature (256 circle nodes by default)

    Returns:
        (value at 2N nodes, |value(2N) − value(N)|)
    """
    r = _check_radius(r)
    quad = quad or RadialQuadrature()
    coarse = _positive_log_mean(f, r, quad)
    fine = _positive_log_mean(f, r, quad.refined())
    return fine, abs(fine - coarse)


def _log_mean(polys: Sequence[Polynomial], r: Any, quad: RadialQuadrature) -> float:
    logs, weights = quad.log_norm(polys, r)
    if not np.all(np.isfinite(logs)) or np.min(logs) < UNDERFLOW_LOG2 * LOG2:
        bad = int(np.argmin(logs))
        raise NodeVanishing(
            f"‖F‖ underflows at quadrature node {bad} on radius {r}",
            details={"node": bad, "radius": r},
        )
    return float(np.dot(weights, logs))


def projective_T(
    polys: Sequence[Polynomial],
    r: Any,
    quad: Optional[RadialQuadrature] = None,
) -> Tuple[float, float]:
    """
    ∮_{‖z‖=r} log‖F‖γ − ∮_{‖z‖=1} log‖F‖γ.

    Args:
        polys: Components F_0..F_m
        r: Rational radius ≥ 1
        quad: Quadrature

    Returns:
        (value, tolerance from the N vs 2N comparison)

    Raises:
        NodeVanishing: If ‖F‖ underflows at some node
    """
    r = _check_radius(r)
    quad = quad or RadialQuadrature()
    values = []
    for q in (quad, quad.refined()):
        values.append(_log_mean(polys, r, q) - _log_mean(polys, 1, q))
    return values[1], abs(values[1] - values[0])


def _half_mean_square(polys: Sequence[Polynomial], r: Any, quad: RadialQuadrature) -> float:
    mantissa, exponent = quad.mean_square(polys, r)
    return 0.5 * mantissa * 4.0 ** exponent


def torus_T(
    polys: Sequence[Polynomial],
    r: Any,
    quad: Optional[RadialQuadrature] = None,
) -> Tuple[float, float]:
    """
    ½∮_{‖z‖=r}‖F‖²γ − ½∮_{‖z‖=1}‖F‖²γ, the characteristic with respect to the flat form.

    Returns:
        (value, tolerance); the value overflows to inf for astronomically large maps
    """
    r = _check_radius(r)
    quad = quad or RadialQuadrature()
    values = []
    for q in (quad, quad.refined()):
        values.append(_half_mean_square(polys, r, q) - _half_mean_square(polys, 1, q))
    return values[1], abs(values[1] - values[0])


def euler_operator(poly: Polynomial) -> Polynomial:
    """R = Σ_s z_s ∂/∂z_s: multiplies each monomial by its total degree."""
    if isinstance(poly, DensePoly):
        return DensePoly.from_terms((d, c * d) for d, c in poly.iter_terms())
    return MultiPoly(poly.nvars, {e: c * sum(e) for e, c in poly.sorted_items()})


def torus_T_radial(
    polys: Sequence[Polynomial],
    r: Any,
    quad: Optional[RadialQuadrature] = None,
    radial_nodes: int = 32,
) -> float:
    """
    The same characteristic as an integral over t ∈ [1, r].

    d/dt ½∮‖F‖²γ on the sphere of radius t equals (1/t)·∮Re⟨F, RF⟩γ, which is
    integrated with Gauss–Legendre nodes in t.
    """
    r = _check_radius(r)
    quad = quad or RadialQuadrature()
    euler = [euler_operator(p) for p in polys]
    x, w = leggauss(radial_nodes)
    lo, hi = 1.0, float(r)
    total = 0.0
    for xi, wi in zip(x, w):
        t = lo + (hi - lo) * (xi + 1) / 2
        t_q = to_rational(Fraction(float(t)))
        inner = 0.0
        for p, e in zip(polys, euler):
            pv, weights, pe = quad.values(p, t_q)
            ev, _, ee = quad.values(e, t_q)
            inner += float(np.dot(weights, np.real(np.conj(pv) * ev))) * 2.0 ** (pe + ee)
        total += wi * inner / t
    return total * (hi - lo) / 2


def _partials(poly: Polynomial) -> Sequence[Polynomial]:
    if isinstance(poly, DensePoly):
        return [poly.derivative()]
    return [poly.derivative(s) for s in range(poly.nvars)]


def _degree(poly: Polynomial) -> int:
    return poly.degree if isinstance(poly, DensePoly) else poly.total_degree


def torus_T_area(
    polys: Sequence[Polynomial],
    r: Any,
    quad: Optional[RadialQuadrature] = None,
    radial_nodes: int = 32,
) -> float:
    """
    The flat characteristic as the area integral ∫₁^r t^{1−2n}∫_{B_t}‖dF‖² dt.

    ‖dF‖² = Σ_{j,s}|∂F_j/∂z_s|² is a quarter of Δ‖F‖², so the t-derivative of
    ½∮‖F‖²γ on the sphere of radius t is (t/n) times the mean of ‖dF‖² over the
    ball B_t. The ball mean is a Gauss–Jacobi rule in ρ ∈ (0, 1) for the radial
    density 2nρ^{2n−1}, times the sphere rule at radius ρt.

    Args:
        polys: Components F_j in quad.n variables
        r: Rational radius ≥ 1
        quad: Sphere quadrature (256 nodes, n = 1 by default)
        radial_nodes: Gauss–Legendre nodes in t

    Returns:
        T(r) for the flat form; 0 for constant maps
    """
    r = _check_radius(r)
    quad = quad or RadialQuadrature()
    n = quad.n
    gradient = [d for p in polys for d in _partials(p) if d]
    if not gradient:
        return 0.0
    x, w = roots_jacobi(max(8, max(_degree(d) for d in gradient) + 1), 0, 2 * n - 1)
    shells = (1 + x) / 2
    shares = w / w.sum()
    tx, tw = leggauss(radial_nodes)
    lo, hi = 1.0, float(r)
    total = 0.0
    for xi, wi in zip(tx, tw):
        t = lo + (hi - lo) * (xi + 1) / 2
        ball = 0.0
        for rho, share in zip(shells, shares):
            mantissa, exponent = quad.mean_square(gradient, to_rational(Fraction(float(rho * t))))
            ball += share * mantissa * 4.0 ** exponent
        total += wi * t * ball / n
    return total * (hi - lo) / 2


def nevanlinna_gap(
    f: DensePoly,
    r: Any,
    quad: Optional[RadialQuadrature] = None,
    tol: float = 1e-6,
) -> float:
    """
    cartan_T(f, r) − N_f(r, 0).

    Zeros in 1 ≤ |z| ≤ r are located by subdivision; zeros inside the unit
    disc only contribute their count.
    """
    r = _check_radius(r, 1)
    inner = count_zeros(f, Disc(1), localize=False)
    outer = count_zeros(f, Annulus(1, r), tol=tol) if r > 1 else None
    characteristic, _ = cartan_T(f, r, quad)
    counting = counting_function(inner, r) + (counting_function(outer, r) if outer is not None else 0.0)
    logger.debug(f"T({float(r):g}) = {characteristic:.6g}, N({float(r):g}, 0) = {counting:.6g}")
    return characteristic - counting
