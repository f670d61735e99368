"""
Sphere quadrature and scaled floating-point evaluation of exact polynomials.

Exact coefficients can be far outside the float range, so every evaluation on
a sphere of radius r works with b_I = a_I·r^{|I|}·2^{−E} at unit points and
returns E alongside; logarithms add E·log 2 back.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, List, Sequence, Tuple, Union

import numpy as np
from scipy.special import roots_jacobi

from ..exact.gaussian import GaussianRational, to_rational
from ..exact.multipoly import MultiPoly
from ..exact.poly import DensePoly

Polynomial = Union[DensePoly, MultiPoly]

LOG2 = math.log(2.0)
UNDERFLOW_LOG2 = -900


def log2_magnitude(q: Any) -> int:
    """floor(log2 |q|) up to one, for a nonzero rational."""
    q = to_rational(q)
    return int(abs(q.numerator)).bit_length() - int(q.denominator).bit_length()


def log_rational(q: Any) -> float:
    """Natural logarithm of a positive rational of any size."""
    q = to_rational(q)
    return math.log(int(q.numerator)) - math.log(int(q.denominator))


def _scaled_float(q: Any, exponent: int) -> float:
    q = to_rational(q)
    if exponent >= 0:
        return float(q / (1 << exponent)) if q else 0.0
    return float(q * (1 << -exponent)) if q else 0.0


def scaled_coefficients(
    terms: Sequence[Tuple[Any, GaussianRational]],
    r: Any = 1,
) -> Tuple[List[Any], np.ndarray, int]:
    """
    Float coefficients b_I = a_I·r^{|I|}·2^{−E} with max |b_I| ≈ 1.

    Args:
        terms: (degree or exponent tuple, coefficient) pairs
        r: Rational radius

    Returns:
        (keys, complex coefficient array, E)
    """
    r = to_rational(r)
    keys, exact = [], []
    for key, coef in terms:
        degree = key if isinstance(key, int) else sum(key)
        keys.append(key)
        exact.append((coef.re * r ** degree, coef.im * r ** degree))
    magnitudes = [log2_magnitude(x) for pair in exact for x in pair if x]
    exponent = max(magnitudes) if magnitudes else 0
    values = np.array(
        [complex(_scaled_float(re, exponent), _scaled_float(im, exponent)) for re, im in exact],
        dtype=complex,
    )
    return keys, values, exponent


def poly_terms(poly: Polynomial) -> List[Tuple[Any, GaussianRational]]:
    if isinstance(poly, DensePoly):
        return list(poly.iter_terms())
    return poly.sorted_items()


def circle_values(poly: DensePoly, r: Any, nodes: int) -> Tuple[np.ndarray, int]:
    """
    Scaled values of poly at r·e^{2πij/N}, j = 0..N−1, by FFT.

    Degrees are folded modulo N.

    Returns:
        (values·2^{−E}, E)
    """
    keys, values, exponent = scaled_coefficients(poly.iter_terms(), r)
    folded = np.zeros(nodes, dtype=complex)
    for degree, value in zip(keys, values):
        folded[degree % nodes] += value
    return np.fft.ifft(folded) * nodes, exponent


def evaluate_scaled(poly: Polynomial, r: Any, points: np.ndarray) -> Tuple[np.ndarray, int]:
    """
    Scaled values of poly at r·ζ for unit points ζ.

    Args:
        poly: DensePoly (points shape (P,)) or MultiPoly (points shape (P, n))
        r: Rational radius
        points: Points on the unit sphere

    Returns:
        (values·2^{−E}, E)
    """
    keys, values, exponent = scaled_coefficients(poly_terms(poly), r)
    if isinstance(poly, DensePoly):
        zeta = points.reshape(-1)
        out = np.zeros(zeta.shape, dtype=complex)
        for degree, value in zip(keys, values):
            out += value * zeta ** degree
        return out, exponent
    out = np.zeros(points.shape[0], dtype=complex)
    for exps, value in zip(keys, values):
        monomial = np.ones(points.shape[0], dtype=complex)
        for s, e in enumerate(exps):
            if e:
                monomial = monomial * points[:, s] ** e
        out += value * monomial
    return out, exponent


@lru_cache(maxsize=64)
def _sphere_rule(n: int, angle_nodes: int, radial_nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    """Unit points (P, n) and weights for the normalized measure on S^{2n−1}."""
    if n == 1:
        theta = 2 * np.pi * np.arange(angle_nodes) / angle_nodes
        return np.exp(1j * theta).reshape(-1, 1), np.full(angle_nodes, 1.0 / angle_nodes)

    # |z_s|² shares are uniform on the simplex: stick-breaking with Beta(1, n−1−s) factors
    share_weights = np.ones(1)
    remaining = np.ones(1)
    parts: List[np.ndarray] = []
    for s in range(n - 1):
        x, w = roots_jacobi(radial_nodes, n - 2 - s, 0)
        u = (1 + x) / 2
        w = w / w.sum()
        parts = [np.repeat(p, radial_nodes) for p in parts]
        cut = np.outer(remaining, u).reshape(-1)
        parts.append(cut)
        remaining = np.outer(remaining, 1 - u).reshape(-1)
        share_weights = np.outer(share_weights, w).reshape(-1)
    parts.append(remaining)
    shares = np.stack(parts, axis=1)

    theta = 2 * np.pi * np.arange(angle_nodes) / angle_nodes
    grids = np.meshgrid(*([theta] * n), indexing="ij")
    phases = np.exp(1j * np.stack([g.reshape(-1) for g in grids], axis=1))
    points = (np.sqrt(shares)[:, None, :] * phases[None, :, :]).reshape(-1, n)
    weights = np.repeat(share_weights, phases.shape[0]) / phases.shape[0]
    return points, weights / weights.sum()


@dataclass(frozen=True)
class RadialQuadrature:
    """
    Normalized angular average over the sphere ‖z‖ = r in ℂⁿ.

    n = 1 uses N equispaced circle nodes. n ≥ 2 uses a product of circles
    (N/8 angles per coordinate) times Gauss–Jacobi stick-breaking nodes
    (N/32 per share) for the radial split.
    """

    nodes: int = 256
    n: int = 1

    def __post_init__(self):
        if self.nodes < 8:
            raise ValueError("quadrature needs at least 8 nodes")
        if self.n < 1:
            raise ValueError("dimension must be positive")

    @property
    def angle_nodes(self) -> int:
        return self.nodes if self.n == 1 else max(8, self.nodes // 8)

    @property
    def radial_nodes(self) -> int:
        return max(4, self.nodes // 32)

    def refined(self) -> "RadialQuadrature":
        return RadialQuadrature(2 * self.nodes, self.n)

    def unit_rule(self) -> Tuple[np.ndarray, np.ndarray]:
        return _sphere_rule(self.n, self.angle_nodes, self.radial_nodes)

    def values(self, poly: Polynomial, r: Any) -> Tuple[np.ndarray, np.ndarray, int]:
        """(scaled values, weights, E) of poly on the sphere of radius r."""
        points, weights = self.unit_rule()
        if self.n == 1 and isinstance(poly, DensePoly):
            values, exponent = circle_values(poly, r, self.angle_nodes)
            return values, weights, exponent
        values, exponent = evaluate_scaled(poly, r, points if self.n > 1 else points[:, 0])
        return values, weights, exponent

    def log_norm(self, polys: Sequence[Polynomial], r: Any) -> Tuple[np.ndarray, np.ndarray]:
        """
        log‖F(z)‖ (Euclidean over components) at the nodes of the sphere of radius r.

        Returns:
            (log-norm per node, weights); −inf where every component vanishes
        """
        sampled = [self.values(p, r) for p in polys]
        weights = sampled[0][1]
        top = max(e for _, _, e in sampled)
        total = np.zeros(weights.shape[0])
        for values, _, exponent in sampled:
            if exponent - top < UNDERFLOW_LOG2:
                continue
            total += np.abs(values) ** 2 * 4.0 ** (exponent - top)
        with np.errstate(divide="ignore"):
            return 0.5 * np.log(total) + top * LOG2, weights

    def mean_square(self, polys: Sequence[Polynomial], r: Any) -> Tuple[float, int]:
        """
        ∮‖F‖²γ over the sphere of radius r as (mantissa, E) with value = mantissa·4^E.
        """
        sampled = [self.values(p, r) for p in polys]
        weights = sampled[0][1]
        top = max(e for _, _, e in sampled)
        total = 0.0
        for values, _, exponent in sampled:
            total += float(np.dot(weights, np.abs(values) ** 2)) * 4.0 ** (exponent - top)
        return total, top
