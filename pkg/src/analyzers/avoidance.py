"""
Avoidance vectors in the shell 1 − 2^{1−k} < ‖v‖ < 1 − 2^{−k}.

The vector is chosen on a float sample mesh; the claim F̃(z) ≠ v on the ball
‖z‖ ≤ ρ is then certified exactly by subdividing the cube [−ρ, ρ]^{2n}.
"""

import itertools
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence, Tuple, Union

import numpy as np
from gmpy2 import mpq

from ..errors import CertificationFailure
from ..exact.bounds import DEFAULT_BITS, coefficient_sum_bound, disc_sup_bound, modulus_lower
from ..exact.gaussian import ZERO, GaussianRational, format_rational, to_rational
from ..exact.multipoly import MultiPoly
from ..exact.poly import DensePoly
from .quadrature import evaluate_scaled

logger = logging.getLogger(__name__)

Polynomial = Union[DensePoly, MultiPoly]

DEFAULT_BUDGET = 4096
MESH_POINTS = 4096
POLYDISC_FACTOR = mpq(3, 2)


def shell_midpoint(k: int) -> Any:
    """s = 1 − 3/2^{k+1}, halfway between the shell radii."""
    return 1 - mpq(3, 1 << (k + 1))


def shell_bound(k: int) -> Any:
    """(1 − 2^{1−k}) − 2^{−k}, the lower bound of ‖F̃ − v‖ on the unit sphere."""
    return (1 - mpq(2, 1 << k)) - mpq(1, 1 << k)


def _nvars(poly: Polynomial) -> int:
    return 1 if isinstance(poly, DensePoly) else poly.nvars


def _constant_term(poly: Polynomial) -> GaussianRational:
    if isinstance(poly, DensePoly):
        return poly.coefficient(0)
    return poly.coefficient((0,) * poly.nvars)


def _constant(poly: Polynomial, value: GaussianRational) -> Polynomial:
    if isinstance(poly, DensePoly):
        return DensePoly.constant(value)
    return MultiPoly.constant(poly.nvars, value)


def shell_candidates(m: int, k: int) -> List[Tuple[GaussianRational, ...]]:
    """±s·e_j and ±s·i·e_j for j = 1 … m."""
    s = shell_midpoint(k)
    out = []
    for j in range(m):
        for value in (GaussianRational(s), GaussianRational(-s), GaussianRational(0, s), GaussianRational(0, -s)):
            vector = [ZERO] * m
            vector[j] = value
            out.append(tuple(vector))
    return out


def ball_mesh(n: int, rho: Any, points: int = MESH_POINTS) -> np.ndarray:
    """Grid points of the ball ‖z‖ ≤ ρ in ℂⁿ, shape (P, n), scaled to the unit ball."""
    per_axis = max(3, int(round(points ** (1.0 / (2 * n)))))
    axis = np.linspace(-1.0, 1.0, per_axis)
    grid = np.array(list(itertools.product(axis, repeat=2 * n)))
    inside = grid[np.sum(grid ** 2, axis=1) <= 1.0]
    return inside[:, 0::2] + 1j * inside[:, 1::2]


def sampled_values(polys: Sequence[Polynomial], rho: Any, mesh: np.ndarray) -> np.ndarray:
    """F̃ at ρ·mesh as a (P, m) float array; overflow shows up as inf."""
    columns = []
    for poly in polys:
        values, exponent = evaluate_scaled(poly, rho, mesh if _nvars(poly) > 1 else mesh[:, 0])
        with np.errstate(over="ignore", invalid="ignore"):
            columns.append(values * 2.0 ** exponent if exponent < 1024 else values * np.inf)
    return np.stack(columns, axis=1)


@dataclass
class AvoidanceCertificate:
    """Exact exclusion of F̃ = v on a ball plus the sphere audit."""

    k: int
    rho: Any
    vector: Tuple[GaussianRational, ...]
    min_sample_distance: float
    boxes: int
    excluded: int
    shell_bound: Any
    sphere_lower: Any
    suspects: List[Dict[str, str]] = field(default_factory=list)

    @property
    def shell_holds(self) -> bool:
        return self.sphere_lower > self.shell_bound

    def to_dict(self) -> Dict[str, Any]:
        return {
            "k": self.k,
            "rho": format_rational(self.rho),
            "vector": [x.to_json() for x in self.vector],
            "min_sample_distance": repr(self.min_sample_distance),
            "boxes": self.boxes,
            "excluded": self.excluded,
            "shell_bound": format_rational(self.shell_bound),
            "sphere_lower": format_rational(self.sphere_lower),
            "shell_holds": self.shell_holds,
        }


def _box_misses_ball(center: Sequence[Any], half: Any, rho: Any) -> bool:
    nearest = mpq(0)
    for c in center:
        gap = abs(c) - half
        if gap > 0:
            nearest += gap * gap
    return nearest > rho * rho


def _excluded(
    polys: Sequence[Polynomial],
    vector: Sequence[GaussianRational],
    center: Sequence[Any],
    half: Any,
    bits: int,
) -> bool:
    n = len(center) // 2
    point = [GaussianRational(center[2 * s], center[2 * s + 1]) for s in range(n)]
    radius = POLYDISC_FACTOR * half
    for poly, v in zip(polys, vector):
        shifted = poly.taylor_shift(point[0] if isinstance(poly, DensePoly) else point)
        value = _constant_term(shifted) - v
        tail = coefficient_sum_bound(((d, c) for d, c in shifted.iter_terms() if d > 0), radius, bits)
        if modulus_lower(value, bits) > tail.value:
            return True
    return False


def certify_avoidance(
    polys: Sequence[Polynomial],
    vector: Sequence[GaussianRational],
    rho: Any,
    budget: int = DEFAULT_BUDGET,
    bits: int = DEFAULT_BITS,
) -> Tuple[int, int]:
    """
    Prove F̃(z) ≠ v for ‖z‖ ≤ ρ by cube subdivision.

    A box of half-side h lies in the polydisc of radius 3h/2 around its center,
    where |F̃_j − v_j| ≥ |F̃_j(center) − v_j| − Σ_{I≠0}|b_I|(3h/2)^{|I|}.

    Returns:
        (boxes processed, boxes excluded)

    Raises:
        CertificationFailure: If the budget runs out; details carry the suspect box
    """
    rho = to_rational(rho)
    n = _nvars(polys[0])
    queue = deque([((mpq(0),) * (2 * n), rho)])
    processed = excluded = 0
    while queue:
        center, half = queue.popleft()
        if _box_misses_ball(center, half, rho):
            continue
        processed += 1
        if _excluded(polys, vector, center, half, bits):
            excluded += 1
            continue
        if processed >= budget:
            raise CertificationFailure(
                "Could not exclude F̃ = v within the box budget",
                details={
                    "center": [format_rational(c) for c in center],
                    "half_side": format_rational(half),
                    "boxes": processed,
                },
            )
        quarter = half / 2
        for signs in itertools.product((-1, 1), repeat=2 * n):
            queue.append((tuple(c + s * quarter for c, s in zip(center, signs)), quarter))
    return processed, excluded


def avoidance_shift(
    polys: Sequence[Polynomial],
    k: int,
    rho: Any,
    budget: int = DEFAULT_BUDGET,
    bits: int = DEFAULT_BITS,
) -> Tuple[List[Polynomial], AvoidanceCertificate]:
    """
    Choose a shell vector v avoided by F̃ on the ball ‖z‖ ≤ ρ and shift by it.

    Args:
        polys: Components of the truncation F̃
        k: Shell exponent (k ≥ 2)
        rho: Positive rational audit radius
        budget: Box budget of the certification
        bits: Rounding precision

    Returns:
        (components of F = F̃ − v, certificate)

    Raises:
        CertificationFailure: If subdivision cannot exclude a zero of F̃ − v
    """
    if k < 2:
        raise ValueError(f"shell exponent must be at least 2, got {k}")
    rho = to_rational(rho)
    if rho <= 0:
        raise ValueError("audit radius must be positive")
    polys = list(polys)
    n = _nvars(polys[0])

    samples = sampled_values(polys, rho, ball_mesh(n, rho))
    best, best_distance = None, -1.0
    for candidate in shell_candidates(len(polys), k):
        v = np.array([complex(x) for x in candidate])
        with np.errstate(invalid="ignore"):
            distance = float(np.min(np.linalg.norm(samples - v[None, :], axis=1)))
        if np.isnan(distance):
            distance = np.inf
        if distance > best_distance:
            best, best_distance = candidate, distance
    logger.debug(f"Shell vector {[str(x) for x in best]} keeps distance {best_distance:.6g} on samples")

    processed, excluded = certify_avoidance(polys, best, rho, budget, bits)
    origin = GaussianRational(0) if n == 1 else [GaussianRational(0)] * n
    sup = sum((disc_sup_bound(p, origin, 1, bits).value for p in polys if p), mpq(0))
    certificate = AvoidanceCertificate(
        k=k,
        rho=rho,
        vector=best,
        min_sample_distance=best_distance,
        boxes=processed,
        excluded=excluded,
        shell_bound=shell_bound(k),
        sphere_lower=shell_midpoint(k) - sup,
    )
    logger.info(f"✓ Avoidance certified on ‖z‖ ≤ {float(rho):g} with {processed} boxes")
    shifted = [p - _constant(p, v) for p, v in zip(polys, best)]
    return shifted, certificate
