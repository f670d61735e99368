"""
Zero counting by winding numbers and zero localization by box subdivision.

A zero of exact order p at the origin is split off first, so contours never
have to pass near it.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Tuple, Union

import numpy as np

from ..errors import BoundaryZero
from ..exact.gaussian import format_rational, to_rational
from ..exact.poly import DensePoly
from .quadrature import scaled_coefficients

logger = logging.getLogger(__name__)

PHASE_STEP = np.pi / 4
TINY = 2.0 ** -900
INITIAL_SAMPLES = 64
MAX_SAMPLES = 1 << 18
MIN_SEGMENT = 2.0 ** -40
NUDGE = 1 + Fraction(1, 1 << 20)
MAX_NUDGES = 8
MAX_BOXES = 1 << 14


@dataclass(frozen=True)
class Disc:
    """Open disc |z| < radius."""

    radius: Any

    def contains(self, z: complex) -> bool:
        return abs(z) < float(self.radius)

    @property
    def label(self) -> str:
        return f"disc(0, {format_rational(to_rational(self.radius))})"


@dataclass(frozen=True)
class Annulus:
    """Open annulus inner < |z| < outer."""

    inner: Any
    outer: Any

    def contains(self, z: complex) -> bool:
        return float(self.inner) < abs(z) < float(self.outer)

    @property
    def label(self) -> str:
        return f"annulus({format_rational(to_rational(self.inner))}, {format_rational(to_rational(self.outer))})"


Region = Union[Disc, Annulus]


@dataclass
class ZeroBox:
    """Axis-parallel box [x0, x1]×[y0, y1] with the winding number of its boundary."""

    x0: float
    x1: float
    y0: float
    y1: float
    multiplicity: int

    @property
    def center(self) -> complex:
        return complex((self.x0 + self.x1) / 2, (self.y0 + self.y1) / 2)

    @property
    def size(self) -> float:
        return max(self.x1 - self.x0, self.y1 - self.y0)

    def to_row(self) -> Dict[str, Any]:
        return {
            "re": repr(self.center.real),
            "im": repr(self.center.imag),
            "size": repr(self.size),
            "multiplicity": self.multiplicity,
        }


@dataclass
class ZeroSet:
    """Exact zero count of a region plus the isolating boxes found in it."""

    region: Region
    count: int
    boxes: List[ZeroBox] = field(default_factory=list)
    origin_order: int = 0
    nudges: List[Dict[str, str]] = field(default_factory=list)
    localized: bool = False

    def zeros(self) -> List[Tuple[complex, int]]:
        """Approximate zero locations with multiplicities."""
        return [(b.center, b.multiplicity) for b in self.boxes]


class ScaledEvaluator:
    """Evaluates f(z)·2^{−E} through f(ρw) with |w| ≲ 1."""

    def __init__(self, poly: DensePoly, rho: Any):
        self.rho = to_rational(rho)
        self.rho_float = float(self.rho)
        keys, values, self.exponent = scaled_coefficients(poly.iter_terms(), self.rho)
        dense = np.zeros(max(keys) + 1 if keys else 1, dtype=complex)
        for degree, value in zip(keys, values):
            dense[degree] = value
        self.degree = len(dense) - 1
        # np.polyval wants the leading coefficient first
        self.reversed = dense[::-1]
        self.first = np.polyder(self.reversed) if self.degree >= 1 else np.zeros(1, dtype=complex)
        self.second = np.polyder(self.reversed, 2) if self.degree >= 2 else np.zeros(1, dtype=complex)

    def __call__(self, z: np.ndarray) -> np.ndarray:
        return np.polyval(self.reversed, z / self.rho_float)

    def derivative(self, z: np.ndarray) -> np.ndarray:
        """f′(z)·2^{−E}."""
        return np.polyval(self.first, z / self.rho_float) / self.rho_float

    def second_bound(self, reach: float) -> float:
        """Upper bound of |f″|·2^{−E} on the closed disc |z| ≤ reach."""
        return float(np.polyval(np.abs(self.second), reach / self.rho_float)) / self.rho_float ** 2


@dataclass(frozen=True)
class CircleContour:
    """|z| = radius traversed once on s ∈ [0, 1]."""

    radius: float

    def __call__(self, s: np.ndarray) -> np.ndarray:
        return self.radius * np.exp(2j * np.pi * s)

    @property
    def speed(self) -> float:
        return 2 * np.pi * self.radius

    @property
    def reach(self) -> float:
        return self.radius


@dataclass(frozen=True)
class BoxContour:
    """Boundary of [x0, x1]×[y0, y1], counterclockwise, one side per quarter of s."""

    x0: float
    x1: float
    y0: float
    y1: float

    @property
    def corners(self) -> np.ndarray:
        x0, x1, y0, y1 = self.x0, self.x1, self.y0, self.y1
        return np.array([complex(x0, y0), complex(x1, y0), complex(x1, y1), complex(x0, y1), complex(x0, y0)])

    def __call__(self, s: np.ndarray) -> np.ndarray:
        corners = self.corners
        t = np.clip(s, 0.0, 1.0) * 4
        side = np.minimum(t.astype(int), 3)
        frac = t - side
        return corners[side] + (corners[side + 1] - corners[side]) * frac

    @property
    def speed(self) -> float:
        return 4 * max(self.x1 - self.x0, self.y1 - self.y0)

    @property
    def reach(self) -> float:
        return float(np.max(np.abs(self.corners)))


Contour = Union[CircleContour, BoxContour]


def winding_number(evaluator: ScaledEvaluator, contour: Contour, samples: int = INITIAL_SAMPLES) -> int:
    """
    Winding number of f∘contour around 0 for a closed contour on s ∈ [0, 1].

    A segment is accepted when, from one of its endpoints, the first-order
    bound |f′(z_i)|·h + ½·sup|f″|·h² on the change of f along it stays below
    |f(z_i)|, and its phase step is below π/4. Other segments are bisected.

    Args:
        evaluator: Scaled polynomial with derivative access
        contour: Closed contour with its speed and reach
        samples: Initial number of equal segments

    Raises:
        BoundaryZero: If a sample is (numerically) zero or refinement does not settle
    """
    curvature = evaluator.second_bound(contour.reach)
    speed = contour.speed
    s = np.linspace(0.0, 1.0, samples + 1)
    z = contour(s)
    values = evaluator(z)
    slopes = np.abs(evaluator.derivative(z))
    while True:
        moduli = np.abs(values)
        if np.min(moduli) < TINY or not np.all(np.isfinite(values)):
            raise BoundaryZero("Function vanishes on the contour", details={"samples": len(s)})
        h = speed * (s[1:] - s[:-1])
        quadratic = curvature * h * h / 2
        held = (slopes[:-1] * h + quadratic < moduli[:-1]) | (slopes[1:] * h + quadratic < moduli[1:])
        steps = np.angle(values[1:] / values[:-1])
        bad = ~held | (np.abs(steps) >= PHASE_STEP)
        if not bad.any():
            return int(round(float(steps.sum()) / (2 * np.pi)))
        if np.min((s[1:] - s[:-1])[bad]) < MIN_SEGMENT:
            raise BoundaryZero("Contour passes through a zero", details={"samples": len(s)})
        if len(s) > MAX_SAMPLES:
            raise BoundaryZero("Winding refinement did not settle", details={"samples": len(s)})
        mids = (s[:-1][bad] + s[1:][bad]) / 2
        z_mid = contour(mids)
        s_all = np.concatenate([s, mids])
        v_all = np.concatenate([values, evaluator(z_mid)])
        d_all = np.concatenate([slopes, np.abs(evaluator.derivative(z_mid))])
        order = np.argsort(s_all, kind="stable")
        s, values, slopes = s_all[order], v_all[order], d_all[order]


def initial_samples(evaluator: ScaledEvaluator) -> int:
    return max(INITIAL_SAMPLES, 8 * evaluator.degree)


def deflate_origin(f: DensePoly) -> Tuple[DensePoly, int]:
    """(g, p) with f = z^p·g and g(0) ≠ 0."""
    p = f.lowest_degree()
    if p < 0:
        raise ValueError("The zero polynomial has no isolated zeros")
    return DensePoly(f.coeffs[p:]), p


def circle_winding(g: DensePoly, radius: Any, nudges: List[Dict[str, str]]) -> int:
    """
    Zeros of g in |z| < radius, nudging the radius by 1 + 2^{−20} when a zero sits on the circle.

    Raises:
        BoundaryZero: After eight failed nudges
    """
    r = to_rational(radius)
    for attempt in range(MAX_NUDGES + 1):
        try:
            evaluator = ScaledEvaluator(g, r)
            return winding_number(evaluator, CircleContour(float(r)), initial_samples(evaluator))
        except BoundaryZero:
            if attempt == MAX_NUDGES:
                raise
            nudged = r * to_rational(NUDGE)
            nudges.append({"from": format_rational(r), "to": format_rational(nudged)})
            logger.debug(f"Nudging contour radius {float(r):.6g} -> {float(nudged):.6g}")
            r = nudged
    raise BoundaryZero("unreachable")


def _box_winding(evaluator: ScaledEvaluator, box: Tuple[float, float, float, float]) -> int:
    return winding_number(evaluator, BoxContour(*box), initial_samples(evaluator))


def isolate_zeros(g: DensePoly, half_side: float, tol: float) -> List[ZeroBox]:
    """
    Isolating boxes for the zeros of g in the square [−s, s]².

    Boxes with positive winding are split along their longest side until
    smaller than tol; the second child's winding is the parent's minus the first's.
    """
    evaluator = ScaledEvaluator(g, to_rational(Fraction(half_side * math.sqrt(2.0))))
    square = (-half_side, half_side, -half_side, half_side)
    total = _box_winding(evaluator, square)
    stack = [(square, total)] if total > 0 else []
    leaves: List[ZeroBox] = []
    processed = 0
    while stack:
        box, w = stack.pop()
        processed += 1
        if processed > MAX_BOXES:
            raise BoundaryZero("Zero localization exceeded its box budget", details={"boxes": processed})
        x0, x1, y0, y1 = box
        if max(x1 - x0, y1 - y0) < tol:
            leaves.append(ZeroBox(x0, x1, y0, y1, w))
            continue
        for ratio in (0.5, 0.5 + 2.0 ** -10, 0.5 - 2.0 ** -9, 0.5 + 2.0 ** -8):
            if x1 - x0 >= y1 - y0:
                cut = x0 + (x1 - x0) * ratio
                first, second = (x0, cut, y0, y1), (cut, x1, y0, y1)
            else:
                cut = y0 + (y1 - y0) * ratio
                first, second = (x0, x1, y0, cut), (x0, x1, cut, y1)
            try:
                w1 = _box_winding(evaluator, first)
                break
            except BoundaryZero:
                continue
        else:
            raise BoundaryZero("Every split line of a box meets a zero", details={"box": box})
        for child, cw in ((first, w1), (second, w - w1)):
            if cw > 0:
                stack.append((child, cw))
    leaves.sort(key=lambda b: (b.center.real, b.center.imag))
    return leaves


def count_zeros(f: DensePoly, region: Region, tol: float = 1e-6, localize: bool = True) -> ZeroSet:
    """
    Count (and optionally locate) the zeros of f in a disc or annulus.

    Args:
        f: Nonzero polynomial
        region: Disc(r) or Annulus(r_in, r_out)
        tol: Box size (relative to the outer radius) where localization stops
        localize: Also compute isolating boxes

    Returns:
        ZeroSet with the exact count, the origin's order and the boxes inside the region

    Raises:
        BoundaryZero: If some contour cannot be cleared of zeros
    """
    g, p = deflate_origin(f)
    nudges: List[Dict[str, str]] = []
    if isinstance(region, Disc):
        outer = to_rational(region.radius)
        count = p + circle_winding(g, outer, nudges)
        origin = p
    else:
        outer = to_rational(region.outer)
        inner = to_rational(region.inner)
        count = circle_winding(g, outer, nudges)
        if inner > 0:
            count -= circle_winding(g, inner, nudges)
        origin = 0

    zero_set = ZeroSet(region, count, origin_order=origin, nudges=nudges, localized=localize)
    if not localize:
        return zero_set
    half_side = float(outer)
    boxes = isolate_zeros(g, half_side * (1 + 2.0 ** -12), tol * max(1.0, half_side)) if g.degree > 0 else []
    zero_set.boxes = [b for b in boxes if region.contains(b.center)]
    if origin:
        zero_set.boxes.insert(0, ZeroBox(0.0, 0.0, 0.0, 0.0, origin))
    return zero_set


def counting_function(zeros: ZeroSet, r: Any) -> float:
    """
    N(r, 0) = Σ_{|z_j| ≤ r} mult_j·log(r/max(|z_j|, 1)).

    Zeros inside the unit disc each contribute log r. A ZeroSet without boxes
    is accepted only for regions inside the unit disc, where positions do not matter.
    """
    r_float = float(to_rational(r))
    log_r = math.log(r_float)
    if not zeros.localized:
        region = zeros.region
        if isinstance(region, Disc) and to_rational(region.radius) <= 1:
            return zeros.count * log_r
        raise ValueError("counting_function needs located zeros outside the unit disc")
    total = 0.0
    for z, multiplicity in zeros.zeros():
        modulus = abs(z)
        if modulus <= r_float:
            total += multiplicity * (log_r - math.log(max(modulus, 1.0)))
    return total
