"""Center specialization: the search for n_k and the coefficient caps it must respect."""

import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Tuple, TypeVar, Union

from gmpy2 import mpq

from ..errors import EnvelopeExhausted
from ..exact.bounds import DEFAULT_BITS, ModulusBound, disc_sup_bound, modulus_upper
from ..exact.gaussian import ONE, ZERO, GaussianRational, floor_rational, to_rational
from ..exact.multipoly import MultiPoly
from ..exact.poly import DensePoly
from ..growth.envelope import GrowthEnvelope
from ..solvers.residual import ResidualCertificate
from ..solvers.system import StepSolution
from .models import DEFAULT_MAX_CENTER_BITS, CapEntry

logger = logging.getLogger(__name__)

T = TypeVar("T")
Polynomial = Union[DensePoly, MultiPoly]


def first_power_above(value: Any) -> int:
    """Smallest power of two strictly greater than a nonnegative rational."""
    return 1 << int(floor_rational(to_rational(value))).bit_length()


@dataclass
class CenterConstraints:
    """Inequalities a candidate center must satisfy at one step."""

    epsilon: Any
    radius_prev: Any
    target_radius: Any
    envelope: GrowthEnvelope
    ell: int
    kappa: Any = 1
    bits: int = DEFAULT_BITS
    max_center_bits: int = DEFAULT_MAX_CENTER_BITS
    step: Optional[int] = None

    def __post_init__(self):
        self.epsilon = to_rational(self.epsilon)
        self.radius_prev = to_rational(self.radius_prev)
        self.target_radius = to_rational(self.target_radius)
        self.kappa = to_rational(self.kappa)

    @property
    def m_lo(self) -> int:
        return self.ell + 1

    @property
    def m_hi(self) -> int:
        return 2 * self.ell + 1

    @property
    def start(self) -> int:
        return first_power_above(self.radius_prev + self.target_radius)

    def cap(self, degree: int) -> Any:
        """min(A_d, ε/((M − m + 1)·R_prev^d))."""
        a = self.envelope.coefficient(degree)
        if a <= 0:
            raise EnvelopeExhausted(
                f"Envelope coefficient A_{degree} is not positive",
                step=self.step,
                details={"degree": degree},
            )
        count = self.m_hi - self.m_lo + 1
        return min(a, self.epsilon / (count * self.radius_prev ** degree))


def degree_bounds(piece: Polynomial, bits: int = DEFAULT_BITS) -> Dict[int, Any]:
    """Σ_{|I| = d} modulus_upper(a_I) per total degree d over nonzero coefficients."""
    out: Dict[int, Any] = {}
    for degree, coef in piece.iter_terms():
        out[degree] = out.get(degree, mpq(0)) + modulus_upper(coef, bits).value
    return out


def coefficient_caps(piece: Polynomial, constraints: CenterConstraints) -> List[CapEntry]:
    """Cap verdicts for every degree carrying a nonzero coefficient."""
    return [
        CapEntry(degree, bound, constraints.cap(degree))
        for degree, bound in sorted(degree_bounds(piece, constraints.bits).items())
    ]


def origin_of(piece: Polynomial) -> Any:
    return ZERO if isinstance(piece, DensePoly) else [ZERO] * piece.nvars


def piece_bound(piece: Polynomial, radius: Any, bits: int = DEFAULT_BITS) -> ModulusBound:
    """disc_sup_bound around the origin, 0 for the zero polynomial."""
    if not piece:
        return ModulusBound(0)
    return disc_sup_bound(piece, origin_of(piece), radius, bits)


def _first_passing_power(
    test: Callable[[int], bool], start: int, max_bits: int, step: Optional[int]
) -> Tuple[Optional[int], int]:
    """
    Bracket the smallest start·2^j passing test, galloping on j.

    Returns:
        (last failing candidate or None when start passes, first passing candidate)
    """
    if test(start):
        return None, start
    limit = max_bits - start.bit_length()
    lo, stride = 0, 1
    while True:
        j = min(lo + stride, limit)
        if j <= lo:
            raise EnvelopeExhausted(
                f"Center search exceeded {max_bits} bits",
                step=step,
                details={"bits": max_bits + 1, "max_center_bits": max_bits},
            )
        logger.debug(f"Step {step}: trying center 2^{(start << j).bit_length() - 1}")
        if test(start << j):
            break
        lo, stride = j, stride * 2
    hi = j
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if test(start << mid):
            hi = mid
        else:
            lo = mid
    return start << lo, start << hi


def _bisect(test: Callable[[int], bool], lo: int, hi: int) -> int:
    """First passing integer in (lo, hi]; lo fails and hi passes."""
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if test(mid):
            hi = mid
        else:
            lo = mid
    return hi


def search_center(
    admissible: Callable[[int], Optional[T]],
    start: int,
    max_bits: int = DEFAULT_MAX_CENTER_BITS,
    step: Optional[int] = None,
    screen: Optional[Callable[[int], bool]] = None,
) -> Tuple[int, T]:
    """
    First admissible integer: the first admissible power of two above start, then bisection.

    The power of two is found by galloping on the exponent. When a screen is
    given it must be implied by admissibility; the search then runs on the
    screen and the full check is evaluated only where the screen passes, so
    the result is the same as searching on admissible alone.

    Args:
        admissible: Returns a certificate for an admissible n, None otherwise
        start: First candidate (a power of two)
        max_bits: Largest allowed bit length of n
        step: Step number for error reporting
        screen: Cheap necessary condition for admissibility

    Returns:
        (n, certificate)

    Raises:
        EnvelopeExhausted: If n would exceed max_bits bits
    """
    results: Dict[int, Optional[T]] = {}

    def full(n: int) -> bool:
        if n not in results:
            results[n] = admissible(n)
        return results[n] is not None

    test = screen if screen is not None else full
    lo, hi = _first_passing_power(test, start, max_bits, step)
    n = hi if lo is None else _bisect(test, lo, hi)
    if not full(n):
        logger.debug(f"Step {step}: screen admits {n} but the full check does not")
        lo, hi = _first_passing_power(full, n, max_bits, step)
        n = _bisect(full, lo, hi)
    return n, results[n]


def specialize_center(
    solution: StepSolution,
    constraints: CenterConstraints,
    residual: Optional[ResidualCertificate] = None,
    direction: GaussianRational = ONE,
) -> int:
    """
    Smallest admissible n_k in the doubling-then-bisection sequence for one univariate component.

    Admissible means every coefficient cap holds, the piece is ≤ ε on the
    ball of radius R_{k−1} and, when a residual is given, the residual is
    ≤ ε on the target disc.

    Args:
        solution: Solved step (Laurent coefficients in c)
        constraints: ε_k, R_{k−1}, r̂_k and the envelope
        residual: Residual certificate of the same step, if available
        direction: Unit Gaussian rational; the center is n·direction

    Returns:
        n_k
    """
    def admissible(n: int) -> Optional[bool]:
        c = direction * n
        piece = solution.specialize(c)
        if not all(entry.ok for entry in coefficient_caps(piece, constraints)):
            return None
        if not piece_bound(piece, constraints.radius_prev, constraints.bits).within(constraints.epsilon):
            return None
        if residual is not None and not residual.sup_bound(c, constraints.target_radius, constraints.bits).within(
            constraints.epsilon
        ):
            return None
        return True

    n, _ = search_center(admissible, constraints.start, constraints.max_center_bits, constraints.step)
    return n
