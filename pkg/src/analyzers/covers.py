"""Direction covers from zeros in dyadic annuli, with finite Hausdorff sums."""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from ..exact.poly import DensePoly
from ..growth.psi import PsiRule, SlowPsi
from .zeros import Annulus, ZeroSet, count_zeros

logger = logging.getLogger(__name__)

DEFAULT_CEILING = 10


def annulus(k: int) -> Annulus:
    """𝒜_k = {2^k − 1 < |z| < 2^{k+1} + 1}."""
    if k < 0:
        raise ValueError(f"annulus index must be nonnegative, got {k}")
    return Annulus((1 << k) - 1, (1 << (k + 1)) + 1)


def zeros_by_annulus(f: DensePoly, kmax: int, tol: float = 1e-6) -> Dict[int, ZeroSet]:
    """Located zeros of f in 𝒜_0 … 𝒜_kmax."""
    out = {}
    for k in range(kmax + 1):
        out[k] = count_zeros(f, annulus(k), tol=tol)
        logger.debug(f"Annulus {k}: {out[k].count} zeros")
    return out


def hausdorff_term(length: float, alpha: float, delta: float) -> float:
    """
    Σ diam^α for an interval of the given length cut into pieces of diameter < δ.

    q = ⌊L/δ⌋ + 1 equal pieces each have diameter L/q < δ.
    """
    if length <= 0:
        return 0.0
    pieces = math.floor(length / delta) + 1
    return pieces * (length / pieces) ** alpha


@dataclass
class CoverRow:
    k: int
    count: int
    bound: int
    excess: int
    intervals: int
    term: float
    partial_sum: float
    tail_sum: float = 0.0

    def to_row(self) -> Dict[str, Any]:
        return {
            "k": self.k,
            "count": self.count,
            "bound": self.bound,
            "excess": self.excess,
            "intervals": self.intervals,
            "term": repr(self.term),
            "partial_sum": repr(self.partial_sum),
            "tail_sum": repr(self.tail_sum),
        }


@dataclass
class CoverReport:
    """
    Intervals E_k, per-annulus counts against 2ψ(2^{2k+4}) and Hausdorff sums.

    term is H^α_δ(E_k) of one annulus, partial_sum the running total up to k and
    tail_sum the rest Σ_{k ≤ j ≤ kmax} of the finite sum.
    """

    alpha: float
    delta: float
    intervals: Dict[int, List[Tuple[float, float]]] = field(default_factory=dict)
    rows: List[CoverRow] = field(default_factory=list)
    constant: int = 0
    ceiling: int = DEFAULT_CEILING

    @property
    def ok(self) -> bool:
        """Counts stay within 2ψ + C for a constant C no larger than the ceiling."""
        return self.constant <= self.ceiling

    @property
    def partial_sums(self) -> List[float]:
        return [row.partial_sum for row in self.rows]

    @property
    def tail_sums(self) -> List[float]:
        return [row.tail_sum for row in self.rows]

    def terms_decrease_after(self, start: int = 2) -> bool:
        """Whether the per-annulus terms strictly decrease for k > start."""
        terms = [row.term for row in self.rows if row.k >= start]
        return all(b < a for a, b in zip(terms, terms[1:]))

    def to_rows(self) -> List[Dict[str, Any]]:
        return [row.to_row() for row in self.rows]


def direction_covers(
    zeros: Dict[int, ZeroSet],
    kmax: int,
    alpha: float = 0.5,
    delta: float = 1.0,
    psi: Optional[PsiRule] = None,
    ceiling: int = DEFAULT_CEILING,
) -> CoverReport:
    """
    Build the covers E_k = ⋃ [θ_j − π/r_j, θ_j + π/r_j] for k = 0 … kmax.

    Args:
        zeros: Located zero sets keyed by annulus index
        kmax: Last annulus
        alpha: Hausdorff exponent
        delta: Diameter bound of the cover pieces
        psi: Growth rule for the count bound (slow ψ by default)
        ceiling: Largest acceptable constant C

    Returns:
        CoverReport with one row per annulus
    """
    if not 0 < alpha <= 1:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
    if delta <= 0:
        raise ValueError(f"delta must be positive, got {delta}")
    psi = psi or SlowPsi()
    report = CoverReport(alpha=alpha, delta=delta, ceiling=ceiling)
    running = 0.0
    for k in range(kmax + 1):
        zero_set = zeros.get(k)
        located = zero_set.zeros() if zero_set is not None else []
        count = zero_set.count if zero_set is not None else 0
        intervals = []
        term = 0.0
        for z, _ in located:
            r = abs(z)
            theta = math.atan2(z.imag, z.real)
            half = math.pi / r if r > 0 else math.pi
            length = min(2 * half, 2 * math.pi)
            intervals.append((theta - length / 2, theta + length / 2))
            term += hausdorff_term(length, alpha, delta)
        running += term
        bound = 2 * psi(1 << (2 * k + 4))
        report.intervals[k] = intervals
        report.rows.append(CoverRow(k, count, bound, count - bound, len(intervals), term, running))
    tail = 0.0
    for row in reversed(report.rows):
        tail += row.term
        row.tail_sum = tail
    report.constant = max([0] + [row.excess for row in report.rows])
    if not report.ok:
        logger.warning(f"Annulus counts need C = {report.constant} > {ceiling}")
    return report
