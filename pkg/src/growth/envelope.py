"""
Growth envelopes φ(r) = Σ A_i r^i with positive, rapidly shrinking A_i.

Envelopes are described by a spec dict so transcripts can record and rebuild
them; coefficients are computed lazily and cached behind a lock.
"""

import logging
import threading
from math import factorial
from typing import Any, Callable, Dict, List, Optional, Sequence

from gmpy2 import mpq

from ..errors import BracketFailure
from ..exact.bounds import DEFAULT_BITS, round_down
from ..exact.gaussian import RationalLike, format_rational, to_rational
from .base import GrowthOracle
from .oracles import ExpOracle, build_oracle

logger = logging.getLogger(__name__)

INVERSE_FACTORIAL = "inverse_factorial"
GEOMETRIC_FACTORIAL = "geometric_factorial"
SCALED = "scaled"
MINORANT = "minorant"

MAX_HALVINGS = 128
MAX_EXPONENT = 1024


def _horner(coefficients: Sequence[Any], r: Any) -> Any:
    acc = mpq(0)
    for a in reversed(coefficients):
        acc = acc * r + a
    return acc


def quotient_infimum(
    oracle: GrowthOracle,
    coefficients: Sequence[Any],
    power: int,
    bits: int = DEFAULT_BITS,
    max_exponent: int = MAX_EXPONENT,
) -> Any:
    """
    Certified lower bound of inf_{r > 0} (φ(r) − P(r))/r^power.

    The half-line splits into a head (0, r_lo], a dyadic grid of cells with
    ratio 9/8 and a tail [r_hi, ∞) handled by the oracle's tail quotient.

    Args:
        oracle: Bounds for φ
        coefficients: P's coefficients A_0..A_{power−1}
        power: Exponent of the denominator
        bits: Rounding precision of the running minimum

    Returns:
        Positive rational lower bound

    Raises:
        BracketFailure: If positivity cannot be certified on some piece
    """
    def fail(where: str, value: Any) -> BracketFailure:
        return BracketFailure(
            f"Cannot certify a positive minimum for power {power} on {where}",
            details={"power": power, "where": where, "bound": value},
        )

    r_lo = mpq(1)
    exponent = 0
    for _ in range(MAX_HALVINGS):
        numerator = oracle.lower(0, r_lo) - _horner(coefficients, r_lo)
        if numerator > 0:
            break
        r_lo /= 2
        exponent -= 1
    else:
        raise fail("head interval", 0)
    best = round_down(numerator / r_lo ** power, bits)

    last_tail = None
    while exponent < max_exponent:
        base = mpq(2) ** exponent
        for t in range(8):
            a = base * (8 + t) / 8
            b = base * (9 + t) / 8
            numerator = oracle.lower(a, b) - _horner(coefficients, b)
            value = numerator / (b if numerator > 0 else a) ** power
            if value <= 0:
                raise fail(f"[{format_rational(a)}, {format_rational(b)}]", value)
            best = min(best, round_down(value, bits))
        exponent += 1
        r_hi = mpq(2) ** exponent
        tail = oracle.tail_quotient_lower(r_hi, power) - _horner(coefficients, r_hi) / r_hi ** power
        if tail > 0:
            last_tail = round_down(tail, bits)
            if tail >= best:
                return best
    if last_tail is None:
        raise fail("tail", 0)
    return min(best, last_tail)


class GrowthEnvelope:
    """Coefficient rule i ↦ A_i > 0 with lazy, synchronized evaluation."""

    def __init__(
        self,
        kind: str,
        params: Dict[str, Any],
        rule: Callable[[int, List[Any]], Any],
        oracle: Optional[GrowthOracle] = None,
        provenance: str = "direct",
    ):
        """
        Initialize an envelope.

        Args:
            kind: Envelope id
            params: Serializable parameters (rationals as strings)
            rule: Maps (i, coefficients computed so far) to A_i
            oracle: Oracle for φ when the family has one
            provenance: "direct" or "minorant"
        """
        self.kind = kind
        self.params = params
        self.oracle = oracle
        self.provenance = provenance
        self._rule = rule
        self._cache: List[Any] = []
        self._lock = threading.RLock()

    def coefficient(self, i: int) -> Any:
        if i < 0:
            raise IndexError("Envelope index must be nonnegative")
        with self._lock:
            while len(self._cache) <= i:
                value = self._rule(len(self._cache), self._cache)
                if value <= 0:
                    raise BracketFailure(f"Envelope coefficient A_{len(self._cache)} is not positive")
                self._cache.append(value)
            return self._cache[i]

    __getitem__ = coefficient

    def prefix(self, depth: int) -> List[Any]:
        """[A_0, …, A_depth]."""
        self.coefficient(depth)
        with self._lock:
            return list(self._cache[: depth + 1])

    def evaluate(self, r: RationalLike, depth: int) -> Any:
        """Σ_{i ≤ depth} A_i r^i, exact."""
        return _horner(self.prefix(depth), to_rational(r))

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, **self.params}

    def __repr__(self) -> str:
        return f"GrowthEnvelope({self.to_dict()})"


def inverse_factorial() -> GrowthEnvelope:
    """A_i = 1/i!, the envelope of e^r."""
    return GrowthEnvelope(INVERSE_FACTORIAL, {}, lambda i, _: mpq(1, factorial(i)), ExpOracle(1))


def geometric_factorial(scale: RationalLike) -> GrowthEnvelope:
    """A_i = scale^i/i!, the envelope of e^{scale·r}."""
    s = to_rational(scale)
    if s <= 0:
        raise ValueError("geometric_factorial scale must be positive")
    return GrowthEnvelope(
        GEOMETRIC_FACTORIAL,
        {"scale": format_rational(s)},
        lambda i, _: s ** i / factorial(i),
        ExpOracle(s),
    )


def scaled(factor: RationalLike, base: GrowthEnvelope) -> GrowthEnvelope:
    """A_i = factor·base_i."""
    f = to_rational(factor)
    if f <= 0:
        raise ValueError("scaled envelope factor must be positive")
    return GrowthEnvelope(
        SCALED,
        {"factor": format_rational(f), "base": base.to_dict()},
        lambda i, _: f * base.coefficient(i),
        None,
        base.provenance,
    )


def minorant(phi: GrowthOracle, depth: int = 0, bits: int = DEFAULT_BITS) -> GrowthEnvelope:
    """
    Analytic minorant Σ A_i r^i ≤ φ(r).

    A_0 is half the certified infimum of φ; A_{i+1} = min(A_i/(i+1), half the
    certified infimum of (φ − Σ_{j≤i} A_j r^j)/r^{i+1}). Coefficients up to
    depth are computed immediately, later ones on demand.

    Raises:
        BracketFailure: If some infimum cannot be certified positive
    """
    def rule(i: int, previous: List[Any]) -> Any:
        half_min = round_down(quotient_infimum(phi, previous, i, bits) / 2, bits)
        value = half_min if i == 0 else min(previous[-1] / i, half_min)
        logger.debug(f"minorant A_{i} = {float(value):.6g}")
        return value

    envelope = GrowthEnvelope(MINORANT, {"phi": phi.to_dict(), "depth": depth}, rule, phi, "minorant")
    envelope.prefix(depth)
    return envelope


def build_envelope(spec: Dict[str, Any]) -> GrowthEnvelope:
    """
    Rebuild an envelope from its serialized spec.

    Args:
        spec: Dict with 'kind' and the kind's parameters

    Returns:
        GrowthEnvelope

    Raises:
        ValueError: On unknown kinds or missing parameters
    """
    kind = spec.get("kind", INVERSE_FACTORIAL)
    if kind == INVERSE_FACTORIAL:
        return inverse_factorial()
    if kind == GEOMETRIC_FACTORIAL:
        if "scale" not in spec:
            raise ValueError("Missing 'scale' in geometric_factorial envelope")
        return geometric_factorial(spec["scale"])
    if kind == SCALED:
        if "factor" not in spec or "base" not in spec:
            raise ValueError("Scaled envelope needs 'factor' and 'base'")
        return scaled(spec["factor"], build_envelope(spec["base"]))
    if kind == MINORANT:
        if "phi" not in spec:
            raise ValueError("Missing 'phi' in minorant envelope")
        return minorant(build_oracle(spec["phi"]), int(spec.get("depth", 0)))
    raise ValueError(f"Unknown envelope kind '{kind}'")


def audit_ratio_cap(envelope: GrowthEnvelope, depth: int) -> List[int]:
    """Indices i < depth with A_{i+1} > A_i/(i+1); empty for minorant envelopes."""
    coeffs = envelope.prefix(depth)
    return [i for i in range(depth) if coeffs[i + 1] * (i + 1) > coeffs[i]]


def audit_ratio_decay(envelope: GrowthEnvelope, depth: int) -> List[int]:
    """Indices where the ratio A_{i+1}/A_i increases."""
    coeffs = envelope.prefix(depth)
    ratios = [coeffs[i + 1] / coeffs[i] for i in range(depth)]
    return [i for i in range(1, len(ratios)) if ratios[i] > ratios[i - 1]]


def audit_domination(
    envelope: GrowthEnvelope,
    oracle: GrowthOracle,
    radii: Sequence[RationalLike],
    depth: int,
) -> List[Dict[str, Any]]:
    """
    Compare Σ_{i ≤ depth} A_i r^i with the oracle's lower bound of φ(r).

    Returns:
        One row per radius with keys r, partial_sum, phi_lower, ok
    """
    rows = []
    for r in radii:
        r = to_rational(r)
        partial = envelope.evaluate(r, depth)
        phi_lower = oracle.lower_at(r)
        rows.append({"r": r, "partial_sum": partial, "phi_lower": phi_lower, "ok": partial <= phi_lower})
    return rows
