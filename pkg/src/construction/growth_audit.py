"""Exact growth audit of an emitted truncation against its envelope."""

from typing import Any, Dict, List, Sequence

from gmpy2 import mpq

from ..exact.bounds import DEFAULT_BITS
from ..exact.gaussian import to_rational
from ..growth.envelope import GrowthEnvelope
from .centers import degree_bounds
from .models import Polynomial, Transcript


def audit_pieces(
    components: Sequence[Sequence[Polynomial]],
    envelope: GrowthEnvelope,
    radii: Sequence[Any],
    bits: int = DEFAULT_BITS,
) -> List[Dict[str, Any]]:
    """
    Compare Σ_d (Σ_{|I|=d} |a_I|)·r^d with Σ_d A_d r^d for every component.

    Args:
        components: Per component, the pieces S_1..S_K
        envelope: Envelope the caps were checked against
        radii: Sample radii
        bits: Precision of the modulus bounds

    Returns:
        One row per radius: r, coefficient_sum (max over components),
        envelope_sum, phi_lower (None without oracle), ok
    """
    profiles = []
    top = 0
    for pieces in components:
        profile: Dict[int, Any] = {}
        for piece in pieces:
            for degree, bound in degree_bounds(piece, bits).items():
                profile[degree] = profile.get(degree, mpq(0)) + bound
        if profile:
            top = max(top, max(profile))
        profiles.append(profile)

    rows = []
    for r in radii:
        r = to_rational(r)
        lhs = max((sum((b * r ** d for d, b in p.items()), mpq(0)) for p in profiles), default=mpq(0))
        rhs = envelope.evaluate(r, top)
        phi_lower = envelope.oracle.lower_at(r) if envelope.oracle is not None else None
        ok = lhs <= rhs and (phi_lower is None or lhs <= phi_lower)
        rows.append({"r": r, "coefficient_sum": lhs, "envelope_sum": rhs, "phi_lower": phi_lower, "ok": ok})
    return rows


def growth_audit(transcript: Transcript, radii: Sequence[Any]) -> List[Dict[str, Any]]:
    """Growth audit of a finished run at the given radii."""
    m = transcript.config.m
    components = [[record.pieces[j] for record in transcript.records] for j in range(m)]
    return audit_pieces(components, transcript.config.envelope, radii)
