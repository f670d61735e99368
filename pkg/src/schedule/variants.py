"""Step schedules: which target and direction the k-th step approximates."""

from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

from .pairing import phi1, unpair

STANDARD_1VAR = "standard-1var"
STANDARD_NVAR = "standard-nvar"
CANTOR = "cantor"

VARIANT_KINDS = (STANDARD_1VAR, STANDARD_NVAR, CANTOR)


@dataclass(frozen=True)
class ScheduleVariant:
    """Schedule kind plus the number of configured directions."""

    kind: str = STANDARD_1VAR
    direction_count: int = 1

    def __post_init__(self):
        if self.kind not in VARIANT_KINDS:
            raise ValueError(f"Unknown schedule variant '{self.kind}', expected one of {VARIANT_KINDS}")
        if self.direction_count < 1:
            raise ValueError("direction_count must be positive")

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "direction_count": self.direction_count}


def binary_length(n: int) -> int:
    """l(n): index of the leading binary digit of n ≥ 1."""
    if n < 1:
        raise ValueError(f"binary_length expects n >= 1, got {n}")
    return n.bit_length() - 1


def schedule_index(k: int, variant: ScheduleVariant) -> Tuple[int, Optional[int]]:
    """
    Target and direction index of step k.

    Args:
        k: Step number (≥ 1)
        variant: Schedule variant

    Returns:
        (target index, direction index); the direction is None for the cantor
        variant, whose direction is carried by the window tree
    """
    if k < 1:
        raise ValueError(f"schedule_index expects k >= 1, got {k}")
    if variant.kind == STANDARD_1VAR:
        return phi1(k), 1
    if variant.kind == STANDARD_NVAR:
        target, direction = unpair(phi1(k))
        # finitely many configured directions are cycled
        return target, (direction - 1) % variant.direction_count + 1
    return phi1(max(binary_length(k), 1)), None
