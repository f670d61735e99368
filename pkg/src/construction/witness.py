"""Witness extraction: an integer n with F(z + n·θ) close to a given target."""

from dataclasses import dataclass
from typing import Any, Dict, Optional

from gmpy2 import mpq

from ..errors import NoWitnessInHorizon
from ..exact.bounds import ModulusBound
from ..exact.gaussian import format_rational, to_rational
from .models import Direction, StepRecord, Transcript


@dataclass
class WitnessResult:
    """A certified witness step."""

    step: int
    n: int
    center: Direction
    target_radius: Any
    bound: ModulusBound
    tail: Any

    def to_dict(self) -> Dict[str, Any]:
        return {
            "step": self.step,
            "n": str(self.n),
            "target_radius": format_rational(self.target_radius),
            "bound": str(self.bound),
            "tail": format_rational(self.tail),
        }


def _matches(record: StepRecord, target_index: int, direction_index: Optional[int]) -> bool:
    if record.target_index != target_index:
        return False
    return record.direction_index is None or direction_index is None or record.direction_index == direction_index


def witness(
    transcript: Transcript,
    target_index: int,
    direction_index: Optional[int] = 1,
    epsilon: Any = None,
) -> WitnessResult:
    """
    First step whose stored certificates bound the truncation's error by ε.

    The error at step k telescopes: cond2 of step k plus cond1 of every later
    step, summed over components. A step qualifies when m·(ε_k + Σ_{k<l≤K} ε_l) ≤ ε,
    which caps that sum.

    Args:
        transcript: Finished run
        target_index: Target family index i
        direction_index: Configured direction index p (ignored for window directions)
        epsilon: Tolerance (defaults to the tolerance of the first matching step)

    Returns:
        WitnessResult with n, the center and the certified bound

    Raises:
        NoWitnessInHorizon: If no step of the transcript qualifies
    """
    config = transcript.config
    rule = config.epsilon
    last = len(transcript.records)
    eps = None if epsilon is None else to_rational(epsilon)

    for record in transcript.records:
        if not _matches(record, target_index, direction_index):
            continue
        budget = config.m * (record.epsilon + rule.window_sum(record.k + 1, last))
        if eps is not None and budget > eps:
            continue
        total = mpq(0)
        for j in range(config.m):
            total += record.cond2[j].value
            total += sum((later.cond1[j].value for later in transcript.records[record.k:]), mpq(0))
        return WitnessResult(
            step=record.k,
            n=record.n,
            center=record.center,
            target_radius=record.target_radius,
            bound=ModulusBound(total),
            tail=config.m * rule.tail(last + 1),
        )

    raise NoWitnessInHorizon(
        f"No step within K={last} approximates target {target_index} to the requested tolerance",
        details={
            "target_index": target_index,
            "direction_index": direction_index,
            "epsilon": format_rational(eps) if eps is not None else None,
        },
    )
