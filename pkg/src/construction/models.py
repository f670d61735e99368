"""Data models for construction runs and their transcripts."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from gmpy2 import mpq

from ..errors import NonUnitDirection
from ..exact.bounds import ModulusBound
from ..exact.gaussian import GaussianRational, format_rational, to_rational
from ..exact.multipoly import MultiPoly
from ..exact.poly import DensePoly
from ..growth.envelope import GrowthEnvelope, inverse_factorial
from ..schedule.enumeration import TargetFamily
from ..schedule.epsilon import EpsilonRule
from ..schedule.pairing import PAIRING_ID
from ..schedule.variants import CANTOR, ScheduleVariant

Polynomial = Union[DensePoly, MultiPoly]
Direction = Tuple[GaussianRational, ...]

TRANSCRIPT_FORMAT = "slowgrowth-transcript"
TRANSCRIPT_VERSION = 1
DEFAULT_R0 = 2023
DEFAULT_MAX_CENTER_BITS = 1 << 20


def check_unit(direction: Sequence[Any], index: int = 0) -> Direction:
    """
    Coerce a direction and require Σ|θ_s|² = 1 exactly.

    Raises:
        NonUnitDirection: If the squared norm is not exactly one
    """
    theta = tuple(GaussianRational.coerce(x) for x in direction)
    norm2 = sum((x.norm2() for x in theta), mpq(0))
    if norm2 != 1:
        raise NonUnitDirection(
            f"Direction {index + 1} has squared norm {format_rational(norm2)}",
            details={"index": index + 1, "norm2": format_rational(norm2)},
        )
    return theta


@dataclass
class ConstructionConfig:
    """Everything a run depends on; identical configs give identical transcripts."""

    n: int = 1
    m: int = 1
    steps: int = 4
    r0: Any = DEFAULT_R0
    envelope: GrowthEnvelope = field(default_factory=inverse_factorial)
    epsilon: EpsilonRule = field(default_factory=EpsilonRule)
    directions: List[Direction] = field(default_factory=list)
    variant: ScheduleVariant = field(default_factory=ScheduleVariant)
    targets: Optional[TargetFamily] = None
    root_half_width: Any = mpq(1, 4)
    max_center_bits: int = DEFAULT_MAX_CENTER_BITS

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError("n and m must be positive")
        if self.steps < 0:
            raise ValueError("steps must be nonnegative")
        self.r0 = to_rational(self.r0)
        if self.r0 <= 0:
            raise ValueError("r0 must be positive")
        self.root_half_width = to_rational(self.root_half_width)
        if not 0 < self.root_half_width <= 1:
            raise ValueError("cantor root_half_width must lie in (0, 1]")
        if not self.directions:
            self.directions = [tuple(GaussianRational(1 if s == 0 else 0) for s in range(self.n))]
        self.directions = [check_unit(d, i) for i, d in enumerate(self.directions)]
        for d in self.directions:
            if len(d) != self.n:
                raise ValueError(f"Direction {d} does not have {self.n} entries")
        if self.variant.kind == CANTOR and self.n != 1:
            raise ValueError("The cantor variant requires n = 1")
        if self.variant.direction_count != len(self.directions):
            self.variant = ScheduleVariant(self.variant.kind, len(self.directions))
        if self.targets is None:
            self.targets = TargetFamily(self.n, self.m)

    @property
    def is_cantor(self) -> bool:
        return self.variant.kind == CANTOR

    def header(self) -> Dict[str, Any]:
        """Transcript header: the raw inputs the verifier rebuilds everything from."""
        header = {
            "enumeration": self.targets.identifier,
            "pairing": PAIRING_ID,
            "variant": self.variant.kind,
            "n": self.n,
            "m": self.m,
            "steps": self.steps,
            "r0": format_rational(self.r0),
            "epsilon": self.epsilon.to_dict(),
            "envelope": self.envelope.to_dict(),
            "directions": [[x.to_json() for x in d] for d in self.directions],
            "targets": self.targets.to_json(),
        }
        if self.is_cantor:
            header["cantor"] = {"root_half_width": format_rational(self.root_half_width)}
        return header


@dataclass
class CapEntry:
    """Coefficient cap verdict at one total degree."""

    degree: int
    bound: Any
    cap: Any

    @property
    def ok(self) -> bool:
        return self.bound <= self.cap

    def to_json(self) -> List[Any]:
        return [self.degree, format_rational(self.bound), format_rational(self.cap)]


@dataclass
class WindowRecord:
    """Cantor window (t ± τ) in half-tangent coordinates; angular half-width δ = 2τ."""

    k: int
    t: Any
    tau: Any
    parent: Optional[int]
    derivative_bound: Any
    bounds: List[Any] = field(default_factory=list)

    @property
    def delta(self) -> Any:
        return 2 * self.tau

    @property
    def interval(self) -> Tuple[Any, Any]:
        return self.t - self.tau, self.t + self.tau

    def contains(self, t: Any) -> bool:
        lo, hi = self.interval
        return lo < to_rational(t) < hi

    def to_json(self) -> Dict[str, Any]:
        return {
            "t": format_rational(self.t),
            "tau": format_rational(self.tau),
            "delta": format_rational(self.delta),
            "parent": self.parent,
            "derivative_bound": format_rational(self.derivative_bound),
            "bounds": [format_rational(b) for b in self.bounds],
        }


@dataclass
class StepRecord:
    """One certified step of the construction."""

    k: int
    target_index: int
    direction_index: Optional[int]
    ell: int
    n: int
    center: Direction
    radius_prev: Any
    radius: Any
    target_radius: Any
    epsilon: Any
    pieces: List[Polynomial]
    cond1: List[ModulusBound]
    cond2: List[ModulusBound]
    caps: List[List[CapEntry]]
    window: Optional[WindowRecord] = None

    @property
    def m_lo(self) -> int:
        return self.ell + 1

    @property
    def m_hi(self) -> int:
        return 2 * self.ell + 1

    @property
    def center_norm(self) -> Any:
        # directions are exact unit vectors
        return mpq(self.n)

    @property
    def passed(self) -> bool:
        return (
            all(b.within(self.epsilon) for b in self.cond1)
            and all(b.within(self.epsilon) for b in self.cond2)
            and all(entry.ok for caps in self.caps for entry in caps)
        )

    def to_json(self) -> Dict[str, Any]:
        return {
            "k": self.k,
            "target_index": self.target_index,
            "direction_index": self.direction_index,
            "ell": self.ell,
            "m_lo": self.m_lo,
            "m_hi": self.m_hi,
            "n": str(self.n),
            "center": [x.to_json() for x in self.center],
            "center_norm": format_rational(self.center_norm),
            "radius_prev": format_rational(self.radius_prev),
            "radius": format_rational(self.radius),
            "target_radius": format_rational(self.target_radius),
            "epsilon": format_rational(self.epsilon),
            "pieces": [p.to_json() for p in self.pieces],
            "cond1": [str(b) for b in self.cond1],
            "cond2": [str(b) for b in self.cond2],
            "caps": [[entry.to_json() for entry in caps] for caps in self.caps],
            "window": self.window.to_json() if self.window else None,
        }


@dataclass
class Transcript:
    """A finished run: its configuration, step records and final partial sums."""

    config: ConstructionConfig
    records: List[StepRecord] = field(default_factory=list)
    partials: List[Polynomial] = field(default_factory=list)

    @property
    def windows(self) -> Dict[int, WindowRecord]:
        return {r.k: r.window for r in self.records if r.window is not None}

    @property
    def final_radius(self) -> Any:
        return self.records[-1].radius if self.records else self.config.r0

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def to_json(self) -> Dict[str, Any]:
        return {
            "format": TRANSCRIPT_FORMAT,
            "version": TRANSCRIPT_VERSION,
            "header": self.config.header(),
            "records": [r.to_json() for r in self.records],
        }
