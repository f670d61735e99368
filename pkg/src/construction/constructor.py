"""The step state machine: S_k pieces appended one certified step at a time."""

from typing import List, Optional, Tuple

from gmpy2 import mpq

from ..errors import SlowgrowthError
from ..exact.gaussian import ceil_rational
from ..exact.multipoly import MultiPoly
from ..exact.poly import DensePoly
from ..schedule.enumeration import TargetItem
from ..schedule.variants import schedule_index
from ..utils.logger import get_logger
from .centers import CenterConstraints, search_center
from .kernels import StepCheck, make_kernel
from .models import ConstructionConfig, Direction, Polynomial, StepRecord, Transcript


class Constructor:
    """Runs the construction for one configuration."""

    def __init__(self, config: ConstructionConfig, bits: int = 64):
        """
        Initialize the state S₀ = 0, R₀, M₀ = 0.

        Args:
            config: Validated construction configuration
            bits: Rounding precision of every certificate
        """
        self.config = config
        self.bits = bits
        self.logger = get_logger(__name__)
        self.partials: List[Polynomial] = [
            DensePoly.zero() if config.n == 1 else MultiPoly.zero(config.n) for _ in range(config.m)
        ]
        self.degree_hi = 0
        self.radius = config.r0
        self.records: List[StepRecord] = []

    def run(self) -> Transcript:
        """
        Run all configured steps.

        Returns:
            Transcript with one record per step and the final partial sums
        """
        total = self.config.steps
        self.logger.info(f"Starting construction: n={self.config.n}, m={self.config.m}, K={total}")
        for k in range(1, total + 1):
            target_index, direction_index = schedule_index(k, self.config.variant)
            direction = self.config.directions[direction_index - 1]
            self.step(k, target_index, direction_index, direction)
        self.logger.info(f"Construction finished: R_K has {self.radius.numerator.bit_length()} bits")
        return Transcript(self.config, self.records, list(self.partials))

    def step(
        self,
        k: int,
        target_index: int,
        direction_index: Optional[int],
        direction: Direction,
    ) -> Tuple[StepRecord, StepCheck]:
        """
        Certify one step and append it to the state.

        Args:
            k: Step number
            target_index: Index into the target family
            direction_index: Configured direction index (None for window directions)
            direction: Exact unit direction of the center

        Returns:
            The stored record and the certificates it was built from

        Raises:
            EnvelopeExhausted: If no admissible center fits in max_center_bits
        """
        total = self.config.steps
        target: TargetItem = self.config.targets.item(target_index)
        ell = max(self.degree_hi, target.degree)
        epsilon = self.config.epsilon(k)
        constraints = CenterConstraints(
            epsilon=epsilon,
            radius_prev=self.radius,
            target_radius=target.radius,
            envelope=self.config.envelope,
            ell=ell,
            bits=self.bits,
            max_center_bits=self.config.max_center_bits,
            step=k,
        )
        self.logger.info(f"Step {k}/{total}: target {target_index}, ell={ell}, ε={epsilon}")
        try:
            kernel = make_kernel(direction, constraints)
            kernel.prepare(self.partials, target.polys)
            n, check = search_center(
                kernel.check, constraints.start, constraints.max_center_bits, k, screen=kernel.screen
            )
        except SlowgrowthError as e:
            if e.step is None:
                e.step = k
            self.logger.error(f"✗ Step {k}/{total} failed: {e}")
            raise

        radius = mpq(ceil_rational(n + target.radius) + 1)
        record = StepRecord(
            k=k,
            target_index=target_index,
            direction_index=direction_index,
            ell=ell,
            n=n,
            center=check.center,
            radius_prev=self.radius,
            radius=radius,
            target_radius=target.radius,
            epsilon=epsilon,
            pieces=check.pieces,
            cond1=check.cond1,
            cond2=check.cond2,
            caps=check.caps,
        )
        self.partials = [p + s for p, s in zip(self.partials, check.pieces)]
        self.degree_hi = record.m_hi
        self.radius = radius
        self.records.append(record)
        self.logger.info(f"✓ Step {k}/{total}: n_k has {n.bit_length()} bits")
        return record, check


def run(config: ConstructionConfig) -> Transcript:
    """Run the standard (one- or several-variable) construction."""
    if config.is_cantor:
        from .cantor import cantor_run

        transcript, _ = cantor_run(config)
        return transcript
    return Constructor(config).run()
