"""Step kernels: solve one step and evaluate candidate centers for it."""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, List, Optional, Sequence

from ..exact.bounds import ModulusBound, translation_error_bound
from ..exact.gaussian import GaussianRational
from ..solvers.residual import ResidualCertificate, residual_check
from ..solvers.system import StepSolution, build_system, solve_step
from ..utils.logger import get_logger
from .centers import CenterConstraints, coefficient_caps, piece_bound
from .frames import Frame, orthogonal_complete
from .models import CapEntry, Direction, Polynomial


def zero_like(poly: Polynomial) -> Polynomial:
    return poly - poly


@dataclass
class ComponentStep:
    """Solved system of one target component; solution is None for bookkeeping steps."""

    partial: Polynomial
    target: Polynomial
    solution: Optional[StepSolution] = None
    residual: Optional[ResidualCertificate] = None

    @property
    def is_bookkeeping(self) -> bool:
        return self.solution is None


@dataclass
class StepCheck:
    """Certificates of an admissible center."""

    n: int
    center: Direction
    pieces: List[Polynomial] = field(default_factory=list)
    caps: List[List[CapEntry]] = field(default_factory=list)
    cond1: List[ModulusBound] = field(default_factory=list)
    cond2: List[ModulusBound] = field(default_factory=list)


class StepKernel(ABC):
    """Base class for the per-dimension step logic."""

    def __init__(self, direction: Sequence[Any], constraints: CenterConstraints):
        self.direction = tuple(GaussianRational.coerce(x) for x in direction)
        self.constraints = constraints
        self.components: List[ComponentStep] = []
        self.logger = get_logger(__name__)

    def prepare(self, partials: Sequence[Polynomial], targets: Sequence[Polynomial]) -> None:
        """
        Solve the step system of every component.

        Args:
            partials: G_{k−1}, one per component
            targets: g_k, one per component
        """
        ell = self.constraints.ell
        self.components = []
        for partial, target in zip(partials, targets):
            if not partial and not target:
                self.components.append(ComponentStep(partial, target))
                continue
            local_partial, local_target = self.to_local(partial), self.to_local(target)
            solution = solve_step(build_system(local_partial, local_target, ell))
            residual = residual_check(local_partial, solution, local_target)
            self.components.append(ComponentStep(partial, target, solution, residual))
        solved = sum(not c.is_bookkeeping for c in self.components)
        self.logger.debug(f"Prepared {solved}/{len(self.components)} component systems at ell={ell}")

    def center_of(self, n: int) -> Direction:
        return tuple(x * n for x in self.direction)

    def _screen_component(self, component: ComponentStep, piece: Polynomial, n: int) -> Optional[tuple]:
        """(caps, cond1) when the cheap certificates of one component hold, else None."""
        c = self.constraints
        caps = coefficient_caps(piece, c)
        if not all(entry.ok for entry in caps):
            return None
        cond1 = piece_bound(piece, c.radius_prev, c.bits)
        if not cond1.within(c.epsilon):
            return None
        if component.residual is not None:
            screen = component.residual.sup_bound(self.parameter_of(n), c.kappa * c.target_radius, c.bits)
            if not screen.within(c.epsilon):
                return None
        return caps, cond1

    def screen(self, n: int) -> bool:
        """Caps, the piece bound and the residual pre-screen; implied by check(n)."""
        return all(
            self._screen_component(component, self.specialize(component, n), n) is not None
            for component in self.components
        )

    def check(self, n: int) -> Optional[StepCheck]:
        """
        Certificates at center n·θ, or None when some inequality fails.

        Failing candidates are rejected on the cheapest certificate first: caps,
        then the piece bound on the previous ball, then the residual pre-screen,
        then the recentred error bound.
        """
        c = self.constraints
        center = self.center_of(n)
        result = StepCheck(n, center)
        for component in self.components:
            piece = self.specialize(component, n)
            cheap = self._screen_component(component, piece, n)
            if cheap is None:
                return None
            caps, cond1 = cheap
            cond2 = translation_error_bound(
                component.partial + piece, component.target, self.shift_of(center), c.target_radius, c.bits
            )
            if not cond2.within(c.epsilon):
                return None
            result.pieces.append(piece)
            result.caps.append(caps)
            result.cond1.append(cond1)
            result.cond2.append(cond2)
        return result

    @abstractmethod
    def parameter_of(self, n: int) -> GaussianRational:
        """Value of the solving parameter c at center n·θ."""
        pass

    @abstractmethod
    def to_local(self, poly: Polynomial) -> Polynomial:
        """Rewrite a z-polynomial in the solving coordinates."""
        pass

    @abstractmethod
    def specialize(self, component: ComponentStep, n: int) -> Polynomial:
        """S_k in z-coordinates for the center n·θ."""
        pass

    @abstractmethod
    def shift_of(self, center: Direction) -> Any:
        """Center in the form the polynomial type's taylor_shift expects."""
        pass


class UnivariateKernel(StepKernel):
    """n = 1: the center is n·u for a unit Gaussian rational u."""

    def parameter_of(self, n: int) -> GaussianRational:
        return self.direction[0] * n

    def to_local(self, poly: Polynomial) -> Polynomial:
        return poly

    def specialize(self, component: ComponentStep, n: int) -> Polynomial:
        if component.is_bookkeeping:
            return zero_like(component.partial)
        return component.solution.specialize(self.parameter_of(n))

    def shift_of(self, center: Direction) -> Any:
        return center[0]


class MultivariateKernel(StepKernel):
    """
    n ≥ 2: solve in coordinates w with w₁ along θ.

    The residual pre-screen works on the κ-inflated w-ball; the recentred
    error bound is then recomputed in z-coordinates.
    """

    def __init__(self, direction: Sequence[Any], constraints: CenterConstraints):
        super().__init__(direction, constraints)
        self.frame: Frame = orthogonal_complete(self.direction, constraints.bits)
        self.constraints.kappa = self.frame.kappa

    def parameter_of(self, n: int) -> GaussianRational:
        return GaussianRational(n)

    def to_local(self, poly: Polynomial) -> Polynomial:
        if self.frame.is_identity:
            return poly
        return poly.compose_linear(self.frame.forward)

    def specialize(self, component: ComponentStep, n: int) -> Polynomial:
        if component.is_bookkeeping:
            return zero_like(component.partial)
        local = component.solution.specialize(n)
        if self.frame.is_identity:
            return local
        return local.compose_linear(self.frame.inverse)

    def shift_of(self, center: Direction) -> Any:
        return list(center)


def make_kernel(direction: Sequence[Any], constraints: CenterConstraints) -> StepKernel:
    """Kernel matching the dimension of the direction."""
    if len(direction) == 1:
        return UnivariateKernel(direction, constraints)
    return MultivariateKernel(direction, constraints)
