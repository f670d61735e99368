"""
Cantor variant: every step owns a window of directions.

Directions are parametrized by the half-angle tangent t, u(t) = e^{2i·atan t}.
Step k's window (t_k ± τ_k) has children 2k and 2k+1 centred at t_k ∓ τ_k/2,
so the windows form a nested binary tree of disjoint intervals.
"""

from typing import Any, Dict, List, Optional, Sequence, Tuple

from gmpy2 import mpq

from ..errors import WindowCollision
from ..exact.bounds import DEFAULT_BITS, disc_sup_bound, round_down
from ..exact.gaussian import GaussianRational, to_rational, unit_from_half_tangent
from ..schedule.variants import schedule_index
from .constructor import Constructor
from .models import ConstructionConfig, Polynomial, Transcript, WindowRecord

DECAY = mpq(15, 16)


def certified_half_width(
    partials: Sequence[Polynomial],
    center: GaussianRational,
    modulus: Any,
    target_radius: Any,
    epsilon: Any,
    tau_cap: Any,
    bits: int = DEFAULT_BITS,
) -> Tuple[Any, Any]:
    """
    Largest certified τ ≤ tau_cap with B′·2·r·τ ≤ ε.

    B′ bounds |G′| on the disc of radius r̂ + 2·r·tau_cap around the center,
    which contains every recentred target disc of the window.

    Args:
        partials: G_k, one per component
        center: c_k
        modulus: r_k = |c_k|
        target_radius: r̂_k
        epsilon: ε_k
        tau_cap: Upper limit of τ from the tree shape

    Returns:
        (τ_k, B′_k)
    """
    modulus = to_rational(modulus)
    radius = to_rational(target_radius) + 2 * modulus * to_rational(tau_cap)
    derivative_bound = mpq(0)
    for partial in partials:
        derivative = partial.derivative()
        if derivative:
            derivative_bound = max(derivative_bound, disc_sup_bound(derivative, center, radius, bits).value)
    if derivative_bound == 0:
        return to_rational(tau_cap), derivative_bound
    tau = min(to_rational(tau_cap), round_down(to_rational(epsilon) / (2 * modulus * derivative_bound), bits))
    return tau, derivative_bound


class CantorConstructor(Constructor):
    """Constructor whose step directions come from the window tree."""

    def __init__(self, config: ConstructionConfig, bits: int = DEFAULT_BITS):
        super().__init__(config, bits)
        self.windows: Dict[int, WindowRecord] = {}

    def _placement(self, k: int) -> Tuple[Any, Optional[int], Any]:
        """(t_k, parent, τ cap) from the already certified windows."""
        if k == 1:
            return mpq(0), None, self.config.root_half_width
        parent = k // 2
        pw = self.windows[parent]
        offset = pw.tau / 2
        t = pw.t - offset if k % 2 == 0 else pw.t + offset
        return t, parent, min(pw.tau / 4, DECAY * self.windows[k - 1].tau)

    def _check_nesting(self, window: WindowRecord) -> None:
        if window.parent is None:
            return
        parent = self.windows[window.parent]
        lo, hi = window.interval
        p_lo, p_hi = parent.interval
        if not (p_lo < lo and hi < p_hi):
            raise WindowCollision(
                f"Window {window.k} is not inside its parent {window.parent}",
                step=window.k,
                details={"t": window.t, "tau": window.tau, "parent": window.parent},
            )
        sibling = self.windows.get(window.k ^ 1)
        if sibling is not None:
            s_lo, s_hi = sibling.interval
            if not (hi <= s_lo or s_hi <= lo):
                raise WindowCollision(
                    f"Window {window.k} overlaps its sibling {sibling.k}",
                    step=window.k,
                    details={"t": window.t, "sibling_t": sibling.t},
                )

    def run(self) -> Transcript:
        total = self.config.steps
        self.logger.info(f"Starting cantor construction: m={self.config.m}, K={total}")
        for k in range(1, total + 1):
            target_index, _ = schedule_index(k, self.config.variant)
            t, parent, tau_cap = self._placement(k)
            record, check = self.step(k, target_index, None, (unit_from_half_tangent(t),))
            tau, derivative_bound = certified_half_width(
                self.partials,
                check.center[0],
                record.n,
                record.target_radius,
                record.epsilon,
                tau_cap,
                self.bits,
            )
            bounds = [b.value + derivative_bound * 2 * record.n * tau for b in record.cond2]
            window = WindowRecord(k, t, tau, parent, derivative_bound, bounds)
            self._check_nesting(window)
            record.window = window
            self.windows[k] = window
            self.logger.debug(f"Window {k}: t={t}, τ={tau}")
        self.logger.info(f"Cantor construction finished: {len(self.windows)} windows")
        return Transcript(self.config, self.records, list(self.partials))


def cantor_run(config: ConstructionConfig) -> Tuple[Transcript, Dict[int, WindowRecord]]:
    """
    Run the Cantor variant.

    Returns:
        The transcript and its window tree keyed by step
    """
    if not config.is_cantor:
        raise ValueError("cantor_run needs the cantor schedule variant")
    constructor = CantorConstructor(config)
    transcript = constructor.run()
    return transcript, dict(constructor.windows)


def cantor_branch(windows: Dict[int, WindowRecord], t: Any) -> List[int]:
    """Steps along the tree whose windows contain the direction parameter t."""
    t = to_rational(t)
    chain: List[int] = []
    k = 1
    while k in windows and windows[k].contains(t):
        chain.append(k)
        k = next((child for child in (2 * k, 2 * k + 1) if child in windows and windows[child].contains(t)), 0)
    return chain
