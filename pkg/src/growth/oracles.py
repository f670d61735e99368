"""Built-in growth oracles: e^{ρr}, r^{ψ(r)} (or r^{ψ(r)/2}) and finite series."""

import threading
from math import factorial
from typing import Any, Dict, List, Sequence, Tuple

from gmpy2 import mpq

from ..exact.bounds import DEFAULT_BITS, round_down, round_up, sqrt_lower, sqrt_upper
from ..exact.gaussian import RationalLike, format_rational, to_rational
from .base import GrowthOracle
from .psi import FULL, HALF, PsiRule, build_psi, floor_log2

TAYLOR_TERMS = 24


class ExpOracle(GrowthOracle):
    """φ(r) = e^{rate·r}, bounded by a Taylor sum at r/2^s followed by s squarings."""

    def __init__(self, rate: RationalLike = 1, bits: int = DEFAULT_BITS):
        self.rate = to_rational(rate)
        if self.rate <= 0:
            raise ValueError("ExpOracle rate must be positive")
        self.bits = bits
        self._cache: Dict[Any, Tuple[Any, Any]] = {}
        self._lock = threading.Lock()

    def _bounds(self, r: RationalLike) -> Tuple[Any, Any]:
        x = self.rate * to_rational(r)
        if x < 0:
            raise ValueError("ExpOracle is defined on r >= 0")
        with self._lock:
            if x in self._cache:
                return self._cache[x]
        s = 0 if x <= mpq(1, 2) else floor_log2(x) + 2
        y = x / mpq(2) ** s
        term = mpq(1)
        total = mpq(1)
        for i in range(1, TAYLOR_TERMS + 1):
            term = term * y / i
            total += term
        remainder = 2 * y ** (TAYLOR_TERMS + 1) / factorial(TAYLOR_TERMS + 1)
        lo = round_down(total, self.bits + 16)
        hi = round_up(total + remainder, self.bits + 16)
        for _ in range(s):
            lo = round_down(lo * lo, self.bits + 16)
            hi = round_up(hi * hi, self.bits + 16)
        with self._lock:
            self._cache[x] = (lo, hi)
        return lo, hi

    def lower_at(self, r: RationalLike) -> Any:
        return self._bounds(r)[0]

    def upper_at(self, r: RationalLike) -> Any:
        return self._bounds(r)[1]

    def tail_quotient_lower(self, a: RationalLike, power: int) -> Any:
        a = to_rational(a)
        if power == 0:
            return self.lower_at(max(a, mpq(0)))
        turning = mpq(power) / self.rate
        point = a if a >= turning else turning
        return round_down(self.lower_at(point) / point ** power, self.bits)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "exp", "rate": format_rational(self.rate)}


class PsiPowerOracle(GrowthOracle):
    """φ ≡ 1 on [0, 1), φ(r) = r^{ψ(r)} (full) or r^{ψ(r)/2} (half) on [1, ∞)."""

    MAX_PIECES = 4096

    def __init__(self, psi: PsiRule, mode: str = HALF, bits: int = DEFAULT_BITS):
        if mode not in (HALF, FULL):
            raise ValueError(f"Unknown psi_power mode '{mode}'")
        self.psi = psi
        self.mode = mode
        self.bits = bits

    def _power(self, r: Any, value: int) -> Tuple[Any, Any]:
        if self.mode == FULL:
            exact = r ** value
            return exact, exact
        if value % 2 == 0:
            exact = r ** (value // 2)
            return exact, exact
        square = r ** value
        return sqrt_lower(square, self.bits), sqrt_upper(square, self.bits)

    def _bounds(self, r: RationalLike) -> Tuple[Any, Any]:
        r = to_rational(r)
        if r < 1:
            return mpq(1), mpq(1)
        return self._power(r, self.psi(r))

    def lower_at(self, r: RationalLike) -> Any:
        return self._bounds(r)[0]

    def upper_at(self, r: RationalLike) -> Any:
        return self._bounds(r)[1]

    def tail_quotient_lower(self, a: RationalLike, power: int) -> Any:
        a = to_rational(a)
        best = None
        if a < 1:
            # φ/r^p ≥ 1 on (0, 1)
            best = mpq(1)
        weight = 1 if self.mode == FULL else mpq(1, 2)
        for count, (lo, hi, value) in enumerate(self.psi.pieces(max(a, mpq(1)))):
            if count >= self.MAX_PIECES:
                return mpq(0)
            if value * weight >= power:
                candidate = self._power(lo, value)[0] / lo ** power
                best = candidate if best is None else min(best, candidate)
                return round_down(best, self.bits)
            if hi is None:
                return mpq(0)
            candidate = self._power(hi, value)[0] / hi ** power
            best = candidate if best is None else min(best, candidate)
        return mpq(0)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "psi_power", "psi": self.psi.to_dict(), "mode": self.mode}


class SeriesOracle(GrowthOracle):
    """φ(r) = Σ_i A_i r^i over a finite list of positive rationals."""

    def __init__(self, coefficients: Sequence[RationalLike]):
        self.coefficients: List[Any] = [to_rational(a) for a in coefficients]
        if not self.coefficients or any(a <= 0 for a in self.coefficients):
            raise ValueError("SeriesOracle needs a nonempty list of positive coefficients")

    def lower_at(self, r: RationalLike) -> Any:
        r = to_rational(r)
        acc = mpq(0)
        for a in reversed(self.coefficients):
            acc = acc * r + a
        return acc

    upper_at = lower_at

    def tail_quotient_lower(self, a: RationalLike, power: int) -> Any:
        a = to_rational(a)
        return sum((c * a ** (i - power) for i, c in enumerate(self.coefficients) if i >= power), mpq(0))

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "series", "coefficients": [format_rational(a) for a in self.coefficients]}


def psi_to_phi(psi: PsiRule, mode: str = HALF) -> PsiPowerOracle:
    """
    φ ≡ 1 on [0, 1) and φ(r) = r^{ψ(r)/2} (half) or r^{ψ(r)} (full) beyond.

    Returns:
        Oracle with certified rational bounds at rational r
    """
    return PsiPowerOracle(psi, mode)


def build_oracle(spec: Dict[str, Any]) -> GrowthOracle:
    """Instantiate an oracle from its serialized description."""
    kind = spec.get("kind")
    if kind == "exp":
        return ExpOracle(spec.get("rate", 1))
    if kind == "psi_power":
        return PsiPowerOracle(build_psi(spec.get("psi", {})), spec.get("mode", HALF))
    if kind == "series":
        return SeriesOracle(spec["coefficients"])
    raise ValueError(f"Unknown growth oracle '{kind}'")
