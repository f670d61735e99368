"""Slowly growing rules ψ and their conversion to growth functions φ."""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Dict, Iterator, Optional, Tuple

from gmpy2 import mpq

from ..exact.gaussian import RationalLike, to_rational

HALF = "half"
FULL = "full"


def floor_log2(value: RationalLike) -> int:
    """⌊log₂ q⌋ for a positive rational q."""
    q = to_rational(value)
    if q <= 0:
        raise ValueError("floor_log2 of a nonpositive rational")
    e = q.numerator.bit_length() - q.denominator.bit_length()
    if mpq(2) ** e > q:
        e -= 1
    return int(e)


class PsiRule(ABC):
    """
    Piecewise-constant nondecreasing ψ on [1, ∞) with integer values.

    Subclasses implement value_at and pieces; ψ is taken as its value at 1 on [0, 1).
    """

    unbounded: bool = False

    @abstractmethod
    def value_at(self, r: RationalLike) -> int:
        """ψ(r) for r ≥ 1."""
        pass

    @abstractmethod
    def pieces(self, start: RationalLike) -> Iterator[Tuple[Any, Optional[Any], int]]:
        """Yield (lo, hi, value) covering [max(start, 1), ∞); hi is None for the last piece."""
        pass

    @abstractmethod
    def to_dict(self) -> Dict[str, Any]:
        pass

    def __call__(self, r: RationalLike) -> int:
        r = to_rational(r)
        return self.value_at(max(r, mpq(1)))


@dataclass(frozen=True)
class ConstantPsi(PsiRule):
    """ψ ≡ value."""

    value: int = 1

    def __post_init__(self):
        if self.value < 1:
            raise ValueError("Constant ψ must be a positive integer")

    def value_at(self, r: RationalLike) -> int:
        return self.value

    def pieces(self, start: RationalLike) -> Iterator[Tuple[Any, Optional[Any], int]]:
        yield max(to_rational(start), mpq(1)), None, self.value

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "constant", "value": self.value}


@dataclass(frozen=True)
class SlowPsi(PsiRule):
    """
    ψ(r) = max(1, ⌊(⌊log₂ r⌋ − 4)/2⌋).

    ψ(r) ≤ k for r ≤ 2^{2k+4}, with equality at r = 2^{2k+4}. The rule is
    unbounded; depth only records the horizon the caller audits.
    """

    depth: int = 6
    unbounded = True

    def value_at(self, r: RationalLike) -> int:
        return max(1, (floor_log2(r) - 4) // 2)

    def pieces(self, start: RationalLike) -> Iterator[Tuple[Any, Optional[Any], int]]:
        lo = max(to_rational(start), mpq(1))
        value = self.value_at(lo)
        while True:
            hi = mpq(2) ** (2 * (value + 1) + 4)
            yield lo, hi, value
            lo, value = hi, value + 1

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "slow", "depth": self.depth}


def slow_psi_schedule(depth: int) -> SlowPsi:
    """The default slow ψ, audited up to r = 2^{2·depth+4}."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    return SlowPsi(depth)


def build_psi(spec: Dict[str, Any]) -> PsiRule:
    kind = spec.get("kind", "slow")
    if kind == "slow":
        return SlowPsi(int(spec.get("depth", 6)))
    if kind == "constant":
        return ConstantPsi(int(spec["value"]))
    raise ValueError(f"Unknown psi rule '{kind}'")


def audit_monotone(psi: PsiRule, grid_exponents: int = 64) -> bool:
    """ψ nondecreasing on the dyadic grid 2^0 … 2^grid_exponents."""
    values = [psi(mpq(2) ** e) for e in range(grid_exponents + 1)]
    return all(a <= b for a, b in zip(values, values[1:]))
