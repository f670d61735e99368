"""Per-step error budgets ε_k."""

from dataclasses import dataclass
from typing import Any, Dict

from gmpy2 import mpq

from ..exact.gaussian import format_rational, to_rational


@dataclass(frozen=True)
class EpsilonRule:
    """Geometric rule ε_k = scale·ratio^k; the default is 2^{-k}."""

    scale: Any = 1
    ratio: Any = mpq(1, 2)

    def __post_init__(self):
        scale, ratio = to_rational(self.scale), to_rational(self.ratio)
        if scale <= 0:
            raise ValueError("epsilon scale must be positive")
        if not 0 < ratio < 1:
            raise ValueError("epsilon ratio must lie in (0, 1)")
        object.__setattr__(self, "scale", scale)
        object.__setattr__(self, "ratio", ratio)

    def __call__(self, k: int) -> "mpq":
        return self.scale * self.ratio ** k

    def window_sum(self, first: int, last: int) -> "mpq":
        """Σ_{first ≤ l ≤ last} ε_l (0 for an empty range)."""
        if last < first:
            return mpq(0)
        # geometric series, exact
        return self(first) * (1 - self.ratio ** (last - first + 1)) / (1 - self.ratio)

    def tail(self, first: int) -> "mpq":
        """Σ_{l ≥ first} ε_l."""
        return self(first) / (1 - self.ratio)

    def to_dict(self) -> Dict[str, str]:
        return {"kind": "geometric", "scale": format_rational(self.scale), "ratio": format_rational(self.ratio)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "EpsilonRule":
        kind = data.get("kind", "geometric")
        if kind != "geometric":
            raise ValueError(f"Unknown epsilon rule '{kind}'")
        return cls(data.get("scale", 1), data.get("ratio", "1/2"))
