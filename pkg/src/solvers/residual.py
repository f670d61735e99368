"""Symbolic residual check: every coefficient of G_k(c + z) − g(z) must decay in c."""

from dataclasses import dataclass, field
from math import comb
from typing import Dict, Tuple

from gmpy2 import mpq

from ..errors import MagicViolation
from ..exact.bounds import DEFAULT_BITS, ModulusBound, modulus_upper, round_up
from ..exact.gaussian import ZERO, GaussianRational, RationalLike, to_rational
from ..exact.laurent import LaurentPoly, ParamLaurent
from ..exact.multipoly import MultiPoly
from .system import Polynomial, StepSolution, split_terms

Key = Tuple[int, ...]


@dataclass
class ResidualCertificate:
    """Principal parts of the residual, keyed by (power of z or w₁, *J)."""

    entries: Dict[Key, ParamLaurent] = field(default_factory=dict)
    max_constant: int = 0

    def specialize(self, c) -> Dict[Key, GaussianRational]:
        return {key: lp.specialize(c) for key, lp in self.entries.items()}

    def sup_bound(self, c, radius: RationalLike, bits: int = DEFAULT_BITS) -> ModulusBound:
        """Σ_key |residual_key(c)|·radius^{degree} after exact specialization."""
        radius = to_rational(radius)
        total = mpq(0)
        for key, value in self.specialize(c).items():
            if value:
                total += round_up(modulus_upper(value, bits).value * radius ** sum(key), bits)
        return ModulusBound(total)

    def decay_bound(self, c_modulus_lower: RationalLike, radius: RationalLike,
                    bits: int = DEFAULT_BITS) -> ModulusBound:
        """Bound valid for every |c| ≥ c_modulus_lower; nonincreasing in it."""
        radius = to_rational(radius)
        total = mpq(0)
        for key, lp in self.entries.items():
            total += round_up(lp.decay_bound(c_modulus_lower, 1, bits).value * radius ** sum(key), bits)
        return ModulusBound(total)


def residual_check(partial: Polynomial, solution: StepSolution, target: Polynomial) -> ResidualCertificate:
    """
    Expand G_k(c + z) − g(z) with c symbolic and verify its shape.

    Args:
        partial: G_{k−1} in the solving coordinates
        solution: Solved step
        target: g_k in the same coordinates

    Returns:
        ResidualCertificate holding the principal part of every coefficient

    Raises:
        MagicViolation: If any coefficient keeps a nonnegative power of c
    """
    acc: Dict[Key, Dict[int, GaussianRational]] = {}

    def add(key: Key, exponent: int, value: GaussianRational) -> None:
        row = acc.setdefault(key, {})
        row[exponent] = row.get(exponent, ZERO) + value

    for e1, rest, coef in split_terms(partial):
        for i in range(e1 + 1):
            add((i,) + rest, e1 - i, coef * comb(e1, i))
    for e1, rest, coef in split_terms(target):
        add((e1,) + rest, 0, -coef)
    for j, lp in solution.a.items():
        for p, value in lp:
            parts = value.sorted_items() if isinstance(value, MultiPoly) else [((), value)]
            for rest, coef in parts:
                for i in range(j + 1):
                    add((i,) + rest, j - i - p, coef * comb(j, i))

    entries: Dict[Key, ParamLaurent] = {}
    for key in sorted(acc):
        laurent = LaurentPoly(acc[key])
        regular = laurent.regular_part()
        if regular:
            exponent = max(regular)
            raise MagicViolation(
                f"Residual coefficient {list(key)} keeps c^{exponent}",
                details={"key": list(key), "exponent": exponent, "value": regular[exponent]},
            )
        principal = laurent.principal_part()
        if principal:
            entries[key] = principal
    return ResidualCertificate(entries)
