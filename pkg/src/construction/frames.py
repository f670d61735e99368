"""Exact orthogonal completion of a unit direction."""

from dataclasses import dataclass
from typing import Any, List, Sequence

from gmpy2 import mpq

from ..exact.bounds import DEFAULT_BITS, round_up, sqrt_lower, sqrt_upper
from ..exact.gaussian import ONE, ZERO, GaussianRational, is_perfect_rational_square
from .models import Direction, check_unit


def inner(a: Sequence[GaussianRational], b: Sequence[GaussianRational]) -> GaussianRational:
    """⟨a, b⟩ = Σ a_s·conj(b_s)."""
    acc = ZERO
    for x, y in zip(a, b):
        acc = acc + x * y.conjugate()
    return acc


def norm2(v: Sequence[GaussianRational]) -> Any:
    return sum((x.norm2() for x in v), mpq(0))


@dataclass(frozen=True)
class Frame:
    """
    Orthogonal basis v_1 = θ, v_2, …, v_n with z = Σ_l w_l·v_l.

    forward[s][l] = v_{l,s} substitutes z in terms of w; inverse[l][s] =
    conj(v_{l,s})/|v_l|² substitutes w in terms of z. kappa bounds both
    operator norms.
    """

    vectors: List[Direction]
    forward: List[List[GaussianRational]]
    inverse: List[List[GaussianRational]]
    kappa: Any

    @property
    def is_identity(self) -> bool:
        n = len(self.vectors)
        return all(self.forward[s][l] == (ONE if s == l else ZERO) for s in range(n) for l in range(n))


def _normalize(v: List[GaussianRational]) -> List[GaussianRational]:
    n2 = norm2(v)
    if n2 != 1 and is_perfect_rational_square(n2):
        root = sqrt_lower(n2)
        return [x / root for x in v]
    return v


def orthogonal_complete(theta: Sequence[Any], bits: int = DEFAULT_BITS) -> Frame:
    """
    Complete a unit vector to an orthogonal basis over the Gaussian rationals.

    Args:
        theta: Exact unit vector
        bits: Precision of the distortion bound

    Returns:
        Frame whose first vector is θ; columns are pairwise orthogonal and
        normalized whenever the squared norm is a rational square

    Raises:
        NonUnitDirection: If Σ|θ_s|² ≠ 1
    """
    theta = list(check_unit(theta))
    n = len(theta)
    vectors: List[List[GaussianRational]] = [theta]
    if n == 2:
        vectors.append([-theta[1].conjugate(), theta[0].conjugate()])
    else:
        for s in range(n):
            if len(vectors) == n:
                break
            u = [ONE if t == s else ZERO for t in range(n)]
            for v in vectors:
                coef = inner(u, v) / norm2(v)
                u = [x - coef * y for x, y in zip(u, v)]
            if any(u):
                vectors.append(_normalize(u))

    forward = [[vectors[l][s] for l in range(n)] for s in range(n)]
    inverse = [[vectors[l][s].conjugate() / norm2(vectors[l]) for s in range(n)] for l in range(n)]
    kappa = mpq(1)
    for v in vectors:
        n2 = norm2(v)
        kappa = max(kappa, round_up(sqrt_upper(n2, bits), bits), round_up(1 / sqrt_lower(n2, bits), bits))
    return Frame([tuple(v) for v in vectors], forward, inverse, kappa)
