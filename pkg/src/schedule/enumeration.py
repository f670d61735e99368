"""
Height-ordered enumeration of approximation targets.

An item is a vector of m polynomials in n variables over the Gaussian
rationals together with a positive rational radius. Its height is the maximum
of the total degree (the zero polynomial counts as degree 0), the heights
max(|p|, q) of every real and imaginary coefficient part and the height of
the radius.

Items of height ≤ h form a product set: one radius slot followed by one
coefficient slot per (component, monomial of degree ≤ h). Alphabets list the
elements of height ≤ h - 1 first, so the items of exact height h are the full
product minus a restricted sub-product; they are ranked lexicographically with
the last slot varying fastest.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb, gcd
from typing import Any, Dict, List, Sequence, Tuple, Union

from gmpy2 import mpq

from ..exact.gaussian import GaussianRational, format_rational, to_rational
from ..exact.multipoly import MultiPoly
from ..exact.poly import DensePoly

ENUMERATION_ID = "height-lex-v1"
EXPLICIT_ID = "explicit-list-v1"

Polynomial = Union[DensePoly, MultiPoly]


def rational_height(value: Any) -> int:
    q = to_rational(value)
    return int(max(abs(q.numerator), q.denominator))


def gaussian_height(value: GaussianRational) -> int:
    return max(rational_height(value.re), rational_height(value.im))


def poly_degree(poly: Polynomial) -> int:
    """Total degree, with the zero polynomial counted as degree 0."""
    degree = poly.degree if isinstance(poly, DensePoly) else poly.total_degree
    return max(degree, 0)


def _rational_key(q: "mpq") -> Tuple[int, "mpq", bool]:
    return rational_height(q), abs(q), q < 0


def _gaussian_key(g: GaussianRational) -> Tuple[Any, ...]:
    return gaussian_height(g), _rational_key(g.re), _rational_key(g.im)


@lru_cache(maxsize=None)
def rational_alphabet(h: int) -> Tuple["mpq", ...]:
    """Rationals of height ≤ h in enumeration order."""
    values = {mpq(0)} if h >= 1 else set()
    for q in range(1, h + 1):
        for p in range(1, h + 1):
            if gcd(p, q) == 1:
                values.add(mpq(p, q))
                values.add(mpq(-p, q))
    return tuple(sorted(values, key=_rational_key))


@lru_cache(maxsize=None)
def radius_alphabet(h: int) -> Tuple["mpq", ...]:
    return tuple(sorted((q for q in rational_alphabet(h) if q > 0), key=lambda q: (rational_height(q), q)))


@lru_cache(maxsize=None)
def gaussian_alphabet(h: int) -> Tuple[GaussianRational, ...]:
    parts = rational_alphabet(h)
    return tuple(sorted((GaussianRational(re, im) for re in parts for im in parts), key=_gaussian_key))


@lru_cache(maxsize=None)
def _gaussian_index(h: int) -> Dict[GaussianRational, int]:
    return {g: idx for idx, g in enumerate(gaussian_alphabet(h))}


@lru_cache(maxsize=None)
def _radius_index(h: int) -> Dict["mpq", int]:
    return {r: idx for idx, r in enumerate(radius_alphabet(h))}


@lru_cache(maxsize=None)
def monomials(n: int, h: int) -> Tuple[Tuple[int, ...], ...]:
    """Exponent vectors of total degree ≤ h, graded with z₁-heavy first inside a degree."""
    out = []
    for degree in range(h + 1):
        layer = []
        for combo in combinations_with_replacement(range(n), degree):
            exps = [0] * n
            for s in combo:
                exps[s] += 1
            layer.append(tuple(exps))
        out.extend(sorted(set(layer), reverse=True))
    return tuple(out)


def count_up_to_height(h: int, n: int = 1, m: int = 1) -> int:
    """N(h): number of items of height ≤ h."""
    if h <= 0:
        return 0
    slots = m * comb(n + h, n)
    return len(radius_alphabet(h)) * len(gaussian_alphabet(h)) ** slots


@dataclass(frozen=True)
class TargetItem:
    """A target vector of polynomials together with its radius."""

    polys: Tuple[Polynomial, ...]
    radius: Any

    def __post_init__(self):
        radius = to_rational(self.radius)
        if radius <= 0:
            raise ValueError(f"Target radius must be positive, got {radius}")
        object.__setattr__(self, "radius", radius)
        object.__setattr__(self, "polys", tuple(self.polys))
        if not self.polys:
            raise ValueError("Target needs at least one component")

    @property
    def m(self) -> int:
        return len(self.polys)

    @property
    def degree(self) -> int:
        return max(poly_degree(p) for p in self.polys)

    @property
    def is_zero(self) -> bool:
        return all(not p for p in self.polys)

    def height(self) -> int:
        h = max(self.degree, rational_height(self.radius))
        for poly in self.polys:
            for _, coef in poly.iter_terms():
                h = max(h, gaussian_height(coef))
        return h

    def to_json(self) -> Dict[str, Any]:
        return {
            "radius": format_rational(self.radius),
            "components": [p.to_json() for p in self.polys],
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any], n: int) -> "TargetItem":
        if "radius" not in data or "components" not in data:
            raise ValueError("Target entries need 'radius' and 'components'")
        if n == 1:
            polys = [DensePoly.from_json(c) for c in data["components"]]
        else:
            polys = [MultiPoly.from_json(n, c) for c in data["components"]]
        return cls(tuple(polys), data["radius"])


def _slot_sizes(h: int, n: int, m: int) -> Tuple[List[int], List[int]]:
    full_g = len(gaussian_alphabet(h))
    restr_g = len(gaussian_alphabet(h - 1)) if h > 1 else 0
    full = [len(radius_alphabet(h))]
    restricted = [len(radius_alphabet(h - 1)) if h > 1 else 0]
    for _ in range(m):
        for exps in monomials(n, h):
            full.append(full_g)
            restricted.append(restr_g if sum(exps) < h else 1)
    return full, restricted


def _suffix_products(sizes: Sequence[int]) -> List[int]:
    out = [1] * (len(sizes) + 1)
    for p in range(len(sizes) - 1, -1, -1):
        out[p] = out[p + 1] * sizes[p]
    return out


def _height_of_index(i: int, n: int, m: int) -> int:
    h = 1
    while count_up_to_height(h, n, m) < i:
        h += 1
    return h


def enumerate_target(i: int, n: int = 1, m: int = 1) -> TargetItem:
    """
    The i-th target of the height-lex enumeration.

    Args:
        i: Positive index
        n: Number of variables
        m: Number of components

    Returns:
        TargetItem; index 1 is the zero vector with radius 1
    """
    if i < 1:
        raise ValueError(f"enumerate_target expects i >= 1, got {i}")
    h = _height_of_index(i, n, m)
    idx = i - 1 - count_up_to_height(h - 1, n, m)
    full, restricted = _slot_sizes(h, n, m)
    full_rest = _suffix_products(full)
    restr_rest = _suffix_products(restricted)

    choice: List[int] = []
    inside = True
    for p in range(len(full)):
        if inside:
            per_restricted = full_rest[p + 1] - restr_rest[p + 1]
            block = restricted[p] * per_restricted
            if idx < block:
                choice.append(idx // per_restricted)
                idx %= per_restricted
                continue
            idx -= block
            inside = False
            choice.append(restricted[p] + idx // full_rest[p + 1])
        else:
            choice.append(idx // full_rest[p + 1])
        idx %= full_rest[p + 1]

    radius = radius_alphabet(h)[choice[0]]
    alphabet = gaussian_alphabet(h)
    mons = monomials(n, h)
    polys: List[Polynomial] = []
    for j in range(m):
        picks = choice[1 + j * len(mons): 1 + (j + 1) * len(mons)]
        terms = {exps: alphabet[a] for exps, a in zip(mons, picks) if a}
        if n == 1:
            polys.append(DensePoly.from_terms((exps[0], coef) for exps, coef in terms.items()))
        else:
            polys.append(MultiPoly(n, terms))
    return TargetItem(tuple(polys), radius)


def rank_target(item: TargetItem, n: int = 1, m: int = 1) -> int:
    """Inverse of enumerate_target."""
    if item.m != m:
        raise ValueError(f"Target has {item.m} components, expected {m}")
    h = item.height()
    full, restricted = _slot_sizes(h, n, m)
    full_rest = _suffix_products(full)
    restr_rest = _suffix_products(restricted)

    gindex = _gaussian_index(h)
    choice = [_radius_index(h)[item.radius]]
    for poly in item.polys:
        for exps in monomials(n, h):
            coef = poly.coefficient(exps[0] if n == 1 else exps)
            choice.append(gindex[coef] if coef else 0)

    idx = 0
    inside = True
    for p, e in enumerate(choice):
        if inside:
            per_restricted = full_rest[p + 1] - restr_rest[p + 1]
            if e < restricted[p]:
                idx += e * per_restricted
                continue
            idx += restricted[p] * per_restricted + (e - restricted[p]) * full_rest[p + 1]
            inside = False
        else:
            idx += e * full_rest[p + 1]
    return count_up_to_height(h - 1, n, m) + idx + 1


class TargetFamily:
    """Resolves target indices either through the enumeration or an explicit list."""

    def __init__(self, n: int = 1, m: int = 1, explicit: Sequence[TargetItem] = ()):
        self.n = n
        self.m = m
        self.explicit = tuple(explicit)
        for item in self.explicit:
            if item.m != m:
                raise ValueError(f"Explicit target has {item.m} components, expected {m}")

    @property
    def identifier(self) -> str:
        return EXPLICIT_ID if self.explicit else ENUMERATION_ID

    def item(self, index: int) -> TargetItem:
        if self.explicit:
            return self.explicit[(index - 1) % len(self.explicit)]
        return enumerate_target(index, self.n, self.m)

    def to_json(self) -> Any:
        return [t.to_json() for t in self.explicit] if self.explicit else None

    @classmethod
    def from_json(cls, data: Any, n: int, m: int) -> "TargetFamily":
        if not data:
            return cls(n, m)
        return cls(n, m, [TargetItem.from_json(t, n) for t in data])


def zero_target(n: int = 1, m: int = 1, radius: Any = 1) -> TargetItem:
    """The zero vector on the given radius."""
    polys = [DensePoly.zero() if n == 1 else MultiPoly.zero(n) for _ in range(m)]
    return TargetItem(tuple(polys), radius)

