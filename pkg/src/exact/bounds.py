"""Outward-rounded modulus bounds and disc supremum certificates.

Every bound here is a pure rational inequality: square roots are replaced by
integer square roots of scaled numerators, rounded away from the true value.
"""

from dataclasses import dataclass
from typing import Any, Iterable, Tuple

import gmpy2
from gmpy2 import mpq, mpz

from .gaussian import GaussianRational, RationalLike, format_rational, to_rational

DEFAULT_BITS = 64


@dataclass(frozen=True)
class ModulusBound:
    """Nonnegative rational B certified to dominate some modulus."""

    value: Any

    def __post_init__(self):
        value = to_rational(self.value)
        if value < 0:
            raise ValueError(f"ModulusBound must be nonnegative, got {value}")
        object.__setattr__(self, "value", value)

    def within(self, limit: RationalLike) -> bool:
        """True when B ≤ limit."""
        return self.value <= to_rational(limit)

    def __add__(self, other: "ModulusBound") -> "ModulusBound":
        return ModulusBound(self.value + other.value)

    def __float__(self) -> float:
        return float(self.value)

    def __str__(self) -> str:
        return format_rational(self.value)


def round_up(value: RationalLike, bits: int = DEFAULT_BITS) -> "mpq":
    """
    Dyadic rational ≥ value with about `bits` significant bits.

    Args:
        value: Rational to round
        bits: Number of significant bits kept

    Returns:
        Smallest dyadic at that precision that is ≥ value
    """
    q = to_rational(value)
    if q == 0:
        return q
    if q < 0:
        return -round_down(-q, bits)
    num, den = q.numerator, q.denominator
    shift = bits - (num.bit_length() - den.bit_length())
    if shift <= 0:
        unit = mpz(1) << (-shift)
        return mpq(-((-num) // (den * unit)) * unit)
    return mpq(-((-(num << shift)) // den), mpz(1) << shift)


def round_down(value: RationalLike, bits: int = DEFAULT_BITS) -> "mpq":
    """Dyadic rational ≤ value with about `bits` significant bits."""
    q = to_rational(value)
    if q == 0:
        return q
    if q < 0:
        return -round_up(-q, bits)
    num, den = q.numerator, q.denominator
    shift = bits - (num.bit_length() - den.bit_length())
    if shift <= 0:
        unit = mpz(1) << (-shift)
        return mpq((num // (den * unit)) * unit)
    return mpq((num << shift) // den, mpz(1) << shift)


def _sqrt_parts(square: "mpq", bits: int) -> Tuple[Any, Any, bool]:
    """Return (t, scale, exact) with t/scale ≈ sqrt(square) from below."""
    p, q = square.numerator, square.denominator
    if gmpy2.is_square(p) and gmpy2.is_square(q):
        return gmpy2.isqrt(p), gmpy2.isqrt(q), True
    s = p * q
    shift = max(0, bits + 1 - s.bit_length() // 2)
    t = gmpy2.isqrt(s << (2 * shift))
    return t, q << shift, False


def sqrt_upper(square: RationalLike, bits: int = DEFAULT_BITS) -> "mpq":
    """Rational M ≥ sqrt(square) with relative error ≤ 2^{-bits}."""
    square = to_rational(square)
    if square < 0:
        raise ValueError("sqrt_upper of a negative rational")
    if square == 0:
        return mpq(0)
    t, scale, exact = _sqrt_parts(square, bits)
    value = mpq(t, scale) if exact else mpq(t + 1, scale)
    assert value * value >= square
    return value


def sqrt_lower(square: RationalLike, bits: int = DEFAULT_BITS) -> "mpq":
    """Rational m ≤ sqrt(square) with relative error ≤ 2^{-bits}."""
    square = to_rational(square)
    if square < 0:
        raise ValueError("sqrt_lower of a negative rational")
    if square == 0:
        return mpq(0)
    t, scale, _ = _sqrt_parts(square, bits)
    value = mpq(t, scale)
    assert value * value <= square
    return value


def modulus_upper(a: Any, bits: int = DEFAULT_BITS) -> ModulusBound:
    """
    Certified upper bound of |a| for a Gaussian rational.

    Args:
        a: GaussianRational (or exact real scalar)
        bits: Precision of the outward-rounded square root

    Returns:
        ModulusBound M with M² ≥ re² + im² and M ≤ |a|·(1 + 2^{1−bits})
    """
    if bits < 1:
        raise ValueError("bits must be at least 1")
    return ModulusBound(sqrt_upper(GaussianRational.coerce(a).norm2(), bits))


def modulus_lower(a: Any, bits: int = DEFAULT_BITS) -> "mpq":
    """Certified lower bound of |a| (exact when |a| is rational)."""
    return sqrt_lower(GaussianRational.coerce(a).norm2(), bits)


def coefficient_sum_bound(
    terms: Iterable[Tuple[int, GaussianRational]],
    radius: RationalLike,
    bits: int = DEFAULT_BITS,
) -> ModulusBound:
    """
    Σ modulus_upper(coef)·radius^degree over (degree, coef) pairs.

    Each term is rounded up to a dyadic so sums of long certificates stay short.
    """
    radius = to_rational(radius)
    total = mpq(0)
    powers = {}
    for degree, coef in terms:
        if not coef:
            continue
        if degree not in powers:
            powers[degree] = radius ** degree
        total += round_up(modulus_upper(coef, bits).value * powers[degree], bits)
    return ModulusBound(total)


def disc_sup_bound(poly: Any, center: Any, radius: RationalLike, bits: int = DEFAULT_BITS) -> ModulusBound:
    """
    Upper bound of |poly| on the closed disc (or ball) around center.

    Args:
        poly: DensePoly or MultiPoly
        center: GaussianRational for DensePoly, sequence of them for MultiPoly
        radius: Positive rational radius
        bits: Rounding precision

    Returns:
        Σ_I modulus_upper(shifted coefficient)·radius^{|I|} after Taylor shift to center
    """
    radius = to_rational(radius)
    if radius <= 0:
        raise ValueError(f"radius must be positive, got {radius}")
    shifted = poly.taylor_shift(center)
    return coefficient_sum_bound(shifted.iter_terms(), radius, bits)


def translation_error_bound(
    poly: Any,
    target: Any,
    center: Any,
    radius: RationalLike,
    bits: int = DEFAULT_BITS,
) -> ModulusBound:
    """
    Upper bound of sup_{‖z‖ ≤ radius} |poly(center + z) − target(z)|.

    Args:
        poly: DensePoly or MultiPoly
        target: Polynomial of the same kind
        center: GaussianRational, or a sequence of them for MultiPoly
        radius: Positive rational radius
        bits: Rounding precision

    Returns:
        Coefficient-sum bound of the recentred difference
    """
    radius = to_rational(radius)
    if radius <= 0:
        raise ValueError(f"radius must be positive, got {radius}")
    difference = poly.taylor_shift(center) - target
    return coefficient_sum_bound(difference.iter_terms(), radius, bits)
