"""Exact Gaussian rationals backed by gmpy2."""

from fractions import Fraction
from typing import Any, Dict, Union

import gmpy2
from gmpy2 import mpq, mpz

MPQ = type(mpq(0))
MPZ = type(mpz(0))

RationalLike = Union[int, str, Fraction, "mpq", "mpz"]


def to_rational(value: Any) -> "mpq":
    """
    Convert an exact scalar to an mpq.

    Args:
        value: int, mpz, mpq, Fraction or a "num/den" string

    Returns:
        The value as a reduced mpq

    Raises:
        TypeError: If the value is not an exact rational (floats are rejected)
    """
    if isinstance(value, MPQ):
        return value
    if isinstance(value, (int, MPZ)) and not isinstance(value, bool):
        return mpq(value)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        try:
            return mpq(value.strip())
        except ValueError as e:
            raise ValueError(f"Invalid rational literal: {value!r}") from e
    raise TypeError(f"Expected an exact rational, got {type(value).__name__}")


def format_rational(value: RationalLike) -> str:
    """Render a rational as "num/den" (den >= 1, also for integers)."""
    q = to_rational(value)
    return f"{q.numerator}/{q.denominator}"


def ceil_rational(value: RationalLike) -> "mpz":
    """Smallest integer >= value."""
    q = to_rational(value)
    return -((-q.numerator) // q.denominator)


def floor_rational(value: RationalLike) -> "mpz":
    """Largest integer <= value."""
    q = to_rational(value)
    return q.numerator // q.denominator


class GaussianRational:
    """Complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        self.re = to_rational(re)
        self.im = to_rational(im)

    @classmethod
    def coerce(cls, value: Any) -> "GaussianRational":
        """Wrap an exact scalar as a GaussianRational (identity on instances)."""
        if isinstance(value, GaussianRational):
            return value
        return cls(value)

    @classmethod
    def from_json(cls, data: Any) -> "GaussianRational":
        """
        Parse the serialized form.

        Args:
            data: {"re": "p/q", "im": "p/q"}, a [re, im] pair or a real "p/q" string

        Returns:
            Parsed GaussianRational
        """
        if isinstance(data, dict):
            return cls(data["re"], data.get("im", "0"))
        if isinstance(data, (list, tuple)) and len(data) == 2:
            return cls(data[0], data[1])
        return cls(data)

    def to_json(self) -> Dict[str, str]:
        """Serialize as paired "num/den" fields."""
        return {"re": format_rational(self.re), "im": format_rational(self.im)}

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm2(self) -> "mpq":
        """Squared modulus re² + im², exact."""
        return self.re * self.re + self.im * self.im

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        try:
            other = to_rational(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.im == 0 and self.re == other

    def __hash__(self) -> int:
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __pos__(self) -> "GaussianRational":
        return self

    def __add__(self, other: Any) -> "GaussianRational":
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re + other.re, self.im + other.im)
        try:
            other = to_rational(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + other, self.im)

    __radd__ = __add__

    def __sub__(self, other: Any) -> "GaussianRational":
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re - other.re, self.im - other.im)
        try:
            other = to_rational(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re - other, self.im)

    def __rsub__(self, other: Any) -> "GaussianRational":
        return (-self).__add__(other)

    def __mul__(self, other: Any) -> "GaussianRational":
        if isinstance(other, GaussianRational):
            if other.im == 0:
                return GaussianRational(self.re * other.re, self.im * other.re)
            if self.im == 0:
                return GaussianRational(self.re * other.re, self.re * other.im)
            return GaussianRational(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        try:
            other = to_rational(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re * other, self.im * other)

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        n2 = self.norm2()
        if n2 == 0:
            raise ZeroDivisionError("Inverse of zero Gaussian rational")
        return GaussianRational(self.re / n2, -self.im / n2)

    def __truediv__(self, other: Any) -> "GaussianRational":
        if not isinstance(other, GaussianRational):
            try:
                other = to_rational(other)
            except TypeError:
                return NotImplemented
            if other == 0:
                raise ZeroDivisionError("Division by zero")
            return GaussianRational(self.re / other, self.im / other)
        return self * other.inverse()

    def __rtruediv__(self, other: Any) -> "GaussianRational":
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> "GaussianRational":
        if not isinstance(exponent, (int, MPZ)):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        if self.im == 0:
            return GaussianRational(self.re ** int(exponent))
        result = ONE
        base = self
        e = int(exponent)
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        if self.im == 0:
            return f"GaussianRational({format_rational(self.re)})"
        return f"GaussianRational({format_rational(self.re)}, {format_rational(self.im)})"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def unit_from_half_tangent(t: RationalLike) -> GaussianRational:
    """
    Exact unit Gaussian rational with argument 2·atan(t).

    The map t ↦ ((1 − t²) + 2ti)/(1 + t²) is the rational parametrization of
    the unit circle minus -1; it is increasing in argument on the real line.
    """
    t = to_rational(t)
    den = 1 + t * t
    return GaussianRational((1 - t * t) / den, (2 * t) / den)


def is_perfect_rational_square(value: RationalLike) -> bool:
    """True when a nonnegative rational is the square of a rational."""
    q = to_rational(value)
    return q >= 0 and gmpy2.is_square(q.numerator) and gmpy2.is_square(q.denominator)
