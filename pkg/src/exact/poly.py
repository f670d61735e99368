"""Dense univariate polynomials over the Gaussian rationals."""

from typing import Any, Iterable, Iterator, List, Sequence, Tuple

from .gaussian import ZERO, GaussianRational


class DensePoly:
    """
    Univariate polynomial stored as a coefficient tuple indexed by degree.

    The tuple never ends in a zero coefficient; the zero polynomial is the
    empty tuple and has degree -1.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[Any] = ()):
        cs = [GaussianRational.coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self._coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> "DensePoly":
        return cls(())

    @classmethod
    def constant(cls, value: Any) -> "DensePoly":
        return cls((value,))

    @classmethod
    def monomial(cls, degree: int, coef: Any = 1) -> "DensePoly":
        return cls([ZERO] * degree + [GaussianRational.coerce(coef)])

    @classmethod
    def from_terms(cls, terms: Iterable[Tuple[int, Any]]) -> "DensePoly":
        """Build from (degree, coefficient) pairs; repeated degrees add up."""
        acc = {}
        for degree, coef in terms:
            acc[degree] = acc.get(degree, ZERO) + GaussianRational.coerce(coef)
        if not acc:
            return cls.zero()
        cs = [ZERO] * (max(acc) + 1)
        for degree, coef in acc.items():
            cs[degree] = coef
        return cls(cs)

    @property
    def coeffs(self) -> Tuple[GaussianRational, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def coefficient(self, degree: int) -> GaussianRational:
        if 0 <= degree < len(self._coeffs):
            return self._coeffs[degree]
        return ZERO

    def iter_terms(self) -> Iterator[Tuple[int, GaussianRational]]:
        """Nonzero (degree, coefficient) pairs in increasing degree."""
        for degree, coef in enumerate(self._coeffs):
            if coef:
                yield degree, coef

    def lowest_degree(self) -> int:
        """Order of vanishing at 0 (-1 for the zero polynomial)."""
        for degree, coef in enumerate(self._coeffs):
            if coef:
                return degree
        return -1

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, DensePoly):
            return self._coeffs == other._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __neg__(self) -> "DensePoly":
        return DensePoly(-c for c in self._coeffs)

    def __add__(self, other: Any) -> "DensePoly":
        if not isinstance(other, DensePoly):
            try:
                other = DensePoly.constant(other)
            except TypeError:
                return NotImplemented
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        return DensePoly([x + b[i] if i < len(b) else x for i, x in enumerate(a)])

    __radd__ = __add__

    def __sub__(self, other: Any) -> "DensePoly":
        if not isinstance(other, DensePoly):
            try:
                other = DensePoly.constant(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> "DensePoly":
        return (-self) + other

    def scale(self, factor: Any) -> "DensePoly":
        factor = GaussianRational.coerce(factor)
        if not factor:
            return DensePoly.zero()
        return DensePoly(c * factor for c in self._coeffs)

    def __mul__(self, other: Any) -> "DensePoly":
        if isinstance(other, DensePoly):
            if not self._coeffs or not other._coeffs:
                return DensePoly.zero()
            out: List[GaussianRational] = [ZERO] * (len(self._coeffs) + len(other._coeffs) - 1)
            for i, x in enumerate(self._coeffs):
                if not x:
                    continue
                for j, y in enumerate(other._coeffs):
                    if y:
                        out[i + j] = out[i + j] + x * y
            return DensePoly(out)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "DensePoly":
        result = DensePoly.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def evaluate(self, z: Any) -> GaussianRational:
        """Horner evaluation at an exact point."""
        z = GaussianRational.coerce(z)
        acc = ZERO
        for coef in reversed(self._coeffs):
            acc = acc * z + coef
        return acc

    __call__ = evaluate

    def derivative(self) -> "DensePoly":
        return DensePoly(c * j for j, c in enumerate(self._coeffs) if j > 0)

    def shift_degrees(self, offset: int) -> "DensePoly":
        """Multiply by z^offset (offset ≥ 0) or drop the lowest -offset coefficients."""
        if offset >= 0:
            return DensePoly([ZERO] * offset + list(self._coeffs))
        return DensePoly(self._coeffs[-offset:])

    def taylor_shift(self, center: Any) -> "DensePoly":
        """
        Recenter: return q with q(z) = p(z + center).

        Uses the O(d²) repeated synthetic division scheme.
        """
        c = GaussianRational.coerce(center)
        if not c or len(self._coeffs) < 2:
            return self
        a = list(self._coeffs)
        d = len(a) - 1
        for i in range(d):
            for j in range(d - 1, i - 1, -1):
                a[j] = a[j] + c * a[j + 1]
        return DensePoly(a)

    def to_json(self) -> List[List[Any]]:
        """Sparse serialization: [[degree, {"re", "im"}], ...]."""
        return [[degree, coef.to_json()] for degree, coef in self.iter_terms()]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[Any]]) -> "DensePoly":
        return cls.from_terms((int(degree), GaussianRational.from_json(coef)) for degree, coef in data)

    def __repr__(self) -> str:
        if not self._coeffs:
            return "DensePoly(0)"
        parts = [f"({c!r})·z^{j}" for j, c in self.iter_terms()]
        return "DensePoly(" + " + ".join(parts) + ")"
