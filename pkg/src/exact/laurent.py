"""Laurent polynomials in the center parameter c."""

from typing import Any, Dict, Iterator, Mapping, Optional, Sequence, Tuple, Union

from gmpy2 import mpq

from .bounds import DEFAULT_BITS, ModulusBound, coefficient_sum_bound, modulus_lower, modulus_upper, round_up
from .gaussian import ZERO, GaussianRational, RationalLike, to_rational
from .multipoly import MultiPoly
from .poly import DensePoly

Coefficient = Union[GaussianRational, DensePoly, MultiPoly]


def _is_zero(value: Any) -> bool:
    return not value


def _coerce(value: Any) -> Coefficient:
    if isinstance(value, (DensePoly, MultiPoly)):
        return value
    return GaussianRational.coerce(value)


def _evaluate(value: Coefficient, assignment: Optional[Sequence[Any]]) -> GaussianRational:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, DensePoly):
        if assignment is None or len(assignment) != 1:
            raise ValueError("DensePoly coefficient needs a one-point assignment")
        return value.evaluate(assignment[0])
    if value.nvars == 0:
        return value.coefficient(())
    if assignment is None:
        raise ValueError("MultiPoly coefficient needs an assignment")
    return value.evaluate(assignment)


def _sup_bound(value: Coefficient, radius: RationalLike, bits: int) -> "mpq":
    if isinstance(value, GaussianRational):
        return modulus_upper(value, bits).value
    return coefficient_sum_bound(value.iter_terms(), radius, bits).value


class ParamLaurent:
    """
    Σ_p v_p·c^{-p} with pole orders p ≥ 1.

    Coefficients are Gaussian rationals or polynomials in the remaining
    variables. Zero coefficients are dropped.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[int, Any]] = None):
        clean: Dict[int, Coefficient] = {}
        for p, value in (terms or {}).items():
            p = int(p)
            if p < 1:
                raise ValueError(f"Pole order must be at least 1, got {p}")
            value = _coerce(value)
            if not _is_zero(value):
                clean[p] = value
        self._terms = clean

    @property
    def terms(self) -> Dict[int, Coefficient]:
        return dict(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, ParamLaurent):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __iter__(self) -> Iterator[Tuple[int, Coefficient]]:
        for p in sorted(self._terms):
            yield p, self._terms[p]

    @property
    def min_pole(self) -> int:
        return min(self._terms, default=0)

    @property
    def max_pole(self) -> int:
        return max(self._terms, default=0)

    def __add__(self, other: "ParamLaurent") -> "ParamLaurent":
        out = dict(self._terms)
        for p, v in other._terms.items():
            out[p] = out[p] + v if p in out else v
        return ParamLaurent(out)

    def __neg__(self) -> "ParamLaurent":
        return ParamLaurent({p: -v for p, v in self._terms.items()})

    def __sub__(self, other: "ParamLaurent") -> "ParamLaurent":
        return self + (-other)

    def scale(self, factor: Any) -> "ParamLaurent":
        factor = GaussianRational.coerce(factor)
        return ParamLaurent({p: v * factor for p, v in self._terms.items()})

    def specialize(self, c: Any, assignment: Optional[Sequence[Any]] = None) -> GaussianRational:
        """
        Exact value at a nonzero center.

        Args:
            c: Nonzero Gaussian rational substituted for the parameter
            assignment: Values of the remaining variables for polynomial coefficients

        Returns:
            Σ_p v_p(assignment)·c^{-p}, by Horner in 1/c
        """
        c = GaussianRational.coerce(c)
        if not c:
            raise ZeroDivisionError("ParamLaurent.specialize at c = 0")
        if not self._terms:
            return ZERO
        inv = c.inverse()
        acc = ZERO
        for p in range(self.max_pole, 0, -1):
            value = self._terms.get(p)
            if value is not None:
                acc = acc + _evaluate(value, assignment)
            acc = acc * inv
        return acc

    def decay_bound(self, c_modulus_lower: RationalLike, radius: RationalLike = 1,
                    bits: int = DEFAULT_BITS) -> ModulusBound:
        """
        Upper bound of |Σ v_p c^{-p}| for every |c| ≥ c_modulus_lower.

        Polynomial coefficients are bounded on the polydisc of the given radius.
        """
        lower = to_rational(c_modulus_lower)
        if lower <= 0:
            raise ValueError("decay_bound needs a positive lower bound on |c|")
        total = mpq(0)
        for p, value in self._terms.items():
            total += round_up(_sup_bound(value, radius, bits) / lower ** p, bits)
        return ModulusBound(total)

    def decay_bound_at(self, c: Any, radius: RationalLike = 1, bits: int = DEFAULT_BITS) -> ModulusBound:
        """decay_bound with |c| bounded below by modulus_lower(c)."""
        return self.decay_bound(modulus_lower(c, bits), radius, bits)

    def __repr__(self) -> str:
        if not self._terms:
            return "ParamLaurent(0)"
        return "ParamLaurent(" + " + ".join(f"({v!r})·c^-{p}" for p, v in self) + ")"


class LaurentPoly:
    """Laurent polynomial in c with arbitrary integer exponents."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[int, Any]] = None):
        clean: Dict[int, Coefficient] = {}
        for e, value in (terms or {}).items():
            value = _coerce(value)
            if not _is_zero(value):
                clean[int(e)] = value
        self._terms = clean

    @classmethod
    def from_dense(cls, poly: DensePoly, offset: int = 0) -> "LaurentPoly":
        """c^offset·poly(c)."""
        return cls({j + offset: coef for j, coef in poly.iter_terms()})

    @property
    def terms(self) -> Dict[int, Coefficient]:
        return dict(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self._terms)
        for e, v in other._terms.items():
            out[e] = out[e] + v if e in out else v
        return LaurentPoly(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -v for e, v in self._terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def add_term(self, exponent: int, value: Any) -> "LaurentPoly":
        return self + LaurentPoly({exponent: value})

    def regular_part(self) -> Dict[int, Coefficient]:
        """Coefficients of c^e with e ≥ 0."""
        return {e: v for e, v in self._terms.items() if e >= 0}

    def principal_part(self) -> ParamLaurent:
        return ParamLaurent({-e: v for e, v in self._terms.items() if e < 0})

    def __repr__(self) -> str:
        if not self._terms:
            return "LaurentPoly(0)"
        return "LaurentPoly(" + " + ".join(f"({self._terms[e]!r})·c^{e}" for e in sorted(self._terms)) + ")"
