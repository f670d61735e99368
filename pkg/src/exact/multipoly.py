"""Sparse multivariate polynomials over the Gaussian rationals."""

from math import comb
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .gaussian import ONE, ZERO, GaussianRational
from .poly import DensePoly

Exponents = Tuple[int, ...]


class MultiPoly:
    """Polynomial in a fixed number of variables as a map multi-index → coefficient."""

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Optional[Mapping[Exponents, Any]] = None):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        self.nvars = nvars
        clean: Dict[Exponents, GaussianRational] = {}
        for exps, coef in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise ValueError(f"Exponent {exps} does not have {nvars} entries")
            coef = GaussianRational.coerce(coef)
            if coef:
                clean[exps] = coef
        self._terms = clean

    @classmethod
    def _raw(cls, nvars: int, terms: Dict[Exponents, GaussianRational]) -> "MultiPoly":
        poly = cls.__new__(cls)
        poly.nvars = nvars
        poly._terms = {e: c for e, c in terms.items() if c}
        return poly

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, value: Any) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "MultiPoly":
        exps = [0] * nvars
        exps[index] = 1
        return cls(nvars, {tuple(exps): ONE})

    @classmethod
    def monomial(cls, exps: Sequence[int], coef: Any = 1) -> "MultiPoly":
        return cls(len(exps), {tuple(exps): coef})

    @classmethod
    def from_dense(cls, poly: DensePoly) -> "MultiPoly":
        return cls._raw(1, {(j,): c for j, c in poly.iter_terms()})

    def to_dense(self) -> DensePoly:
        if self.nvars != 1:
            raise ValueError("to_dense requires a univariate MultiPoly")
        return DensePoly.from_terms((e[0], c) for e, c in self._terms.items())

    @property
    def terms(self) -> Dict[Exponents, GaussianRational]:
        return dict(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def total_degree(self) -> int:
        """Maximal |I| over stored terms (-1 for zero)."""
        return max((sum(e) for e in self._terms), default=-1)

    def coefficient(self, exps: Sequence[int]) -> GaussianRational:
        return self._terms.get(tuple(exps), ZERO)

    def iter_terms(self) -> Iterator[Tuple[int, GaussianRational]]:
        """(total degree, coefficient) pairs in graded order."""
        for exps in sorted(self._terms, key=lambda e: (sum(e), e)):
            yield sum(exps), self._terms[exps]

    def sorted_items(self) -> List[Tuple[Exponents, GaussianRational]]:
        return [(e, self._terms[e]) for e in sorted(self._terms, key=lambda e: (sum(e), e))]

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self._terms.items())))

    def _check(self, other: "MultiPoly") -> None:
        if other.nvars != self.nvars:
            raise ValueError(f"Variable count mismatch: {self.nvars} vs {other.nvars}")

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __add__(self, other: Any) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            try:
                other = MultiPoly.constant(self.nvars, other)
            except TypeError:
                return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out[e] + c if e in out else c
        return MultiPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __sub__(self, other: Any) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            try:
                other = MultiPoly.constant(self.nvars, other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> "MultiPoly":
        return (-self) + other

    def scale(self, factor: Any) -> "MultiPoly":
        factor = GaussianRational.coerce(factor)
        if not factor:
            return MultiPoly.zero(self.nvars)
        return MultiPoly._raw(self.nvars, {e: c * factor for e, c in self._terms.items()})

    def __mul__(self, other: Any) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            out: Dict[Exponents, GaussianRational] = {}
            for e1, c1 in self._terms.items():
                for e2, c2 in other._terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    prod = c1 * c2
                    out[e] = out[e] + prod if e in out else prod
            return MultiPoly._raw(self.nvars, out)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "MultiPoly":
        result = MultiPoly.constant(self.nvars, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def evaluate(self, point: Sequence[Any]) -> GaussianRational:
        """Exact evaluation at a point of length nvars."""
        if len(point) != self.nvars:
            raise ValueError(f"Point has {len(point)} entries, expected {self.nvars}")
        point = [GaussianRational.coerce(x) for x in point]
        cache: Dict[Tuple[int, int], GaussianRational] = {}
        acc = ZERO
        for exps, coef in self._terms.items():
            term = coef
            for s, e in enumerate(exps):
                if e:
                    key = (s, e)
                    if key not in cache:
                        cache[key] = point[s] ** e
                    term = term * cache[key]
            acc = acc + term
        return acc

    __call__ = evaluate

    def derivative(self, index: int) -> "MultiPoly":
        out = {}
        for exps, coef in self._terms.items():
            e = exps[index]
            if e:
                new = list(exps)
                new[index] = e - 1
                out[tuple(new)] = coef * e
        return MultiPoly._raw(self.nvars, out)

    def taylor_shift(self, center: Sequence[Any]) -> "MultiPoly":
        """Return q with q(z) = p(z + center), one variable at a time."""
        center = [GaussianRational.coerce(c) for c in center]
        if len(center) != self.nvars:
            raise ValueError(f"Center has {len(center)} entries, expected {self.nvars}")
        terms = dict(self._terms)
        for s, c in enumerate(center):
            if not c:
                continue
            powers = [ONE]
            out: Dict[Exponents, GaussianRational] = {}
            for exps, coef in terms.items():
                e = exps[s]
                while len(powers) <= e:
                    powers.append(powers[-1] * c)
                for t in range(e + 1):
                    new = exps[:s] + (t,) + exps[s + 1:]
                    val = coef * (powers[e - t] * comb(e, t))
                    out[new] = out[new] + val if new in out else val
            terms = {k: v for k, v in out.items() if v}
        return MultiPoly._raw(self.nvars, terms)

    def compose_linear(self, matrix: Sequence[Sequence[Any]]) -> "MultiPoly":
        """
        Substitute z_s = Σ_l matrix[s][l]·w_l.

        Args:
            matrix: nvars rows, each with the coefficients of one linear form

        Returns:
            Polynomial in the w variables (len(matrix[0]) of them)
        """
        if len(matrix) != self.nvars:
            raise ValueError("Substitution matrix must have one row per variable")
        width = len(matrix[0]) if matrix else 0
        forms = [
            MultiPoly(width, {
                tuple(1 if l == col else 0 for l in range(width)): entry
                for col, entry in enumerate(row)
            })
            for row in matrix
        ]
        powers: Dict[Tuple[int, int], MultiPoly] = {}

        def power(s: int, e: int) -> MultiPoly:
            if (s, e) not in powers:
                powers[(s, e)] = MultiPoly.constant(width, 1) if e == 0 else power(s, e - 1) * forms[s]
            return powers[(s, e)]

        result = MultiPoly.zero(width)
        for exps, coef in self._terms.items():
            term = MultiPoly.constant(width, coef)
            for s, e in enumerate(exps):
                if e:
                    term = term * power(s, e)
            result = result + term
        return result

    def split_first(self) -> Dict[int, "MultiPoly"]:
        """Group by the power of the first variable: {i: coefficient polynomial in the rest}."""
        out: Dict[int, Dict[Exponents, GaussianRational]] = {}
        for exps, coef in self._terms.items():
            out.setdefault(exps[0], {})[exps[1:]] = coef
        return {i: MultiPoly._raw(self.nvars - 1, t) for i, t in out.items()}

    @classmethod
    def join_first(cls, parts: Mapping[int, "MultiPoly"], nvars: int) -> "MultiPoly":
        """Inverse of split_first."""
        out = {}
        for i, poly in parts.items():
            for exps, coef in poly._terms.items():
                out[(i,) + exps] = coef
        return cls._raw(nvars, out)

    def homogeneous_degrees(self) -> Dict[int, List[GaussianRational]]:
        """Coefficients grouped by total degree."""
        out: Dict[int, List[GaussianRational]] = {}
        for exps, coef in self.sorted_items():
            out.setdefault(sum(exps), []).append(coef)
        return out

    def to_json(self) -> List[List[Any]]:
        return [[list(e), c.to_json()] for e, c in self.sorted_items()]

    @classmethod
    def from_json(cls, nvars: int, data: Iterable[Sequence[Any]]) -> "MultiPoly":
        terms: Dict[Exponents, GaussianRational] = {}
        for exps, coef in data:
            key = tuple(int(e) for e in exps)
            if key in terms:
                raise ValueError(f"Duplicate monomial {key}")
            terms[key] = GaussianRational.from_json(coef)
        return cls(nvars, terms)

    def __repr__(self) -> str:
        if not self._terms:
            return f"MultiPoly({self.nvars}, 0)"
        parts = [f"({c!r})·z^{list(e)}" for e, c in self.sorted_items()]
        return f"MultiPoly({self.nvars}, " + " + ".join(parts) + ")"
