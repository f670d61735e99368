"""
Step systems and their exact solution.

Unknowns a_j (j ∈ [m_lo, m_hi]) satisfy Σ_j a_j·binom(j, i)·c^{j−i} = −â_i for
i ∈ [0, ell]. Substituting a_j = b_j(c)/c^j turns this into the integer system
[binom(j, i)]·b = y with y_i = −c^i·â_i(c), whose matrix has determinant one;
the b_j are then polynomials in c of degree ≤ ell and every a_j has the
Laurent shape (1/c^{j−ell})·ℚ_c[1/c].
"""

import logging
from dataclasses import dataclass, field
from math import comb
from typing import Dict, Iterator, List, Tuple, Union

from gmpy2 import mpq

from ..errors import DegreeViolation
from ..exact.gaussian import ZERO, GaussianRational
from ..exact.laurent import ParamLaurent
from ..exact.multipoly import MultiPoly
from ..exact.poly import DensePoly
from .binomial import binomial_matrix

logger = logging.getLogger(__name__)

Polynomial = Union[DensePoly, MultiPoly]


def split_terms(poly: Polynomial) -> Iterator[Tuple[int, Tuple[int, ...], GaussianRational]]:
    """(power of the first variable, remaining exponents, coefficient) triples."""
    if isinstance(poly, DensePoly):
        for j, coef in poly.iter_terms():
            yield j, (), coef
    else:
        for exps, coef in poly.sorted_items():
            yield exps[0], exps[1:], coef


@dataclass
class StepSystem:
    """
    Right-hand sides â_i of one step, as polynomials in the center parameter.

    Univariate systems hold DensePoly entries in c; systems in n ≥ 2 variables
    hold MultiPoly entries in (c, w₂, …, wₙ).
    """

    ell: int
    rhs: List[Polynomial]
    nvars: int = 1

    def __post_init__(self):
        if self.ell < 0:
            raise ValueError("ell must be nonnegative")
        if len(self.rhs) != self.ell + 1:
            raise ValueError(f"rhs has {len(self.rhs)} entries, expected {self.ell + 1}")

    @property
    def m_lo(self) -> int:
        return self.ell + 1

    @property
    def m_hi(self) -> int:
        return 2 * self.ell + 1

    @property
    def is_zero(self) -> bool:
        return all(not entry for entry in self.rhs)

    def check_degrees(self) -> None:
        """
        Enforce deg_c(â_i) + |J| ≤ ell − i on every term.

        Raises:
            DegreeViolation: On the first offending entry
        """
        for i, entry in enumerate(self.rhs):
            for power, rest, _ in split_terms(entry):
                if power + sum(rest) > self.ell - i:
                    raise DegreeViolation(
                        f"rhs entry {i} has a term c^{power}·w'^{list(rest)} beyond degree {self.ell - i}",
                        details={"row": i, "power": power, "rest": list(rest), "ell": self.ell},
                    )


@dataclass
class StepSolution:
    """Solved top coefficients a_j as Laurent elements in c."""

    ell: int
    a: Dict[int, ParamLaurent] = field(default_factory=dict)
    nvars: int = 1

    @property
    def m_lo(self) -> int:
        return self.ell + 1

    @property
    def m_hi(self) -> int:
        return 2 * self.ell + 1

    @property
    def is_zero(self) -> bool:
        return not any(self.a.values())

    def pole_orders_ok(self) -> bool:
        """ord_{1/c}(a_j) ≥ j − m_lo + 1 for every nonzero a_j."""
        return all(not lp or lp.min_pole >= j - self.m_lo + 1 for j, lp in self.a.items())

    def specialize(self, c) -> Polynomial:
        """
        Substitute a value for c.

        Returns:
            DensePoly S(z) for univariate solutions, MultiPoly S(w) otherwise
        """
        c = GaussianRational.coerce(c)
        if self.nvars == 1:
            return DensePoly.from_terms((j, lp.specialize(c)) for j, lp in self.a.items() if lp)
        terms: Dict[Tuple[int, ...], GaussianRational] = {}
        inv = c.inverse()
        for j, lp in self.a.items():
            for p, value in lp:
                scale = inv ** p
                for rest, coef in value.sorted_items():
                    key = (j,) + rest
                    terms[key] = terms.get(key, ZERO) + coef * scale
        return MultiPoly(self.nvars, terms)


def build_system(partial: Polynomial, target: Polynomial, ell: int) -> StepSystem:
    """
    Collect the coefficients of partial(c + z) − target(z) up to degree ell.

    Args:
        partial: G_{k−1} (DensePoly, or MultiPoly in w-coordinates with w₁ along the direction)
        target: g_k in the same coordinates
        ell: Number of conditions minus one

    Returns:
        StepSystem with â_i as polynomials in c (and w₂..wₙ)
    """
    if isinstance(partial, DensePoly):
        rows: List[Dict[int, GaussianRational]] = [{} for _ in range(ell + 1)]
        for e1, _, coef in split_terms(partial):
            for i in range(min(e1, ell) + 1):
                rows[i][e1 - i] = rows[i].get(e1 - i, ZERO) + coef * comb(e1, i)
        for e1, _, coef in split_terms(target):
            if e1 <= ell:
                rows[e1][0] = rows[e1].get(0, ZERO) - coef
        return StepSystem(ell, [DensePoly.from_terms(r.items()) for r in rows], 1)

    nvars = partial.nvars
    mrows: List[Dict[Tuple[int, ...], GaussianRational]] = [{} for _ in range(ell + 1)]
    for e1, rest, coef in split_terms(partial):
        for i in range(min(e1, ell - sum(rest)) + 1):
            key = (e1 - i,) + rest
            mrows[i][key] = mrows[i].get(key, ZERO) + coef * comb(e1, i)
    for e1, rest, coef in split_terms(target):
        if e1 + sum(rest) <= ell:
            key = (0,) + rest
            mrows[e1][key] = mrows[e1].get(key, ZERO) - coef
    return StepSystem(ell, [MultiPoly(nvars, r) for r in mrows], nvars)


def solve_window(size_ell: int, m_lo: int, rhs: List[DensePoly]) -> Dict[int, ParamLaurent]:
    """
    Solve Σ_j a_j·binom(j, i)·c^{j−i} = −rhs_i for i ∈ [0, size_ell], j ∈ [m_lo, m_lo + size_ell].

    Args:
        size_ell: Window size minus one
        m_lo: First unknown index (must exceed size_ell)
        rhs: Polynomials in c

    Returns:
        {j: a_j} with Gaussian-rational Laurent coefficients
    """
    size = size_ell + 1
    a = binomial_matrix(size_ell, m_lo)
    v = [-entry.shift_degrees(i) for i, entry in enumerate(rhs)]

    prev = 1
    for k in range(size - 1):
        if a[k][k] == 0:
            raise ArithmeticError(f"Zero pivot in binomial window at row {k}")
        for i in range(k + 1, size):
            factor = a[i][k]
            for j in range(k + 1, size):
                a[i][j] = (a[k][k] * a[i][j] - factor * a[k][j]) // prev
            v[i] = (v[i].scale(a[k][k]) - v[k].scale(factor)).scale(mpq(1, prev))
            a[i][k] = 0
        prev = a[k][k]

    b: List[DensePoly] = [DensePoly.zero()] * size
    for i in range(size - 1, -1, -1):
        acc = v[i]
        for j in range(i + 1, size):
            if a[i][j] and b[j]:
                acc = acc - b[j].scale(a[i][j])
        b[i] = acc.scale(mpq(1, a[i][i]))

    out: Dict[int, ParamLaurent] = {}
    for idx, poly in enumerate(b):
        j = m_lo + idx
        out[j] = ParamLaurent({j - t: coef for t, coef in poly.iter_terms()})
    return out


def solve_step(system: StepSystem) -> StepSolution:
    """
    Solve a step system exactly.

    Multivariate systems split by the monomial w'^J; each J gives a window of
    ell − |J| + 1 equations in the unknowns j ∈ [m_lo, m_lo + ell − |J|].

    Raises:
        DegreeViolation: If an rhs entry exceeds its degree bound
    """
    system.check_degrees()
    ell, m_lo = system.ell, system.m_lo
    if system.is_zero:
        return StepSolution(ell, {j: ParamLaurent() for j in range(m_lo, system.m_hi + 1)}, system.nvars)

    if system.nvars == 1:
        solution = StepSolution(ell, solve_window(ell, m_lo, system.rhs), 1)
    else:
        by_rest: Dict[Tuple[int, ...], List[Dict[int, GaussianRational]]] = {}
        for i, entry in enumerate(system.rhs):
            for power, rest, coef in split_terms(entry):
                by_rest.setdefault(rest, [{} for _ in range(ell + 1)])[i][power] = coef
        gathered: Dict[int, Dict[int, Dict[Tuple[int, ...], GaussianRational]]] = {}
        for rest in sorted(by_rest):
            width = ell - sum(rest)
            rows = [DensePoly.from_terms(r.items()) for r in by_rest[rest][: width + 1]]
            for j, lp in solve_window(width, m_lo, rows).items():
                for p, coef in lp:
                    gathered.setdefault(j, {}).setdefault(p, {})[rest] = coef
        a = {
            j: ParamLaurent({p: MultiPoly(system.nvars - 1, t) for p, t in gathered.get(j, {}).items()})
            for j in range(m_lo, system.m_hi + 1)
        }
        solution = StepSolution(ell, a, system.nvars)

    if not solution.pole_orders_ok():
        raise ArithmeticError("Solved coefficients violate the Laurent pole-order shape")
    logger.debug(f"Solved step system ell={ell} nvars={system.nvars}")
    return solution
