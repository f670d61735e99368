"""Binomial step matrices and their determinants."""

import logging
from math import comb
from typing import List, Optional, Sequence

import sympy

from ..errors import DeterminantMismatch

logger = logging.getLogger(__name__)

C = sympy.Symbol("c")


def binomial_matrix(ell: int, m_lo: int) -> List[List[int]]:
    """Integer matrix [binom(j, i)] with rows i ∈ [0, ell] and columns j ∈ [m_lo, m_lo + ell]."""
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    return [[comb(j, i) for j in range(m_lo, m_lo + ell + 1)] for i in range(ell + 1)]


def bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    """
    Determinant of an integer matrix by fraction-free elimination.

    Args:
        matrix: Square integer matrix

    Returns:
        Exact determinant; every intermediate division is exact
    """
    a = [list(row) for row in matrix]
    size = len(a)
    if size == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(size - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, size) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


def binomial_window_det(ell: int, m_lo: int) -> int:
    """det[binom(j, i)] over a window of ell + 1 consecutive columns; equals 1."""
    return bareiss_det(binomial_matrix(ell, m_lo))


def step_matrix(ell: int, m_lo: Optional[int] = None) -> sympy.Matrix:
    """Symbolic step matrix [binom(j, i)·c^{j−i}] (default window m_lo = ell + 1)."""
    if m_lo is None:
        m_lo = ell + 1
    return sympy.Matrix(ell + 1, ell + 1, lambda i, col: comb(m_lo + int(col), int(i)) * C ** (m_lo + int(col) - int(i)))


def laplace_det(matrix: sympy.Matrix) -> sympy.Expr:
    """Brute-force cofactor expansion along the first row."""
    size = matrix.rows
    if size == 1:
        return matrix[0, 0]
    total = sympy.Integer(0)
    for col in range(size):
        entry = matrix[0, col]
        if entry == 0:
            continue
        minor = matrix.minor_submatrix(0, col)
        total += (-1) ** col * entry * laplace_det(minor)
    return sympy.expand(total)


def binom_det(ell: int, laplace_limit: int = 4, elimination_limit: int = 8) -> sympy.Expr:
    """
    Determinant of the step matrix, c^{(ell+1)²}.

    The closed form is cross-checked against Laplace expansion for
    ell ≤ laplace_limit and fraction-free elimination for ell ≤ elimination_limit.

    Raises:
        DeterminantMismatch: If a cross-check disagrees with the closed form
    """
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    closed = C ** ((ell + 1) ** 2)
    if ell <= elimination_limit:
        matrix = step_matrix(ell)
        checks = {"bareiss": sympy.expand(matrix.det(method="bareiss"))}
        if ell <= laplace_limit:
            checks["laplace"] = laplace_det(matrix)
        for method, value in checks.items():
            if sympy.expand(value - closed) != 0:
                raise DeterminantMismatch(
                    f"{method} determinant differs from closed form for ell={ell}",
                    details={"ell": ell, "method": method, "value": value},
                )
        logger.debug(f"binom_det ell={ell}: closed form confirmed by {', '.join(sorted(checks))}")
    return closed
