"""Cantor anti-diagonal pairing ℤ₊ ↔ ℤ₊ × ℤ₊."""

from math import isqrt
from typing import Tuple

PAIRING_ID = "cantor-antidiagonal-v1"


def _diagonal(k: int) -> int:
    # first index on diagonal d is d(d-1)/2 + 1, and 8k - 7 = (2d - 1)^2 there
    return (1 + isqrt(8 * k - 7)) // 2


def unpair(k: int) -> Tuple[int, int]:
    """
    Map a positive integer to a pair, walking anti-diagonals in increasing i.

    Args:
        k: Positive integer

    Returns:
        (i, j) with i, j ≥ 1; 1 → (1, 1), 2 → (1, 2), 3 → (2, 1)
    """
    if k < 1:
        raise ValueError(f"unpair expects k >= 1, got {k}")
    d = _diagonal(k)
    pos = k - d * (d - 1) // 2
    return pos, d + 1 - pos


def pair(i: int, j: int) -> int:
    """Inverse of unpair."""
    if i < 1 or j < 1:
        raise ValueError(f"pair expects positive entries, got ({i}, {j})")
    d = i + j - 1
    return d * (d - 1) // 2 + i


def phi1(k: int) -> int:
    return unpair(k)[0]


def phi2(k: int) -> int:
    return unpair(k)[1]


def first_occurrence(target: int) -> int:
    """Smallest k with phi1(k) == target."""
    return target * (target + 1) // 2
