"""Abstract base class for growth-function oracles."""

from abc import ABC, abstractmethod
from typing import Any, Dict

from ..exact.gaussian import RationalLike


class GrowthOracle(ABC):
    """Certified rational bounds for a positive continuous growth function φ on [0, ∞)."""

    @abstractmethod
    def lower_at(self, r: RationalLike) -> Any:
        """
        Certified lower bound of φ(r).

        Args:
            r: Nonnegative rational

        Returns:
            Rational L ≤ φ(r)
        """
        pass

    @abstractmethod
    def upper_at(self, r: RationalLike) -> Any:
        """Certified upper bound of φ(r)."""
        pass

    @abstractmethod
    def tail_quotient_lower(self, a: RationalLike, power: int) -> Any:
        """
        Lower bound of inf_{r ≥ a} φ(r)/r^power.

        Args:
            a: Positive rational start of the tail
            power: Nonnegative integer exponent

        Returns:
            Rational lower bound; 0 when no positive bound is available
        """
        pass

    @abstractmethod
    def to_dict(self) -> Dict[str, Any]:
        """Serializable description by id and parameters."""
        pass

    def lower(self, a: RationalLike, b: RationalLike) -> Any:
        """Lower bound of φ on [a, b]; built-in oracles are nondecreasing."""
        return self.lower_at(a)
