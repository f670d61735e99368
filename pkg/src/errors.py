"""Exception hierarchy for Slowgrowth."""

from typing import Any, Dict, Optional


class SlowgrowthError(Exception):
    """Base class for every domain error raised by the package."""

    def __init__(
        self,
        message: str,
        step: Optional[int] = None,
        details: Optional[Dict[str, Any]] = None,
    ):
        """
        Initialize the error.

        Args:
            message: Human readable description
            step: Construction step the error refers to, if any
            details: Extra machine-readable context
        """
        super().__init__(message)
        self.message = message
        self.step = step
        self.details = dict(details or {})

    def to_record(self) -> Dict[str, Any]:
        """
        Render the error as a JSON-ready record.

        Returns:
            Dictionary with error name, message, step and details
        """
        return {
            "error": type(self).__name__,
            "message": self.message,
            "step": self.step,
            "details": {key: str(value) for key, value in sorted(self.details.items())},
        }


class DegreeViolation(SlowgrowthError):
    """A step-system right-hand side exceeds its degree bound in c."""


class MagicViolation(SlowgrowthError):
    """A residual coefficient kept a nonnegative power of c."""


class DeterminantMismatch(SlowgrowthError):
    """Closed-form and brute-force determinants disagree."""


class EnvelopeExhausted(SlowgrowthError):
    """A coefficient cap is not positive or the center search ran out of room."""


class NonUnitDirection(SlowgrowthError):
    """A direction vector does not have squared norm exactly one."""


class WindowCollision(SlowgrowthError):
    """Cantor windows cannot be made nested and disjoint."""


class NoWitnessInHorizon(SlowgrowthError):
    """No step of the transcript qualifies as a witness."""


class BracketFailure(SlowgrowthError):
    """A growth oracle could not certify a positive minimum."""


class NodeVanishing(SlowgrowthError):
    """A map vanished (numerically) at a quadrature node."""


class BoundaryZero(SlowgrowthError):
    """Winding-number sampling did not stabilize on a contour."""


class CertificationFailure(SlowgrowthError):
    """A certified inequality could not be established."""


class ParseError(SlowgrowthError):
    """A transcript document is malformed."""


class CertificateMismatch(SlowgrowthError):
    """A stored transcript field differs from its recomputation."""
