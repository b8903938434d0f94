"""Exception hierarchy; every error knows the CLI exit code it maps to."""

from typing import Optional

EXIT_OK = 0
EXIT_INVALID_INPUT = 2
EXIT_GUARD_EXCEEDED = 3
EXIT_INTERNAL = 1


class UpperTailError(Exception):
    """Base class for all toolkit errors."""

    exit_code: int = EXIT_INVALID_INPUT


# Invalid input ------------------------------------------------------------


class InvalidVertex(UpperTailError):
    """A vertex label is outside ``0..n-1``."""


class MalformedFacet(UpperTailError):
    """A facet repeats a vertex label."""


class MalformedComplex(UpperTailError):
    """Face data violates downward closure or canonical storage."""


class InvalidParameters(UpperTailError):
    """Model parameters outside their admissible ranges."""


class NoPositiveExponent(UpperTailError):
    """Every exponent is zero, so the first non-trivial level q does not exist."""


class InvalidSubcomplex(UpperTailError):
    """H is empty or not a subcomplex of G."""


class InvalidRange(UpperTailError):
    """Bound arguments violate an operation's precondition."""


class InvalidField(UpperTailError):
    """Coefficient characteristic is not prime."""


class DegenerateMean(UpperTailError):
    """The expected count is zero, so relative tail events are undefined."""


class WitnessBoundViolated(UpperTailError):
    """The blow-up construction exceeded a face budget."""

    def __init__(self, message: str, dimension: Optional[int] = None):
        super().__init__(message)
        self.dimension = dimension


# Guards -------------------------------------------------------------------


class PatternTooLarge(UpperTailError):
    """Subcomplex enumeration would exceed the configured guard."""

    exit_code = EXIT_GUARD_EXCEEDED


class OracleTooLarge(UpperTailError):
    """Brute-force extremal search would exceed the configured guard."""

    exit_code = EXIT_GUARD_EXCEEDED


class NonconvergentFloat(UpperTailError):
    """The floating-point simplex hit its iteration cap."""

    exit_code = EXIT_GUARD_EXCEEDED


# Internal ---------------------------------------------------------------------


class CountInvariantViolated(UpperTailError):
    """An ordered copy count is not a multiple of the pattern's automorphism count."""

    exit_code = EXIT_INTERNAL
