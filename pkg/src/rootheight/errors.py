"""Exception types shared across the library."""


class RootHeightError(Exception):
    """Base class for all library-specific errors."""


class DivisionByZero(RootHeightError):
    """Division by a zero polynomial, rational function, or field element."""


class NotDivisible(RootHeightError):
    """Exact polynomial division requested but the remainder is nonzero."""


class MethodMismatch(RootHeightError):
    """Independent computation routes for one quantity disagree."""


class ReconstructionMismatch(RootHeightError):
    """A derived factorization failed to reproduce its source polynomial."""


class InvalidRank(RootHeightError):
    """Rank outside the allowed range for the requested family."""


class GroupTooLarge(RootHeightError):
    """Weyl group order exceeds the configured enumeration cap."""


class SingularSystem(RootHeightError):
    """A linear system that must be nonsingular failed to solve."""


class DegreeTooHigh(RootHeightError):
    """Numerator degree is not below the decomposition period."""


class NoTripleFound(RootHeightError):
    """No unique admissible weight triple exists for this system."""


class UnsupportedOrder(RootHeightError):
    """Operation undefined for this cyclotomic order."""
