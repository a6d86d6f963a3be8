"""Exception types shared across the package."""


class NotOddPrimeError(ValueError):
    """The requested characteristic is not an odd prime."""


class BudgetExceededError(RuntimeError):
    """The requested computation exceeds the configured desk-scale budget."""


class InvalidConstraintError(ValueError):
    """A point-mapping constraint list is malformed (repeated source or target)."""


class NotInOmegaError(ValueError):
    """A pair of projective points is not an ordered pair of distinct points."""


class DomainMismatchError(ValueError):
    """Two functions on F_q do not live over the same field."""


class ArityMismatchError(ValueError):
    """Hypergeometric parameter lists have incompatible lengths."""


class NotIntegralParametersError(ValueError):
    """Hypergeometric rational parameters do not give integral character exponents."""


class TrivialCharacterError(ValueError):
    """A nontrivial multiplicative character is required."""


class UnsupportedCharacterError(ValueError):
    """The character is outside the family this operation is defined for."""


class NotIntersectingError(ValueError):
    """A set of group elements is not pairwise intersecting."""
