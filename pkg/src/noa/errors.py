"""Exception types shared across the package."""


class DesignError(Exception):
    """Base class for all errors raised by this package."""


class NotPrimeError(DesignError):
    """A field modulus was not prime."""


class FieldOverflowError(DesignError):
    """Requested field order is too large to enumerate."""


class IndexRangeError(DesignError):
    """A field element index was outside [0, s)."""


class StrengthError(DesignError):
    """A strength parameter was outside the supported range."""


class NotDivisorError(DesignError):
    """Requested coarse level count does not divide the design's levels."""


class ColumnIndexError(DesignError):
    """Column selection referenced a bad or duplicate index."""


class NoNontrivialPlanError(DesignError):
    """No nontrivial nested plan exists for the requested (n, d)."""


class UnbalancedColumnError(DesignError):
    """A column does not hold each level equally often."""


class DimensionMismatchError(DesignError):
    """Point set and integrand dimensions disagree."""


class FormatError(DesignError):
    """A design or points file failed to parse."""


class InternalInvariantError(DesignError):
    """A constructed design failed its own strength checks (a bug)."""


class ConstructionError(DesignError):
    """A benchmark design kind could not be constructed for (n, d)."""
