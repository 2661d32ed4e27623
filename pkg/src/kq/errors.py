"""Exception types shared across the library."""


class KqError(Exception):
    """Base class for all library errors."""


class InputError(KqError):
    """Malformed user input (CLI exit code 2)."""


class DivisibilityError(KqError):
    """A required divisibility condition fails, e.g. m does not divide q - 1."""


class NotPIntegral(KqError):
    """A denominator divisible by p appeared where a p-integral value is required."""


class PrecisionExhausted(KqError):
    """An iteration failed to stabilise at the working precision p^k (exit code 3)."""


class CorrespondentUndefined(KqError):
    """No block of the big group matches the induced central character."""


class NotAbelian(KqError):
    """Operation requires an abelian group."""


class NotPGroup(KqError):
    """Operation requires a p-group."""


class InconsistentInvariants(KqError):
    """A certified internal invariant failed; the result cannot be trusted (exit code 4)."""
