"""Exception types raised by the library.

Every error derives from :class:`DumontError`, which is itself a
``ValueError``: all of them signal a violated precondition, never a failed
verification (failed checks are reported, not raised).
"""


class DumontError(ValueError):
    pass


class NotAUnit(DumontError):
    """Lowest coefficient of a series is not +1 or -1."""


class InsufficientPrecision(DumontError):
    """An operation needs coefficients beyond the known truncation order."""


class DivergentProduct(DumontError):
    """An infinite product whose factors never become 1 modulo q^(N+1)."""


class InvalidSpecialization(DumontError):
    """A monomial substitution outside the domain of an identity."""


class NoFiniteCutoff(DumontError):
    """Valuation bounds do not certify a finite summation range."""


class OddRequired(DumontError):
    pass


class CongruenceViolation(DumontError):
    pass


class CountOverflow(DumontError):
    """A representation count left the 64-bit range."""
