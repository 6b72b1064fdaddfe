"""Exception types shared across the package."""


class CorrfunError(Exception):
    """Base class for all errors raised by corrfun."""


class InputError(CorrfunError, ValueError):
    """Malformed or inconsistent input (shapes, non-orders, bad JSON)."""


class CapacityError(CorrfunError):
    """A computation would exceed a configured size guard."""


class InvariantViolation(CorrfunError, AssertionError):
    """An internal mathematical invariant failed to hold."""
