"""Exact computations with correspondence functors over finite sets."""

from corrfun.errors import CapacityError, CorrfunError, InputError, InvariantViolation

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "CorrfunError",
    "InputError",
    "InvariantViolation",
    "__version__",
]
