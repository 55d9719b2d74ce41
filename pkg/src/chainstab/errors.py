"""Exception types raised across the package."""


class InputError(ValueError):
    """Malformed or mutually incompatible inputs (lengths, signs, empty boxes)."""


class PreconditionError(ValueError):
    """Inputs are well formed but outside the hypotheses of the requested decision."""


class EnumerationOverflowError(RuntimeError):
    """An enumeration could not be confined to a finite, certified search box."""
