"""Exception types raised across the simulator."""


class InvalidInputError(ValueError):
    """An argument violates a documented precondition."""


class DecompositionError(ArithmeticError):
    """A matrix factorization failed (non-Hermitian or singular input)."""


class GeometryError(ValueError):
    """Antenna arrays overlap or are otherwise physically invalid."""


class DegeneratePrecoderError(ArithmeticError):
    """A precoder stream has zero effective norm and cannot be normalized."""


class NumericalError(ArithmeticError):
    """A rate computation hit a singular or non-finite intermediate."""


class ConfigError(ValueError):
    """A simulation configuration is malformed."""
