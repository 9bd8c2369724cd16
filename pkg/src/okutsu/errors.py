"""Exception types shared across the package."""


class OkutsuError(Exception):
    """Base class for mathematical failures (CLI exit code 2)."""


class PrecisionError(OkutsuError):
    """A Puiseux exponent or family index exceeds the working precision."""


class ReducibleError(OkutsuError):
    """The input polynomial is reducible; ``witness`` says why."""

    def __init__(self, message: str, witness: str):
        super().__init__(f"{message}: {witness}")
        self.witness = witness


class BudgetExhausted(OkutsuError):
    """Chain construction ran out of refinement steps."""


class UnstableAtPrecision(OkutsuError):
    """A limit-family coefficient did not stabilise within the stored prefix."""

    def __init__(self, message: str, last_values=()):
        super().__init__(message)
        self.last_values = tuple(last_values)


class InvalidAugmentation(OkutsuError):
    """An augmentation's preconditions (key polynomial, gamma > mu(phi)) fail."""


class InseparableError(OkutsuError):
    """A separability-dependent computation received an inseparable polynomial."""


class NotCertified(OkutsuError):
    """A residual irreducibility test could not be certified over an infinite field."""
