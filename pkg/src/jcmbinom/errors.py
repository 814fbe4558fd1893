"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A parameter lies outside the supported domain."""


class NumericalDomainError(ArithmeticError):
    """A computation cannot proceed: zero-norm state, truncation too small, ..."""
