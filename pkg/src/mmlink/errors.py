"""Exception types shared across the toolkit."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class NoCoverageError(DomainError):
    """A BER target cannot be met even at the reference distance."""
