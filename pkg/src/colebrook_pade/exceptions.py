"""Exception and warning classes raised by colebrook_pade."""


class DomainError(ValueError):
    """An argument lies outside the set where a formula is defined."""


class DomainWarning(UserWarning):
    """Flow conditions fall outside the empirical range of the Colebrook equation."""


class BracketError(RuntimeError):
    """The oracle bracket does not contain a sign change."""


class ConfigError(ValueError):
    """Invalid solver configuration."""


class CostModelError(KeyError):
    """A cost model lacks a weight for an operation class that was counted."""
