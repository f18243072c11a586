"""Exception types shared by every module."""


class WiptError(Exception):
    """Base class for library errors."""


class DomainError(WiptError, ValueError):
    """An argument lies outside the domain of the operation."""


class InfeasibleEnergyError(DomainError):
    """Requested energy rate cannot be met by any input distribution."""


class UnsupportedError(WiptError, TypeError):
    """Operation is not defined for the given model variant or configuration."""


class ConfigError(WiptError, ValueError):
    """Bad configuration file or command-line option."""


class ConvergenceError(WiptError, RuntimeError):
    """A numerical solver failed to converge.

    The residuals at the last iterate are kept on ``residuals`` so callers can
    decide whether the result is usable anyway.
    """

    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = residuals
