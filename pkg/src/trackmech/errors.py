"""Exception hierarchy shared by every module."""


class TrackmechError(Exception):
    """Base class. ``stage`` names the pipeline step that failed, if known."""

    stage = None


class DomainError(TrackmechError, ValueError):
    """An input lies outside the domain of a formula."""


class ConfigError(TrackmechError, ValueError):
    """Missing, unknown or malformed configuration."""


class NumericalError(TrackmechError, ArithmeticError):
    """A numerical routine failed to converge."""

    def __init__(self, message, estimates=()):
        super().__init__(message)
        self.estimates = tuple(estimates)
