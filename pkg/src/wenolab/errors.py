"""Exception types shared across the package."""


class WenoLabError(Exception):
    """Base class for all package errors."""


class ConfigError(WenoLabError):
    """Invalid configuration (bad key, malformed value, missing field)."""


class PositivityFailure(WenoLabError):
    """Density or pressure became non-positive."""

    def __init__(self, message, where=None, time=None):
        super().__init__(message)
        self.where = where
        self.time = time


class NumericalFailure(WenoLabError):
    """NaN/Inf detected during a run."""

    def __init__(self, message, where=None, time=None):
        super().__init__(message)
        self.where = where
        self.time = time
