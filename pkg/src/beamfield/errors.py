"""Exception types shared across the package."""


class BeamfieldError(Exception):
    """Base class for all errors raised by this package."""


class SingularMatrixError(BeamfieldError, ArithmeticError):
    """A linear system is singular or numerically rank deficient.

    ``pivot_index`` is the elimination step at which the pivot fell below
    the rank threshold.
    """

    def __init__(self, message, pivot_index):
        super().__init__(message)
        self.pivot_index = pivot_index


class ZfInfeasibleError(BeamfieldError, ValueError):
    """Zero-forcing cannot separate the users (effective channel rank deficient)."""


class DegenerateChannelError(BeamfieldError, ValueError):
    """A user's channel block carries no energy; combining is undefined."""


class UnknownRegionError(BeamfieldError, ValueError):
    """Requested region has no entry in the limit table."""


class ConfigError(BeamfieldError, ValueError):
    """A run configuration failed validation."""
