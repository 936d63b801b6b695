"""Typed errors shared across the package."""

from __future__ import annotations

import math

__all__ = [
    "PowerTransformError",
    "DomainError",
    "DegenerateDataError",
    "ConfigurationError",
    "TransformOverflowError",
]


class PowerTransformError(Exception):
    """Base class for every error raised by this package."""


class DomainError(PowerTransformError, ValueError):
    """Input outside the mathematical domain of the requested operation."""


class DegenerateDataError(PowerTransformError, ValueError):
    """Data with (numerically) zero variance; the likelihood is undefined."""


class ConfigurationError(PowerTransformError, ValueError):
    """Invalid or contradictory run configuration."""


class TransformOverflowError(PowerTransformError, OverflowError):
    """A result magnitude exceeds the floating-point range.

    ``log_magnitude`` carries ln|value| of the offending quantity so callers
    can report how large it would have been without materializing it.
    """

    def __init__(self, message: str, log_magnitude: float, sign: int = 1):
        super().__init__(message)
        self.log_magnitude = float(log_magnitude)
        self.sign = sign

    @property
    def log10_magnitude(self) -> float:
        return self.log_magnitude / math.log(10.0)
