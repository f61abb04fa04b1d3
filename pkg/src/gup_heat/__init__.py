"""Standard and GUP-corrected specific heat of solids (Einstein and Debye)."""

from .core import (CODATA, Constants, CurveRow, DebyeParams, DomainError,
                   EinsteinParams, HeatCapacityPoint, TemperatureGrid,
                   ValidationReport, reduced_delta, validate)

__version__ = "0.1.0"

__all__ = [
    "CODATA",
    "Constants",
    "CurveRow",
    "DebyeParams",
    "DomainError",
    "EinsteinParams",
    "HeatCapacityPoint",
    "TemperatureGrid",
    "ValidationReport",
    "reduced_delta",
    "validate",
    "__version__",
]
