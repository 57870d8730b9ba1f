"""Millimeter-wave (57-63 GHz) link engineering.

Closed-form link budgets, fading bit-error probabilities, a seeded Monte
Carlo modem and distance-domain coverage and capacity curves.
"""

from .errors import DomainError, NoCoverageError
from .rf_math import RfCarrier, binomial, from_db, q_function, to_db, wavelength_m

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "NoCoverageError",
    "RfCarrier",
    "binomial",
    "from_db",
    "q_function",
    "to_db",
    "wavelength_m",
]
