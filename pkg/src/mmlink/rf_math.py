"""Numeric primitives: decibels, wavelength, Gaussian tail, binomials."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import erfc

from .errors import DomainError

SPEED_OF_LIGHT = 299_792_458.0  # m/s, exact
FOUR_PI = 4.0 * math.pi


@dataclass(frozen=True)
class RfCarrier:
    """A carrier frequency with its wavelength and wavenumber."""

    frequency_hz: float
    wavelength_m: float = field(init=False)
    wavenumber_per_m: float = field(init=False)

    def __post_init__(self) -> None:
        if not self.frequency_hz > 0:
            raise DomainError(f"frequency must be positive, got {self.frequency_hz}")
        lam = SPEED_OF_LIGHT / self.frequency_hz
        object.__setattr__(self, "wavelength_m", lam)
        object.__setattr__(self, "wavenumber_per_m", 2.0 * math.pi / lam)

    @classmethod
    def from_ghz(cls, frequency_ghz: float) -> "RfCarrier":
        return cls(frequency_ghz * 1e9)

    @property
    def frequency_ghz(self) -> float:
        return self.frequency_hz / 1e9


def to_db(ratio):
    """Power ratio to decibels, ``10 log10(ratio)``.

    Accepts scalars or arrays. Raises DomainError for any non-positive entry.
    """
    r = np.asarray(ratio, dtype=float)
    if np.any(~(r > 0)):
        raise DomainError("to_db requires a strictly positive ratio")
    out = 10.0 * np.log10(r)
    return float(out) if out.ndim == 0 else out


def from_db(db):
    """Decibels to a linear power ratio, ``10^(db/10)``."""
    out = np.power(10.0, np.asarray(db, dtype=float) / 10.0)
    return float(out) if out.ndim == 0 else out


def wavelength_m(frequency_hz: float) -> float:
    if not frequency_hz > 0:
        raise DomainError(f"frequency must be positive, got {frequency_hz}")
    return SPEED_OF_LIGHT / frequency_hz


def q_function(x):
    """Gaussian tail probability Q(x) = 0.5 * erfc(x / sqrt(2))."""
    out = 0.5 * erfc(np.asarray(x, dtype=float) / math.sqrt(2.0))
    return float(out) if np.ndim(out) == 0 else out


def binomial(n: int, k: int) -> int:
    """Exact binomial coefficient C(n, k) using Python integers."""
    if n < 0 or k < 0:
        raise DomainError("binomial arguments must be non-negative")
    if k > n:
        raise DomainError(f"binomial requires k <= n, got n={n}, k={k}")
    return math.comb(n, k)
