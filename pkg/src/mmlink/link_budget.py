"""Closed-form link budget chain.

Free-space path loss, EIRP, received signal level, the Friis family,
Barnett-Vignant fade margin, two-ray multipath and log-spiral antenna
geometry. Distances are in meters unless a name says otherwise; the fade
margin takes kilometers and gigahertz because its constants assume them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from .errors import DomainError
from .rf_math import FOUR_PI, RfCarrier, from_db, to_db

# Barnett-Vignant terrain factor A
TERRAIN_SMOOTH = 4.0  # very smooth terrain, over water
TERRAIN_AVERAGE = 1.0
TERRAIN_ROUGH = 0.25  # mountainous

# Barnett-Vignant climate factor B
CLIMATE_HUMID = 0.5  # hot, humid
CLIMATE_TEMPERATE = 0.25
CLIMATE_DRY = 0.125

# Oxygen absorption near 60 GHz, sea level.
DEFAULT_OXYGEN_ATTENUATION_DB_PER_KM = 15.0


@dataclass(frozen=True)
class AntennaSpec:
    """Antenna gain plus a relative directive pattern g(theta, phi).

    ``pattern`` is None for an isotropic pattern, otherwise a tuple
    ``(theta_grid, phi_grid, values)`` with values[i, j] = g(theta_i, phi_j)
    in [0, 1]. The boresight sample (theta = 0) must equal 1.
    """

    boresight_gain_dbi: float = 0.0
    pattern: tuple | None = None

    def __post_init__(self) -> None:
        if self.pattern is None:
            return
        theta, phi, values = (np.asarray(a, dtype=float) for a in self.pattern)
        if values.shape != (theta.size, phi.size):
            raise DomainError("pattern values must have shape (len(theta), len(phi))")
        if np.any(values < 0) or np.any(values > 1):
            raise DomainError("pattern values must lie in [0, 1]")
        if 0.0 not in theta or not np.allclose(values[theta == 0.0], 1.0):
            raise DomainError("pattern must be tabulated at boresight with g = 1")
        interp = RegularGridInterpolator((theta, phi), values, method="linear")
        object.__setattr__(self, "_interp", interp)

    def relative_gain(self, theta: float = 0.0, phi: float = 0.0) -> float:
        if self.pattern is None:
            return 1.0
        try:
            return float(self._interp([[theta, phi]])[0])
        except ValueError as exc:
            raise DomainError(f"pattern not tabulated at ({theta}, {phi})") from exc

    @property
    def gain_linear(self) -> float:
        return from_db(self.boresight_gain_dbi)


@dataclass(frozen=True)
class LinkEndpoint:
    tx_power_dbm: float = 0.0
    antenna: AntennaSpec = field(default_factory=AntennaSpec)
    cable_loss_db: float = 0.0
    pointing: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self) -> None:
        if self.cable_loss_db < 0:
            raise DomainError("cable loss must be non-negative")

    @property
    def gain_dbi(self) -> float:
        return self.antenna.boresight_gain_dbi

    @property
    def pattern_factor(self) -> float:
        return self.antenna.relative_gain(*self.pointing)


@dataclass(frozen=True)
class PathEnvironment:
    distance_m: float
    atmospheric_attenuation_db_per_km: float = DEFAULT_OXYGEN_ATTENUATION_DB_PER_KM
    misc_loss_tx_db: float = 0.0
    misc_loss_rx_db: float = 0.0
    polarization_match: float = 1.0

    def __post_init__(self) -> None:
        if not self.distance_m > 0:
            raise DomainError("distance must be positive")
        if not 0.0 <= self.polarization_match <= 1.0:
            raise DomainError("polarization match m must lie in [0, 1]")
        if min(self.atmospheric_attenuation_db_per_km, self.misc_loss_tx_db, self.misc_loss_rx_db) < 0:
            raise DomainError("losses must be non-negative")


@dataclass(frozen=True)
class FadeMarginInputs:
    """Barnett-Vignant inputs; distance in km and frequency in GHz."""

    distance_km: float
    terrain_factor: float
    climate_factor: float
    frequency_ghz: float
    availability: float

    def __post_init__(self) -> None:
        if not 0.0 < self.availability < 1.0:
            raise DomainError(f"availability must lie in (0, 1), got {self.availability}")
        for name in ("distance_km", "terrain_factor", "climate_factor", "frequency_ghz"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be positive")


@dataclass(frozen=True)
class TwoRayGeometry:
    """Direct (r1) and reflected (r2) path lengths and the four pattern gains."""

    r1_m: float
    r2_m: float
    g_t1: float = 1.0
    g_r1: float = 1.0
    g_t2: float = 1.0
    g_r2: float = 1.0

    def __post_init__(self) -> None:
        if not (self.r1_m > 0 and self.r2_m > 0):
            raise DomainError("path lengths must be positive")
        if self.r2_m < self.r1_m:
            raise DomainError("reflected path cannot be shorter than the direct path")
        for g in (self.g_t1, self.g_r1, self.g_t2, self.g_r2):
            if not 0.0 <= g <= 1.0:
                raise DomainError("relative directive gains must lie in [0, 1]")


@dataclass(frozen=True)
class SpiralShape:
    """Log-spiral antenna outline r = exp(a (phi + phi0)) f(theta).

    ``profile`` is the constant value of f, or a ``(theta_grid, values)``
    table interpolated linearly.
    """

    growth_rate: float
    phase_offset: float = 0.0
    profile: float | tuple = 1.0

    def __post_init__(self) -> None:
        if isinstance(self.profile, tuple):
            theta, values = (np.asarray(a, dtype=float) for a in self.profile)
            if theta.shape != values.shape or theta.size < 2 or np.any(np.diff(theta) <= 0):
                raise DomainError("profile table needs increasing theta and matching values")
            ok = bool(np.all(values > 0))
        else:
            ok = self.profile > 0
        if not ok:
            raise DomainError("polar profile must be positive")

    def profile_at(self, theta: float) -> float:
        if not isinstance(self.profile, tuple):
            return float(self.profile)
        grid, values = (np.asarray(a, dtype=float) for a in self.profile)
        if not grid[0] <= theta <= grid[-1]:
            raise DomainError(f"theta={theta} outside tabulated profile [{grid[0]}, {grid[-1]}]")
        return float(np.interp(theta, grid, values))


def _check_distance(distance_m: float) -> None:
    if not distance_m > 0:
        raise DomainError(f"distance must be positive, got {distance_m}")


def fspl_db(carrier: RfCarrier, distance_m: float) -> float:
    """Free-space path loss 20 log10(4 pi D / lambda) in dB."""
    _check_distance(distance_m)
    return 20.0 * math.log10(FOUR_PI * distance_m / carrier.wavelength_m)


def eirp_dbm(tx: LinkEndpoint) -> float:
    return tx.tx_power_dbm - tx.cable_loss_db + tx.gain_dbi


def received_signal_level_dbm(
    tx: LinkEndpoint, rx: LinkEndpoint, carrier: RfCarrier, distance_m: float
) -> float:
    """EIRP minus free-space loss plus receive gain minus receive cable loss."""
    return eirp_dbm(tx) - fspl_db(carrier, distance_m) + rx.gain_dbi - rx.cable_loss_db


def friis_received_power(
    tx_power: float,
    gain_tx: float,
    gain_rx: float,
    pattern_tx: float,
    pattern_rx: float,
    carrier: RfCarrier,
    distance_m: float,
) -> float:
    """Received power in the same linear unit as ``tx_power``.

    Gains are linear; pattern factors are relative directive gains in [0, 1].
    """
    _check_distance(distance_m)
    if not (0.0 <= pattern_tx <= 1.0 and 0.0 <= pattern_rx <= 1.0):
        raise DomainError("pattern factors must lie in [0, 1]")
    spreading = (carrier.wavelength_m / (FOUR_PI * distance_m)) ** 2
    # pairwise products keep the tx/rx swap bit-exact
    return tx_power * spreading * (gain_tx * gain_rx) * (pattern_tx * pattern_rx)


def basic_transmission_loss_db(carrier: RfCarrier, distance_m: float) -> float:
    """Loss between isotropic antennas: -(20 log lambda - 20 log R - 20 log 4 pi)."""
    _check_distance(distance_m)
    return -(
        20.0 * math.log10(carrier.wavelength_m)
        - 20.0 * math.log10(distance_m)
        - 20.0 * math.log10(FOUR_PI)
    )


def one_way_received_power_db(
    tx: LinkEndpoint,
    rx: LinkEndpoint,
    env: PathEnvironment,
    carrier: RfCarrier,
    allow_total_mismatch: bool = False,
) -> float:
    """PR/PT in dB including polarization, misc losses and atmospheric absorption.

    With ``polarization_match == 0`` this raises DomainError unless
    ``allow_total_mismatch`` is set, in which case -inf is returned.
    """
    if env.polarization_match == 0.0:
        if allow_total_mismatch:
            return -math.inf
        raise DomainError("polarization match m = 0 blocks the link entirely")
    pattern = tx.pattern_factor * rx.pattern_factor
    if pattern == 0.0:
        if allow_total_mismatch:
            return -math.inf
        raise DomainError("antenna pattern null along the link")
    friis = (
        tx.gain_dbi + rx.gain_dbi - fspl_db(carrier, env.distance_m) + to_db(pattern)
    )
    absorption = env.atmospheric_attenuation_db_per_km * env.distance_m / 1000.0
    return (
        friis
        + to_db(env.polarization_match)
        - env.misc_loss_tx_db
        - env.misc_loss_rx_db
        - absorption
    )


def fade_margin_terms(inputs: FadeMarginInputs) -> tuple[float, float, float, float]:
    """The four Barnett-Vignant terms, each as added to the margin.

    Returns (multipath, terrain, reliability, constant) with the signs
    applied, so the margin is their sum.
    """
    return (
        30.0 * math.log10(inputs.distance_km),
        10.0 * math.log10(6.0 * inputs.terrain_factor * inputs.climate_factor * inputs.frequency_ghz),
        -10.0 * math.log10(1.0 - inputs.availability),
        -70.0,
    )


def fade_margin_db(inputs: FadeMarginInputs) -> float:
    return math.fsum(fade_margin_terms(inputs))


def two_ray_power_ratio(
    geometry: TwoRayGeometry, gain_tx: float, gain_rx: float, carrier: RfCarrier
) -> float:
    """PR/PT for a direct ray plus one reflected ray, combined coherently."""
    g = geometry
    a1 = g.g_t1 * g.g_r1 / g.r1_m**2
    a2 = g.g_t2 * g.g_r2 / g.r2_m**2
    cross = (
        2.0
        * math.sqrt(g.g_t1 * g.g_r1 * g.g_t2 * g.g_r2)
        / (g.r1_m * g.r2_m)
        * math.cos(carrier.wavenumber_per_m * (g.r2_m - g.r1_m))
    )
    scale = (carrier.wavelength_m / FOUR_PI) ** 2 * gain_tx * gain_rx
    # |A1 + A2 e^{j psi}|^2 >= 0; rounding can push perfect nulls a hair negative
    return max(scale * (a1 + a2 + cross), 0.0)


def spiral_radius(shape: SpiralShape, phi: float, theta: float) -> float:
    return math.exp(shape.growth_rate * (phi + shape.phase_offset)) * shape.profile_at(theta)


@dataclass(frozen=True)
class LinkScenario:
    """Everything needed to evaluate one link: carrier, both ends, the path."""

    carrier: RfCarrier
    tx: LinkEndpoint
    rx: LinkEndpoint
    environment: PathEnvironment
    fade_margin: FadeMarginInputs | None = None

    def with_distance(self, distance_m: float) -> "LinkScenario":
        return replace(self, environment=replace(self.environment, distance_m=distance_m))
