"""Distance-domain curves: SNR, BER, Shannon capacity and coverage radius.

Path loss is free space up to a 1 m reference and grows at
``10 * exponent`` dB per decade beyond it (exponent 2 is free space / LOS,
larger values stand in for NLOS). Noise is the thermal floor
-174 dBm/Hz + 10 log10(B) + NF.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DomainError, NoCoverageError
from .fading_ber import awgn_ber
from .link_budget import LinkScenario, eirp_dbm, fade_margin_db, fspl_db
from .phy_sim import FadingChannel, ModulationScheme, OfdmConfig, SimConfig, derive_seed, simulate_ber
from .rf_math import to_db

THERMAL_NOISE_DBM_PER_HZ = -174.0
REFERENCE_DISTANCE_M = 1.0
DEFAULT_NOISE_FIGURE_DB = 6.0
DEFAULT_NLOS_EXPONENT = 3.5


@dataclass(frozen=True)
class RadioSystem:
    scenario: LinkScenario
    noise_bandwidth_hz: float
    noise_figure_db: float = DEFAULT_NOISE_FIGURE_DB
    path_loss_exponent: float = 2.0
    symbol_rate_hz: float | None = None  # defaults to the noise bandwidth
    apply_fade_margin: bool = False

    def __post_init__(self) -> None:
        if not self.noise_bandwidth_hz > 0:
            raise DomainError("noise bandwidth must be positive")
        if self.noise_figure_db < 0:
            raise DomainError("noise figure must be non-negative")
        if not self.path_loss_exponent >= 2.0:
            raise DomainError("path-loss exponent must be at least 2")
        if self.symbol_rate_hz is not None and not self.symbol_rate_hz > 0:
            raise DomainError("symbol rate must be positive")
        if self.apply_fade_margin and self.scenario.fade_margin is None:
            raise DomainError("apply_fade_margin needs fade-margin inputs on the scenario")

    @property
    def noise_floor_dbm(self) -> float:
        return THERMAL_NOISE_DBM_PER_HZ + 10.0 * math.log10(self.noise_bandwidth_hz) + self.noise_figure_db

    @property
    def symbol_rate(self) -> float:
        return self.symbol_rate_hz if self.symbol_rate_hz is not None else self.noise_bandwidth_hz

    def with_exponent(self, exponent: float) -> "RadioSystem":
        return replace(self, path_loss_exponent=exponent)


@dataclass(frozen=True)
class CurveResult:
    x: tuple[float, ...]
    y: tuple[float, ...]
    x_name: str = "x"
    x_unit: str = ""
    y_name: str = "y"
    y_unit: str = ""
    label: str = ""
    ci95: tuple[float, ...] | None = None
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        x = tuple(float(v) for v in self.x)
        y = tuple(float(v) for v in self.y)
        if len(x) != len(y):
            raise DomainError("curve needs equal-length x and y")
        if any(b <= a for a, b in zip(x, x[1:])):
            raise DomainError("curve x values must be strictly increasing")
        if not all(math.isfinite(v) for v in y):
            raise DomainError("curve y values must be finite")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        if self.ci95 is not None:
            ci = tuple(float(v) for v in self.ci95)
            if len(ci) != len(x):
                raise DomainError("ci95 must have one entry per point")
            object.__setattr__(self, "ci95", ci)

    def __len__(self) -> int:
        return len(self.x)


def path_loss_db(system: RadioSystem, distance_m: float) -> float:
    carrier = system.scenario.carrier
    n = system.path_loss_exponent
    if n == 2.0 or distance_m <= REFERENCE_DISTANCE_M:
        return fspl_db(carrier, distance_m)
    return fspl_db(carrier, REFERENCE_DISTANCE_M) + 10.0 * n * math.log10(distance_m / REFERENCE_DISTANCE_M)


def received_level_dbm(system: RadioSystem, distance_m: float) -> float:
    """Received signal level including pattern, polarisation and path losses."""
    sc = system.scenario
    env = sc.environment
    level = eirp_dbm(sc.tx) - path_loss_db(system, distance_m) + sc.rx.gain_dbi - sc.rx.cable_loss_db
    pattern = sc.tx.pattern_factor * sc.rx.pattern_factor * env.polarization_match
    if pattern == 0.0:
        raise DomainError("antenna pattern or polarisation null blocks the link")
    if pattern != 1.0:
        level += to_db(pattern)
    level -= env.misc_loss_tx_db + env.misc_loss_rx_db
    level -= env.atmospheric_attenuation_db_per_km * distance_m / 1000.0
    if system.apply_fade_margin:
        level -= fade_margin_db(sc.fade_margin)
    return level


def snr_db_at_distance(system: RadioSystem, distance_m: float) -> float:
    return received_level_dbm(system, distance_m) - system.noise_floor_dbm


def snr_at_distance(system: RadioSystem, distance_m: float) -> float:
    if not distance_m > 0:
        raise DomainError(f"distance must be positive, got {distance_m}")
    return 10.0 ** (snr_db_at_distance(system, distance_m) / 10.0)


def shannon_capacity(bandwidth_hz: float, snr_linear: float) -> float:
    if bandwidth_hz < 0 or snr_linear < 0:
        raise DomainError("bandwidth and SNR must be non-negative")
    return bandwidth_hz * math.log2(1.0 + snr_linear)


def ebn0_at_distance(system: RadioSystem, scheme: ModulationScheme, distance_m: float) -> float:
    """Linear Eb/N0 = SNR * B / Rb with Rb = bits_per_symbol * symbol rate."""
    bit_rate = scheme.bits_per_symbol * system.symbol_rate
    return snr_at_distance(system, distance_m) * system.noise_bandwidth_hz / bit_rate


def _distances(distances) -> list[float]:
    d = [float(v) for v in distances]
    if any(not v > 0 for v in d):
        raise DomainError("distances must be positive")
    if any(b <= a for a, b in zip(d, d[1:])):
        raise DomainError("distances must be strictly increasing")
    return d


def capacity_distance_curve(system: RadioSystem, distances, label: str = "") -> CurveResult:
    d = _distances(distances)
    b = system.noise_bandwidth_hz
    cap = [shannon_capacity(b, snr_at_distance(system, x)) for x in d]
    return CurveResult(
        d, cap, "distance", "m", "capacity", "bit/s",
        label=label or f"n={system.path_loss_exponent:g}",
        metadata={"path_loss_exponent": system.path_loss_exponent},
    )


def ber_distance_curve(
    system: RadioSystem,
    scheme: ModulationScheme | str,
    distances,
    mode: str | SimConfig = "theoretical",
    *,
    channel: FadingChannel | None = None,
    ofdm: OfdmConfig | None = None,
    charge_cp: bool = False,
    workers: int = 1,
) -> CurveResult:
    """BER against distance, from theory or Monte Carlo.

    ``mode`` is ``"theoretical"`` (AWGN closed form) or a SimConfig whose
    ``seed`` is the root seed; point ``i`` runs under ``derive_seed(seed, i)``
    and the config's ``ebn0_db`` is ignored.
    """
    scheme = ModulationScheme.of(scheme)
    d = _distances(distances)
    ebn0 = [ebn0_at_distance(system, scheme, x) for x in d]
    if isinstance(mode, str):
        if mode != "theoretical":
            raise DomainError(f"unknown BER curve mode {mode!r}")
        y = [float(awgn_ber(scheme.modulation, g)) for g in ebn0]
        return CurveResult(d, y, "distance", "m", "ber", "ratio", label=f"{scheme.name} theory")
    channel = channel or FadingChannel.awgn()
    y, ci = [], []
    for i, g in enumerate(ebn0):
        cfg = replace(mode, ebn0_db=10.0 * math.log10(g), seed=derive_seed(mode.seed, i))
        est = simulate_ber(scheme, channel, cfg, ofdm, charge_cp=charge_cp, workers=workers)
        y.append(est.ber)
        ci.append(est.ci95_halfwidth)
    return CurveResult(
        d, y, "distance", "m", "ber", "ratio", label=f"{scheme.name} {channel.label} sim",
        ci95=ci, metadata={"seed": mode.seed},
    )


_MAX_RADIUS_M = 1e9


def coverage_radius(system: RadioSystem, scheme: ModulationScheme | str, target_ber: float) -> float:
    """Largest distance whose theoretical BER stays at or below ``target_ber``.

    Raises NoCoverageError when even the 1 m reference misses the target.
    """
    if not 0.0 < target_ber < 0.5:
        raise DomainError(f"target BER must lie in (0, 0.5), got {target_ber}")
    scheme = ModulationScheme.of(scheme)

    def ber(d: float) -> float:
        return float(awgn_ber(scheme.modulation, ebn0_at_distance(system, scheme, d)))

    lo = REFERENCE_DISTANCE_M
    if ber(lo) > target_ber:
        raise NoCoverageError(f"{scheme.name} misses BER {target_ber:g} at the {lo:g} m reference")
    hi = 2.0 * lo
    while ber(hi) <= target_ber:
        lo, hi = hi, 2.0 * hi
        if hi > _MAX_RADIUS_M:
            return lo
    # geometric bisection; stop well inside the 1e-6 contract
    while hi / lo - 1.0 > 1e-13:
        mid = math.sqrt(lo * hi)
        if ber(mid) <= target_ber:
            lo = mid
        else:
            hi = mid
    return lo


def coverage_vs_capacity_curve(
    system: RadioSystem, schemes, target_ber: float, y_mode: str = "shannon"
) -> CurveResult:
    """One point per scheme: coverage radius against capacity at that radius.

    ``y_mode="nominal"`` reports bits_per_symbol * symbol rate instead of the
    Shannon capacity at the radius. Points are ordered by radius.
    """
    schemes = [ModulationScheme.of(s) for s in schemes]
    if not schemes:
        raise DomainError("need at least one modulation scheme")
    if y_mode not in ("shannon", "nominal"):
        raise DomainError(f"unknown y_mode {y_mode!r}")
    rows = []
    for s in schemes:
        r = coverage_radius(system, s, target_ber)
        if y_mode == "shannon":
            y = shannon_capacity(system.noise_bandwidth_hz, snr_at_distance(system, r))
        else:
            y = s.bits_per_symbol * system.symbol_rate
        rows.append((r, y, s.name))
    rows.sort()
    return CurveResult(
        [r[0] for r in rows], [r[1] for r in rows],
        "coverage", "m", "capacity" if y_mode == "shannon" else "throughput", "bit/s",
        label=f"BER {target_ber:g}",
        metadata={"schemes": [r[2] for r in rows], "y_mode": y_mode},
    )


def as_array(curve: CurveResult) -> np.ndarray:
    return np.column_stack([curve.x, curve.y])
