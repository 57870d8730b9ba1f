"""Closed-form bit error probabilities and their inverses.

The fading results are for noncoherent BFSK: the Ricean formula averages
the conditional error 0.5 exp(-gamma/2) over a Ricean SNR density, and the
diversity formula is the square-law combining result for L independent
Rayleigh branches.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError
from .rf_math import binomial, q_function


class Modulation(str, Enum):
    BPSK = "BPSK"
    QPSK = "QPSK"
    QAM16 = "QAM16"
    QAM64 = "QAM64"

    @property
    def bits_per_symbol(self) -> int:
        return _BITS_PER_SYMBOL[self]

    @property
    def order(self) -> int:
        return 2**self.bits_per_symbol

    @classmethod
    def parse(cls, name: "str | Modulation") -> "Modulation":
        if isinstance(name, Modulation):
            return name
        key = name.upper().replace("-", "").replace("_", "").replace(" ", "")
        aliases = {"16QAM": "QAM16", "64QAM": "QAM64"}
        key = aliases.get(key, key)
        try:
            return cls(key)
        except ValueError:
            raise DomainError(f"unsupported modulation {name!r}") from None


_BITS_PER_SYMBOL = {
    Modulation.BPSK: 1,
    Modulation.QPSK: 2,
    Modulation.QAM16: 4,
    Modulation.QAM64: 6,
}


@dataclass(frozen=True)
class RiceanSpec:
    k_factor: float
    mean_snr_per_bit: float

    def __post_init__(self) -> None:
        if self.k_factor < 0 or self.mean_snr_per_bit < 0:
            raise DomainError("K-factor and mean SNR must be non-negative")


@dataclass(frozen=True)
class DiversityConfig:
    branches: int
    mean_snr_per_channel: float

    def __post_init__(self) -> None:
        if int(self.branches) != self.branches or self.branches < 1:
            raise DomainError("diversity needs at least one branch")
        if self.mean_snr_per_channel < 0:
            raise DomainError("mean SNR must be non-negative")


def ricean_bfsk_ber(spec: RiceanSpec) -> float:
    k, g = spec.k_factor, spec.mean_snr_per_bit
    denom = 2.0 + 2.0 * k + g
    return (1.0 + k) / denom * math.exp(-k * g / denom)


def mrc_diversity_ber(config: DiversityConfig) -> float:
    """Square-law combined noncoherent BFSK over L Rayleigh branches."""
    L = int(config.branches)
    g = config.mean_snr_per_channel
    mu = g / (g + 2.0)
    p = 1.0 / (g + 2.0)  # 0.5 (1 - mu), free of cancellation at high SNR
    q = 0.5 * (1.0 + mu)
    total = math.fsum(binomial(L - 1 + k, k) * q**k for k in range(L))
    return p**L * total


def awgn_ber(modulation: Modulation | str, ebn0) -> float:
    """Per-bit error probability over AWGN with coherent Gray-coded detection.

    M-QAM uses the nearest-neighbour approximation, which is loose at very
    low Eb/N0 but accurate on the usable part of the curve.
    """
    mod = Modulation.parse(modulation)
    ebn0 = np.asarray(ebn0, dtype=float)
    if np.any(ebn0 < 0):
        raise DomainError("Eb/N0 must be non-negative")
    if mod in (Modulation.BPSK, Modulation.QPSK):
        return q_function(np.sqrt(2.0 * ebn0))
    m = mod.order
    k = mod.bits_per_symbol
    arg = np.sqrt(3.0 * k * ebn0 / (m - 1))
    return (4.0 / k) * (1.0 - 1.0 / math.sqrt(m)) * q_function(arg)


@dataclass(frozen=True)
class RayleighBFSK:
    pass


@dataclass(frozen=True)
class RiceanBFSK:
    k_factor: float


@dataclass(frozen=True)
class MRC:
    branches: int


@dataclass(frozen=True)
class AWGN:
    modulation: Modulation


AnalyticChannel = RayleighBFSK | RiceanBFSK | MRC | AWGN


def forward_ber(channel: AnalyticChannel, mean_snr: float) -> float:
    """BER of an analytic channel at a linear mean SNR (per bit or per branch)."""
    if isinstance(channel, RayleighBFSK):
        return ricean_bfsk_ber(RiceanSpec(0.0, mean_snr))
    if isinstance(channel, RiceanBFSK):
        return ricean_bfsk_ber(RiceanSpec(channel.k_factor, mean_snr))
    if isinstance(channel, MRC):
        return mrc_diversity_ber(DiversityConfig(channel.branches, mean_snr))
    if isinstance(channel, AWGN):
        return awgn_ber(channel.modulation, mean_snr)
    raise DomainError(f"unknown analytic channel {channel!r}")


SNR_BRACKET_MAX = 1e14
_MAX_ITER = 200


def required_mean_snr(target_ber: float, channel: AnalyticChannel) -> float:
    """Smallest linear mean SNR whose BER does not exceed ``target_ber``.

    Bisection over [0, 1e14] on the monotone forward formula, stopped at
    1e-9 relative width; the upper end of the final bracket is returned so
    the forward BER is guaranteed to sit at or below the target.
    """
    if not 0.0 < target_ber < 0.5:
        raise DomainError(f"target BER must lie in (0, 0.5), got {target_ber}")
    if forward_ber(channel, 0.0) <= target_ber:
        return 0.0
    lo, hi = 0.0, SNR_BRACKET_MAX
    if forward_ber(channel, hi) > target_ber:
        raise DomainError(f"target BER {target_ber} unreachable below SNR {hi:g}")
    for _ in range(_MAX_ITER):
        mid = 0.5 * (lo + hi)
        if forward_ber(channel, mid) <= target_ber:
            hi = mid
        else:
            lo = mid
        if hi - lo <= 1e-9 * hi:
            break
    return hi
