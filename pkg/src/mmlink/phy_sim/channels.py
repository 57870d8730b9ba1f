"""Flat and tapped-delay-line fading channels with AWGN.

SUI profiles are the IEEE 802.16 Stanford University Interim models for an
omnidirectional antenna (90% cell coverage K-factors). Each profile has
three taps; delays are in microseconds and become integer sample lags at
the channel's sample rate. Tap powers are renormalised to unit total mean
power. Taps are block-static: one realisation per block (an OFDM symbol, or
``block_len`` single-carrier symbols) and Doppler within a block is ignored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from ..errors import DomainError
from ..rf_math import from_db
from .constellation import ModulationScheme

# index: (delays_us, powers_db, k_factors)
SUI_PROFILES: dict[int, tuple[tuple[float, ...], tuple[float, ...], tuple[float, ...]]] = {
    1: ((0.0, 0.4, 0.9), (0.0, -15.0, -20.0), (4.0, 0.0, 0.0)),
    2: ((0.0, 0.4, 1.1), (0.0, -12.0, -15.0), (2.0, 0.0, 0.0)),
    3: ((0.0, 0.4, 0.9), (0.0, -5.0, -10.0), (1.0, 0.0, 0.0)),
    4: ((0.0, 1.5, 4.0), (0.0, -4.0, -8.0), (0.0, 0.0, 0.0)),
    5: ((0.0, 4.0, 10.0), (0.0, -5.0, -10.0), (0.0, 0.0, 0.0)),
    6: ((0.0, 14.0, 20.0), (0.0, -10.0, -14.0), (0.0, 0.0, 0.0)),
}

DEFAULT_SUI_SAMPLE_RATE_HZ = 1e6
KINDS = ("AWGN", "Rayleigh", "Ricean", "SUI")


@dataclass(frozen=True)
class FadingChannel:
    """AWGN, flat Rayleigh, flat Ricean(K) or SUI-1..6.

    ``delays`` (samples), ``powers`` (linear, summing to 1) and ``k_factors``
    describe the tap-delay line; flat channels are one tap at lag 0.
    """

    kind: str = "AWGN"
    k_factor: float = 0.0
    sui_index: int | None = None
    sample_rate_hz: float = DEFAULT_SUI_SAMPLE_RATE_HZ
    delays: tuple[int, ...] = field(init=False)
    powers: tuple[float, ...] = field(init=False)
    k_factors: tuple[float, ...] = field(init=False)

    def __post_init__(self) -> None:
        kind = {k.lower(): k for k in KINDS}.get(str(self.kind).lower())
        if kind is None:
            raise DomainError(f"unknown channel kind {self.kind!r}")
        object.__setattr__(self, "kind", kind)
        if self.k_factor < 0:
            raise DomainError("Ricean K-factor must be non-negative")
        if kind == "SUI":
            if self.sui_index not in SUI_PROFILES:
                raise DomainError(f"SUI index must be 1..6, got {self.sui_index}")
            if not self.sample_rate_hz > 0:
                raise DomainError("sample rate must be positive")
            delays_us, powers_db, ks = SUI_PROFILES[self.sui_index]
            lags = tuple(int(round(d * 1e-6 * self.sample_rate_hz)) for d in delays_us)
            p = np.array([from_db(x) for x in powers_db])
            powers = tuple(float(v) for v in p / p.sum())
        else:
            lags, powers = (0,), (1.0,)
            ks = (self.k_factor if kind == "Ricean" else 0.0,)
        object.__setattr__(self, "delays", lags)
        object.__setattr__(self, "powers", powers)
        object.__setattr__(self, "k_factors", tuple(float(k) for k in ks))

    @classmethod
    def awgn(cls) -> "FadingChannel":
        return cls("AWGN")

    @classmethod
    def rayleigh(cls) -> "FadingChannel":
        return cls("Rayleigh")

    @classmethod
    def ricean(cls, k_factor: float) -> "FadingChannel":
        return cls("Ricean", k_factor=k_factor)

    @classmethod
    def sui(cls, index: int, sample_rate_hz: float = DEFAULT_SUI_SAMPLE_RATE_HZ) -> "FadingChannel":
        return cls("SUI", sui_index=index, sample_rate_hz=sample_rate_hz)

    @property
    def label(self) -> str:
        if self.kind == "Ricean":
            return f"Ricean(K={self.k_factor:g})"
        if self.kind == "SUI":
            return f"SUI-{self.sui_index}"
        return self.kind

    @property
    def is_faded(self) -> bool:
        return self.kind != "AWGN"

    @property
    def max_delay(self) -> int:
        return max(self.delays)


class ChannelOutput(NamedTuple):
    received: np.ndarray
    gains: np.ndarray  # per-sample coefficient at lag 0
    taps: np.ndarray  # (n_blocks, n_taps) tap realisations


def draw_taps(channel: FadingChannel, n_blocks: int, rng: np.random.Generator) -> np.ndarray:
    """Tap realisations, each tap Ricean with unit-normalised mean power.

    A tap with power P and factor K is sqrt(P) (sqrt(K/(K+1)) + sqrt(1/(K+1)) w)
    with w ~ CN(0, 1), so E|h|^2 = P and |E h|^2 = P K/(K+1).
    """
    n_taps = len(channel.delays)
    if not channel.is_faded:
        return np.ones((n_blocks, n_taps), dtype=np.complex128)
    k = np.asarray(channel.k_factors)
    p = np.asarray(channel.powers)
    w = (rng.standard_normal((n_blocks, n_taps)) + 1j * rng.standard_normal((n_blocks, n_taps))) / math.sqrt(2.0)
    return np.sqrt(p) * (np.sqrt(k / (k + 1.0)) + np.sqrt(1.0 / (k + 1.0)) * w)


def noise_variance(ebn0_db: float, scheme: ModulationScheme) -> float:
    """Complex noise variance N0 for unit symbol energy at the given Eb/N0."""
    ebn0 = 10.0 ** (ebn0_db / 10.0)
    return 1.0 / (scheme.bits_per_symbol * ebn0)


def awgn(n: int, variance: float, rng: np.random.Generator) -> np.ndarray:
    sigma = math.sqrt(variance / 2.0)
    return sigma * (rng.standard_normal(n) + 1j * rng.standard_normal(n))


def apply_taps(samples: np.ndarray, taps: np.ndarray, delays, block_len: int) -> np.ndarray:
    """Block-varying tapped delay line over a continuous sample stream.

    Sample n sees ``sum_l taps[b(n), l] x[n - delay_l]`` where ``b(n)`` is the
    block containing n, so energy spilling past a block boundary is kept.
    """
    x = np.asarray(samples, dtype=np.complex128)
    n = x.size
    out = np.zeros(n, dtype=np.complex128)
    for l, d in enumerate(delays):
        coeff = np.repeat(taps[:, l], block_len)[:n]
        if d == 0:
            out += coeff * x
        elif d < n:
            out[d:] += coeff[d:] * x[:-d]
    return out


def apply_channel(
    symbols,
    channel: FadingChannel,
    ebn0_db: float,
    scheme: ModulationScheme,
    rng: np.random.Generator,
    *,
    block_len: int = 1,
    noise: bool = True,
    noise_scale: float = 1.0,
) -> ChannelOutput:
    """Fade then add noise at the configured per-bit SNR.

    ``noise=False`` (or ``ebn0_db = inf``) disables the noise. ``noise_scale``
    multiplies the noise variance, e.g. by 1 + G to charge a cyclic prefix.
    """
    x = np.asarray(symbols, dtype=np.complex128).ravel()
    n_blocks = max(1, -(-x.size // block_len))
    taps = draw_taps(channel, n_blocks, rng)
    y = apply_taps(x, taps, channel.delays, block_len) if channel.is_faded else x.copy()
    lag0 = taps[:, [i for i, d in enumerate(channel.delays) if d == 0]].sum(axis=1)
    gains = np.repeat(lag0, block_len)[: x.size]
    if noise and math.isfinite(ebn0_db):
        y = y + awgn(x.size, noise_variance(ebn0_db, scheme) * noise_scale, rng)
    return ChannelOutput(y, gains, taps)
