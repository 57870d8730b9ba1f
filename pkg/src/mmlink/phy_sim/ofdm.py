"""OFDM framing with a cyclic prefix and unitary transforms."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import DomainError

CP_RATIOS = (Fraction(1, 4), Fraction(1, 8), Fraction(1, 16), Fraction(1, 32))


@dataclass(frozen=True)
class OfdmConfig:
    num_subcarriers: int = 256
    cyclic_prefix_ratio: Fraction = Fraction(1, 4)

    def __post_init__(self) -> None:
        n = self.num_subcarriers
        if int(n) != n or n < 1 or n & (n - 1):
            raise DomainError(f"subcarrier count must be a power of two, got {n}")
        g = Fraction(self.cyclic_prefix_ratio).limit_denominator(1024)
        if g not in CP_RATIOS:
            raise DomainError(f"cyclic prefix ratio must be one of 1/4, 1/8, 1/16, 1/32, got {g}")
        object.__setattr__(self, "cyclic_prefix_ratio", g)
        if (g * n).denominator != 1:
            raise DomainError("G * N must be an integer")

    @property
    def cp_len(self) -> int:
        return int(self.cyclic_prefix_ratio * self.num_subcarriers)

    @property
    def symbol_len(self) -> int:
        return self.num_subcarriers + self.cp_len


def ofdm_modulate(symbols: np.ndarray, config: OfdmConfig) -> np.ndarray:
    """Serial QAM symbols (a multiple of N) to a serial time-domain stream."""
    n = config.num_subcarriers
    grid = np.asarray(symbols, dtype=np.complex128).reshape(-1, n)
    time = np.fft.ifft(grid, axis=1, norm="ortho")
    with_cp = np.concatenate([time[:, n - config.cp_len :], time], axis=1)
    return with_cp.ravel()


def ofdm_demodulate(samples: np.ndarray, config: OfdmConfig) -> np.ndarray:
    """Strip prefixes and return the (n_symbols, N) subcarrier grid."""
    frames = np.asarray(samples, dtype=np.complex128).reshape(-1, config.symbol_len)
    return np.fft.fft(frames[:, config.cp_len :], axis=1, norm="ortho")


def frequency_response(taps: np.ndarray, delays, num_subcarriers: int) -> np.ndarray:
    """Per-subcarrier gain H[b, k] = sum_l taps[b, l] exp(-2j pi k d_l / N)."""
    k = np.arange(num_subcarriers)
    phase = np.exp(-2j * np.pi * np.outer(np.asarray(delays), k) / num_subcarriers)
    return taps @ phase
