"""Gray-mapped unit-energy constellations with hard-decision demapping.

Mapping table (bit words are written MSB first):

=======  ====  ==========================================================
scheme   bits  mapping
=======  ====  ==========================================================
BPSK     1     0 -> +1, 1 -> -1
QPSK     2     b0 -> I, b1 -> Q; 0 -> +1/sqrt(2), 1 -> -1/sqrt(2)
QAM16    4     b0 b1 -> I, b2 b3 -> Q; per axis Gray 00 01 11 10 ->
               +3 +1 -1 -3, scaled by 1/sqrt(10)
QAM64    6     b0 b1 b2 -> I, b3 b4 b5 -> Q; per axis Gray
               000 001 011 010 110 111 101 100 -> +7 ... -7, by 1/sqrt(42)
=======  ====  ==========================================================

Each axis is a Gray-coded PAM, so decisions separate into independent
in-phase and quadrature slicers, which is exactly minimum-distance
detection for a square grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import DomainError
from ..fading_ber import Modulation


def _gray(i):
    return i ^ (i >> 1)


@dataclass(frozen=True)
class ModulationScheme:
    modulation: Modulation
    bits_per_symbol: int = field(init=False)
    constellation: np.ndarray = field(init=False, repr=False, compare=False)
    labels: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        mod = Modulation.parse(self.modulation)
        object.__setattr__(self, "modulation", mod)
        k = mod.bits_per_symbol
        object.__setattr__(self, "bits_per_symbol", k)
        words = np.arange(2**k)
        bits = (words[:, None] >> np.arange(k - 1, -1, -1)) & 1
        object.__setattr__(self, "constellation", _map_bits(bits.astype(np.uint8), mod))
        object.__setattr__(self, "labels", words)

    @classmethod
    def of(cls, name: "str | Modulation | ModulationScheme") -> "ModulationScheme":
        if isinstance(name, ModulationScheme):
            return name
        return cls(Modulation.parse(name))

    @property
    def name(self) -> str:
        return self.modulation.value

    @property
    def axis_levels(self) -> int:
        """PAM levels per axis (BPSK has only the in-phase axis)."""
        if self.modulation is Modulation.BPSK:
            return 2
        return 2 ** (self.bits_per_symbol // 2)

    @property
    def scale(self) -> float:
        """Amplitude of one PAM unit after energy normalisation."""
        if self.modulation is Modulation.BPSK:
            return 1.0
        m = self.axis_levels
        return 1.0 / math.sqrt(2.0 * (m * m - 1) / 3.0)

    @property
    def min_distance(self) -> float:
        return 2.0 * self.scale


# Gray-coded PAM: label gray(i) sits at amplitude (m - 1 - 2i).
def _pam_amplitudes(m: int) -> np.ndarray:
    amp = np.empty(m)
    i = np.arange(m)
    amp[_gray(i)] = (m - 1) - 2 * i
    return amp


def _pam_index(amplitude: np.ndarray, m: int) -> np.ndarray:
    i = np.rint(((m - 1) - amplitude) / 2.0)
    return np.clip(i, 0, m - 1).astype(np.int64)


def _bits_to_int(bits: np.ndarray) -> np.ndarray:
    n = bits.shape[-1]
    weights = 1 << np.arange(n - 1, -1, -1)
    return (bits.astype(np.int64) * weights).sum(axis=-1)


def _int_to_bits(values: np.ndarray, n: int) -> np.ndarray:
    return ((values[..., None] >> np.arange(n - 1, -1, -1)) & 1).astype(np.uint8)


def _map_bits(words: np.ndarray, mod: Modulation) -> np.ndarray:
    if mod is Modulation.BPSK:
        return (1.0 - 2.0 * words[:, 0]).astype(np.complex128)
    k = mod.bits_per_symbol
    h = k // 2
    m = 2**h
    amp = _pam_amplitudes(m)
    i_amp = amp[_bits_to_int(words[:, :h])]
    q_amp = amp[_bits_to_int(words[:, h:])]
    scale = 1.0 / math.sqrt(2.0 * (m * m - 1) / 3.0)
    return scale * (i_amp + 1j * q_amp)


def modulate(bits, scheme: ModulationScheme) -> np.ndarray:
    bits = np.asarray(bits, dtype=np.uint8).ravel()
    k = scheme.bits_per_symbol
    if bits.size % k:
        raise DomainError(f"{bits.size} bits do not split into {k}-bit symbols")
    return _map_bits(bits.reshape(-1, k), scheme.modulation)


def demodulate(symbols, scheme: ModulationScheme) -> np.ndarray:
    """Minimum-distance hard decisions, returned as a flat bit array."""
    y = np.asarray(symbols, dtype=np.complex128).ravel()
    if scheme.modulation is Modulation.BPSK:
        return (y.real < 0).astype(np.uint8)
    h = scheme.bits_per_symbol // 2
    m = scheme.axis_levels
    i_idx = _pam_index(y.real / scheme.scale, m)
    q_idx = _pam_index(y.imag / scheme.scale, m)
    bits = np.concatenate([_int_to_bits(_gray(i_idx), h), _int_to_bits(_gray(q_idx), h)], axis=1)
    return bits.ravel()
