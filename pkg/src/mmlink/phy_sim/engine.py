"""Chunked Monte Carlo BER estimation.

A run is a fold over chunks. Chunk ``i`` draws its bits, fades and noise from
``make_rng(seed, i)`` and its size depends only on ``i`` and ``max_bits``, so
per-chunk counts never depend on how chunks are scheduled. Chunks are folded
in index order and the fold stops at the first chunk where the error or bit
budget is met; chunks computed past that point by parallel workers are
discarded. The estimate is therefore identical for any worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError
from .channels import FadingChannel, apply_channel
from .constellation import ModulationScheme, demodulate, modulate
from .ofdm import OfdmConfig, frequency_response, ofdm_demodulate, ofdm_modulate
from .rng import make_rng

CHUNK_SYMBOLS = 1 << 16
SINGLE_CARRIER_BLOCK = 256  # symbols per SUI realisation without OFDM


@dataclass(frozen=True)
class SimConfig:
    ebn0_db: float
    seed: int = 0
    min_bit_errors: int = 100
    max_bits: int = 10_000_000

    def __post_init__(self) -> None:
        if not 0 <= int(self.seed) < 2**64:
            raise DomainError("seed must be an unsigned 64-bit integer")
        if self.min_bit_errors < 1:
            raise DomainError("min_bit_errors must be at least 1")
        if self.max_bits < 1:
            raise DomainError("max_bits must be positive")


@dataclass(frozen=True)
class BerEstimate:
    bits_simulated: int
    bit_errors: int
    low_confidence: bool = False

    @property
    def ber(self) -> float:
        return self.bit_errors / self.bits_simulated if self.bits_simulated else 0.0

    @property
    def ci95_halfwidth(self) -> float:
        if not self.bits_simulated:
            return math.inf
        p = self.ber
        return 1.96 * math.sqrt(p * (1.0 - p) / self.bits_simulated)

    def agrees_with(self, expected: float, n_ci: float = 3.0) -> bool:
        return abs(self.ber - expected) <= n_ci * self.ci95_halfwidth


@dataclass(frozen=True)
class _Job:
    scheme: ModulationScheme
    channel: FadingChannel
    ebn0_db: float
    seed: int
    ofdm: OfdmConfig | None
    charge_cp: bool
    max_bits: int

    @property
    def symbols_per_chunk(self) -> int:
        if self.ofdm is None:
            return CHUNK_SYMBOLS
        n = self.ofdm.num_subcarriers
        return max(n, CHUNK_SYMBOLS // n * n)

    def chunk_symbols(self, index: int) -> int:
        """Symbols in chunk ``index``; the final chunk is trimmed to max_bits."""
        k = self.scheme.bits_per_symbol
        per = self.symbols_per_chunk
        total = max(1, -(-self.max_bits // k))
        if self.ofdm is not None:
            n = self.ofdm.num_subcarriers
            total = -(-total // n) * n
        return max(0, min(per, total - index * per))


def _run_chunk(job: _Job, index: int) -> tuple[int, int]:
    n_sym = job.chunk_symbols(index)
    if n_sym == 0:
        return 0, 0
    rng = make_rng(job.seed, index)
    k = job.scheme.bits_per_symbol
    bits = rng.integers(0, 2, size=n_sym * k, dtype=np.uint8)
    tx = modulate(bits, job.scheme)
    if job.ofdm is None:
        block = SINGLE_CARRIER_BLOCK if job.channel.kind == "SUI" else 1
        out = apply_channel(tx, job.channel, job.ebn0_db, job.scheme, rng, block_len=block)
        eq = out.received / out.gains if job.channel.is_faded else out.received
    else:
        cfg = job.ofdm
        scale = float(1 + cfg.cyclic_prefix_ratio) if job.charge_cp else 1.0
        stream = ofdm_modulate(tx, cfg)
        out = apply_channel(
            stream, job.channel, job.ebn0_db, job.scheme, rng,
            block_len=cfg.symbol_len, noise_scale=scale,
        )
        grid = ofdm_demodulate(out.received, cfg)
        if job.channel.is_faded:
            grid = grid / frequency_response(out.taps, job.channel.delays, cfg.num_subcarriers)
        eq = grid.ravel()
    errors = int(np.count_nonzero(demodulate(eq, job.scheme) != bits))
    return errors, bits.size


def simulate_ber(
    scheme: ModulationScheme | str,
    channel: FadingChannel,
    sim: SimConfig,
    ofdm: OfdmConfig | None = None,
    *,
    charge_cp: bool = False,
    workers: int = 1,
) -> BerEstimate:
    """Estimate BER by Monte Carlo until ``min_bit_errors`` or ``max_bits``.

    With ``ofdm`` set, symbols ride N-point OFDM frames with a cyclic prefix
    and per-subcarrier one-tap equalisation; otherwise single-carrier with a
    one-tap equaliser on the lag-0 gain. The receiver knows the channel
    exactly. ``charge_cp`` adds the prefix energy overhead (1 + G) to the
    noise.
    """
    scheme = ModulationScheme.of(scheme)
    job = _Job(scheme, channel, float(sim.ebn0_db), int(sim.seed), ofdm, charge_cp, int(sim.max_bits))
    errors = bits = 0
    index = 0
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        while True:
            batch = range(index, index + max(1, workers))
            if pool is None:
                results = [_run_chunk(job, i) for i in batch]
            else:
                results = list(pool.map(_run_chunk, [job] * len(batch), batch))
            for e, b in results:
                index += 1
                errors += e
                bits += b
                if errors >= sim.min_bit_errors or bits >= sim.max_bits or b == 0:
                    return BerEstimate(bits, errors, low_confidence=errors < sim.min_bit_errors)
    finally:
        if pool is not None:
            pool.shutdown()
