"""Seeded Monte Carlo baseband modem."""

from .channels import SUI_PROFILES, ChannelOutput, FadingChannel, apply_channel, draw_taps
from .constellation import ModulationScheme, demodulate, modulate
from .engine import BerEstimate, SimConfig, simulate_ber
from .ofdm import OfdmConfig, frequency_response, ofdm_demodulate, ofdm_modulate
from .rng import derive_seed, make_rng

__all__ = [
    "SUI_PROFILES",
    "BerEstimate",
    "ChannelOutput",
    "FadingChannel",
    "ModulationScheme",
    "OfdmConfig",
    "SimConfig",
    "apply_channel",
    "demodulate",
    "derive_seed",
    "draw_taps",
    "frequency_response",
    "make_rng",
    "modulate",
    "ofdm_demodulate",
    "ofdm_modulate",
    "simulate_ber",
]
