"""Closed-form error rates under fading, and why 1e-12 is out of reach.

Run: python3 demos/02_fading_ber.py
"""

from mmlink.fading_ber import (
    MRC,
    DiversityConfig,
    Modulation,
    RayleighBFSK,
    RiceanBFSK,
    RiceanSpec,
    awgn_ber,
    mrc_diversity_ber,
    required_mean_snr,
    ricean_bfsk_ber,
)
from mmlink.rf_math import from_db, to_db

# %% Noncoherent BFSK: a stronger line-of-sight component (larger K) helps a lot
print("mean SNR (dB)   K=0        K=1        K=5        K=10")
for db in (0, 10, 20, 30):
    g = from_db(db)
    row = "  ".join(f"{ricean_bfsk_ber(RiceanSpec(k, g)):.3e}" for k in (0.0, 1.0, 5.0, 10.0))
    print(f"{db:>8}      {row}")

# %% Rayleigh error rate falls only as 1/SNR, so tiny targets need absurd SNR
for target in (1e-3, 1e-6, 1e-9, 1e-12):
    print(f"  target {target:.0e}: Rayleigh needs {to_db(required_mean_snr(target, RayleighBFSK())):6.1f} dB,"
          f" Ricean K=10 needs {to_db(required_mean_snr(target, RiceanBFSK(10.0))):5.1f} dB,"
          f" 4-branch MRC needs {to_db(required_mean_snr(target, MRC(4))):5.1f} dB")

# %% Diversity: each extra branch steepens the curve by one decade per 10 dB
print("\nbranches  BER at 20 dB per branch")
for L in range(1, 6):
    print(f"  {L}       {mrc_diversity_ber(DiversityConfig(L, from_db(20.0))):.3e}")

# %% AWGN references for the four modem schemes
print("\nEb/N0   BPSK/QPSK   16-QAM     64-QAM")
for db in (4, 8, 12, 16):
    g = from_db(db)
    print(f"{db:>4} dB  {awgn_ber(Modulation.BPSK, g):.3e}  {awgn_ber(Modulation.QAM16, g):.3e}  {awgn_ber(Modulation.QAM64, g):.3e}")
