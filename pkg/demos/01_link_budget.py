"""Walk through a 60 GHz link budget, from path loss to fade margin.

Run: python3 demos/01_link_budget.py
"""

import math

from mmlink.link_budget import (
    AntennaSpec,
    FadeMarginInputs,
    LinkEndpoint,
    PathEnvironment,
    TwoRayGeometry,
    eirp_dbm,
    fade_margin_db,
    fade_margin_terms,
    fspl_db,
    one_way_received_power_db,
    received_signal_level_dbm,
    two_ray_power_ratio,
)
from mmlink.rf_math import RfCarrier, from_db, to_db

carrier = RfCarrier.from_ghz(60.0)
print(f"wavelength at 60 GHz: {carrier.wavelength_m * 1e3:.3f} mm")

# %% Free-space loss grows 20 dB per decade of distance
for d in (1.0, 10.0, 100.0, 1000.0, 3000.0):
    print(f"  FSPL {d:7.0f} m: {fspl_db(carrier, d):7.2f} dB")

# %% A short backhaul hop with high-gain dishes
tx = LinkEndpoint(tx_power_dbm=10.0, antenna=AntennaSpec(38.0))
rx = LinkEndpoint(antenna=AntennaSpec(38.0), cable_loss_db=1.0)
print(f"\nEIRP: {eirp_dbm(tx):.2f} dBm")
print(f"RSL at 100 m, free space only: {received_signal_level_dbm(tx, rx, carrier, 100.0):.2f} dBm")

# oxygen absorption near 60 GHz is about 15 dB/km, which dominates longer hops
for d in (100.0, 500.0, 1000.0):
    env = PathEnvironment(d)
    print(f"  PR/PT at {d:6.0f} m with absorption: {one_way_received_power_db(tx, rx, env, carrier):8.2f} dB")

# %% Barnett-Vignant fade margin for a 30 km hop over smooth, humid ground
fm = FadeMarginInputs(distance_km=30.0, terrain_factor=4.0, climate_factor=0.5, frequency_ghz=60.0, availability=0.99999)
names = ("30 log D", "10 log 6ABf", "-10 log(1-R)", "constant")
for name, term in zip(names, fade_margin_terms(fm)):
    print(f"  {name:>14}: {term:+7.2f} dB")
print(f"fade margin: {fade_margin_db(fm):.2f} dB")

# %% Two-ray interference: a ground bounce swings the received power
print("\nreflected path excess (mm) -> PR/PT (dB)")
g = from_db(20.0)
for excess_mm in (0.0, 1.25, 2.5, 3.75, 5.0):
    geom = TwoRayGeometry(50.0, 50.0 + excess_mm * 1e-3, g_t2=0.5, g_r2=0.5)
    ratio = two_ray_power_ratio(geom, g, g, carrier)
    print(f"  {excess_mm:5.2f}: {to_db(ratio) if ratio > 0 else -math.inf:8.2f}")
