"""From link budget to coverage: SNR, capacity and radius against distance.

Run: python3 demos/04_coverage.py
"""

from mmlink.coverage import (
    RadioSystem,
    capacity_distance_curve,
    coverage_radius,
    coverage_vs_capacity_curve,
    snr_db_at_distance,
)
from mmlink.link_budget import AntennaSpec, LinkEndpoint, LinkScenario, PathEnvironment
from mmlink.rf_math import RfCarrier

# 10 dBm into an isotropic antenna, 10 dBi at the receiver, 1 GHz channel
scenario = LinkScenario(
    RfCarrier.from_ghz(57.0),
    LinkEndpoint(10.0, AntennaSpec(0.0)),
    LinkEndpoint(0.0, AntennaSpec(10.0)),
    PathEnvironment(100.0),
)
los = RadioSystem(scenario, noise_bandwidth_hz=1e9, noise_figure_db=6.0)
nlos = los.with_exponent(3.5)
print(f"noise floor: {los.noise_floor_dbm:.1f} dBm")

# %% SNR and Shannon capacity, line of sight against an n = 3.5 obstructed path
d = [2.0, 5.0, 10.0, 20.0, 50.0]
cap_los = capacity_distance_curve(los, d)
cap_nlos = capacity_distance_curve(nlos, d)
print("distance   SNR LOS   SNR NLOS   C LOS (Gbit/s)   C NLOS (Gbit/s)")
for i, x in enumerate(d):
    print(f"{x:6.0f} m  {snr_db_at_distance(los, x):7.1f}  {snr_db_at_distance(nlos, x):8.1f}"
          f"  {cap_los.y[i] / 1e9:14.2f}  {cap_nlos.y[i] / 1e9:15.2f}")

# %% Coverage radius at BER 1e-3: denser constellations reach less far
for scheme in ("BPSK", "QPSK", "QAM16", "QAM64"):
    print(f"  {scheme:>6}: {coverage_radius(los, scheme, 1e-3):6.2f} m")

curve = coverage_vs_capacity_curve(los, ["BPSK", "QPSK", "QAM16", "QAM64"], 1e-3, y_mode="nominal")
print("\nradius (m) -> nominal throughput (Gbit/s)")
for name, x, y in zip(curve.metadata["schemes"], curve.x, curve.y):
    print(f"  {name:>6}: {x:6.2f} -> {y / 1e9:.0f}")
