"""Scenario files: a TOML document with one table per section.

Every section is optional in the file; missing keys take the defaults below.
``fade_margin``, ``two_ray`` and ``sweep`` have required keys, so they only
exist when the file provides them (or a preset does). Unknown sections or
keys are rejected. ``serialize`` writes the fully resolved scenario in a
fixed order, and parsing that text reproduces the same scenario.

Presets
-------
``preset = "table1-row1"`` .. ``"table1-row8"`` (top level) sets the carrier
frequency, the modulation list and OFDM with G = 1/4 from the modulation
comparison table. ``[fade_margin] preset = "karachi"`` loads the worked
Barnett-Vignant example. Explicit keys always override preset values.
"""

from __future__ import annotations

import dataclasses
import json
import math
import sys
import typing
from dataclasses import dataclass, field
from fractions import Fraction

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from ..coverage import DEFAULT_NLOS_EXPONENT, RadioSystem
from ..errors import DomainError
from ..fading_ber import Modulation
from ..link_budget import (
    AntennaSpec,
    FadeMarginInputs,
    LinkEndpoint,
    LinkScenario,
    PathEnvironment,
    TwoRayGeometry,
)
from ..phy_sim import FadingChannel, ModulationScheme, OfdmConfig, SimConfig
from ..rf_math import RfCarrier

# (modulation, carrier GHz); every row uses OFDM with G = 1/4
TABLE1_ROWS = {
    1: ("BPSK", 57.0),
    2: ("QPSK", 57.0),
    3: ("QAM16", 57.0),
    4: ("QAM64", 57.0),
    5: ("BPSK", 63.0),
    6: ("QPSK", 63.0),
    7: ("QAM16", 63.0),
    8: ("QAM64", 63.0),
}

FADE_MARGIN_PRESETS = {
    "karachi": {
        "distance_km": 30.0,
        "terrain_factor": 4.0,
        "climate_factor": 0.5,
        "frequency_ghz": 60.0,
        "availability": 0.99999,
    },
}

COMMANDS = (
    "fspl", "eirp", "rsl", "fade-margin", "two-ray",
    "ber-theory", "ber-sim", "capacity", "coverage", "sweep",
)


class ScenarioError(ValueError):
    """Invalid scenario content; ``field`` names the offending key."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class ScenarioSyntaxError(ScenarioError):
    def __init__(self, message: str):
        super().__init__("<document>", message)


@dataclass(frozen=True)
class CarrierSection:
    frequency_ghz: float = 60.0

    def validate(self) -> None:
        _positive(self, "carrier", "frequency_ghz")


@dataclass(frozen=True)
class TxSection:
    power_dbm: float = 0.0
    gain_dbi: float = 0.0
    cable_loss_db: float = 0.0

    def validate(self) -> None:
        _non_negative(self, "tx", "cable_loss_db")


@dataclass(frozen=True)
class RxSection:
    gain_dbi: float = 0.0
    cable_loss_db: float = 0.0

    def validate(self) -> None:
        _non_negative(self, "rx", "cable_loss_db")


@dataclass(frozen=True)
class EnvironmentSection:
    distance_m: float = 1000.0
    atmospheric_attenuation_db_per_km: float = 15.0
    misc_loss_tx_db: float = 0.0
    misc_loss_rx_db: float = 0.0
    polarization_match: float = 1.0

    def validate(self) -> None:
        _positive(self, "environment", "distance_m")
        for name in ("atmospheric_attenuation_db_per_km", "misc_loss_tx_db", "misc_loss_rx_db"):
            _non_negative(self, "environment", name)
        if not 0.0 <= self.polarization_match <= 1.0:
            raise ScenarioError("environment.polarization_match", "must lie in [0, 1]")


@dataclass(frozen=True)
class FadeMarginSection:
    distance_km: float
    terrain_factor: float
    climate_factor: float
    frequency_ghz: float
    availability: float
    preset: str | None = None
    apply: bool = False

    def validate(self) -> None:
        if not 0.0 < self.availability < 1.0:
            raise ScenarioError("fade_margin.availability", f"must lie strictly between 0 and 1, got {self.availability!r}")
        for name in ("distance_km", "terrain_factor", "climate_factor", "frequency_ghz"):
            _positive(self, "fade_margin", name)


@dataclass(frozen=True)
class SystemSection:
    bandwidth_hz: float = 100e6
    noise_figure_db: float = 6.0
    path_loss_exponent: float = 2.0
    nlos_exponent: float = DEFAULT_NLOS_EXPONENT
    symbol_rate_hz: float | None = None

    def validate(self) -> None:
        _positive(self, "system", "bandwidth_hz")
        _non_negative(self, "system", "noise_figure_db")
        for name in ("path_loss_exponent", "nlos_exponent"):
            if not getattr(self, name) >= 2.0:
                raise ScenarioError(f"system.{name}", "must be at least 2")
        if self.symbol_rate_hz is not None:
            _positive(self, "system", "symbol_rate_hz")


@dataclass(frozen=True)
class TwoRaySection:
    r1_m: float
    r2_m: float
    g_t1: float = 1.0
    g_r1: float = 1.0
    g_t2: float = 1.0
    g_r2: float = 1.0

    def validate(self) -> None:
        _positive(self, "two_ray", "r1_m")
        _positive(self, "two_ray", "r2_m")
        if self.r2_m < self.r1_m:
            raise ScenarioError("two_ray.r2_m", "reflected path must not be shorter than r1_m")
        for name in ("g_t1", "g_r1", "g_t2", "g_r2"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ScenarioError(f"two_ray.{name}", "must lie in [0, 1]")


BER_MODELS = ("awgn", "rayleigh-bfsk", "ricean-bfsk", "mrc")


@dataclass(frozen=True)
class BerSection:
    model: str = "awgn"
    ebn0_db: float = 10.0
    k_factor: float = 0.0
    branches: int = 1
    target_ber: float | None = None

    def validate(self) -> None:
        if self.model not in BER_MODELS:
            raise ScenarioError("ber.model", f"must be one of {', '.join(BER_MODELS)}")
        _non_negative(self, "ber", "k_factor")
        if self.branches < 1:
            raise ScenarioError("ber.branches", "must be at least 1")
        if self.target_ber is not None and not 0.0 < self.target_ber < 0.5:
            raise ScenarioError("ber.target_ber", "must lie strictly between 0 and 0.5")


@dataclass(frozen=True)
class ChannelSection:
    kind: str = "AWGN"
    k_factor: float = 0.0
    sui_index: int | None = None
    sample_rate_hz: float = 1e6

    def validate(self) -> None:
        try:
            FadingChannel(self.kind, self.k_factor, self.sui_index, self.sample_rate_hz)
        except DomainError as exc:
            name = "sui_index" if self.kind.upper() == "SUI" and "SUI" in str(exc) else "kind"
            raise ScenarioError(f"channel.{name}", str(exc)) from None


@dataclass(frozen=True)
class SimSection:
    seed: int = 0
    min_bit_errors: int = 100
    max_bits: int = 10_000_000
    ebn0_db: float | None = None
    ofdm: bool = False
    num_subcarriers: int = 256
    cyclic_prefix: str = "1/4"
    charge_cp: bool = False
    workers: int = 1

    def validate(self) -> None:
        if not 0 <= self.seed < 2**64:
            raise ScenarioError("sim.seed", "must be an unsigned 64-bit integer")
        if self.min_bit_errors < 1:
            raise ScenarioError("sim.min_bit_errors", "must be at least 1")
        if self.max_bits < 1:
            raise ScenarioError("sim.max_bits", "must be positive")
        if self.workers < 1:
            raise ScenarioError("sim.workers", "must be at least 1")
        try:
            OfdmConfig(self.num_subcarriers, Fraction(self.cyclic_prefix))
        except (DomainError, ValueError, ZeroDivisionError) as exc:
            name = "num_subcarriers" if "subcarrier" in str(exc) else "cyclic_prefix"
            raise ScenarioError(f"sim.{name}", str(exc)) from None


SWEEP_VARIABLES = ("distance_m", "ebn0_db")
SWEEP_QUANTITIES = ("ber", "capacity")
SWEEP_MODES = ("theoretical", "montecarlo", "both")


@dataclass(frozen=True)
class SweepSection:
    start: float
    stop: float
    step: float
    variable: str = "distance_m"
    quantity: str = "ber"
    mode: str = "theoretical"

    def validate(self) -> None:
        if self.variable not in SWEEP_VARIABLES:
            raise ScenarioError("sweep.variable", f"must be one of {', '.join(SWEEP_VARIABLES)}")
        if self.quantity not in SWEEP_QUANTITIES:
            raise ScenarioError("sweep.quantity", f"must be one of {', '.join(SWEEP_QUANTITIES)}")
        if self.mode not in SWEEP_MODES:
            raise ScenarioError("sweep.mode", f"must be one of {', '.join(SWEEP_MODES)}")
        if not self.step > 0:
            raise ScenarioError("sweep.step", "must be positive")
        if not self.stop >= self.start:
            raise ScenarioError("sweep.stop", "must not be below sweep.start")
        if self.variable == "distance_m" and not self.start > 0:
            raise ScenarioError("sweep.start", "distances must be positive")
        if self.quantity == "capacity" and self.variable != "distance_m":
            raise ScenarioError("sweep.variable", "capacity sweeps run over distance_m")

    def values(self) -> list[float]:
        n = int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        return [self.start + i * self.step for i in range(n)]


@dataclass(frozen=True)
class CoverageSection:
    target_ber: float = 1e-6
    y_mode: str = "shannon"

    def validate(self) -> None:
        if not 0.0 < self.target_ber < 0.5:
            raise ScenarioError("coverage.target_ber", "must lie strictly between 0 and 0.5")
        if self.y_mode not in ("shannon", "nominal"):
            raise ScenarioError("coverage.y_mode", "must be shannon or nominal")


@dataclass(frozen=True)
class OutputSection:
    directory: str = "out"
    stem: str = "result"
    formats: list[str] = field(default_factory=lambda: ["csv", "svg"])
    plot_style: str | None = None  # linear | semilog-y; chosen per quantity if unset

    def validate(self) -> None:
        bad = [f for f in self.formats if f not in ("csv", "svg")]
        if bad:
            raise ScenarioError("output.formats", f"unsupported format {bad[0]!r}")
        if self.plot_style not in (None, "linear", "semilog-y"):
            raise ScenarioError("output.plot_style", "must be linear or semilog-y")
        if not self.stem or "/" in self.stem:
            raise ScenarioError("output.stem", "must be a plain file stem")


_SECTIONS = {
    "carrier": CarrierSection,
    "tx": TxSection,
    "rx": RxSection,
    "environment": EnvironmentSection,
    "fade_margin": FadeMarginSection,
    "system": SystemSection,
    "two_ray": TwoRaySection,
    "ber": BerSection,
    "channel": ChannelSection,
    "sim": SimSection,
    "sweep": SweepSection,
    "coverage": CoverageSection,
    "output": OutputSection,
}
_OPTIONAL_SECTIONS = ("fade_margin", "two_ray", "sweep")


@dataclass(frozen=True)
class ScenarioFile:
    command: str | None = None
    preset: str | None = None
    modulations: list[str] = field(default_factory=lambda: ["BPSK"])
    carrier: CarrierSection = field(default_factory=CarrierSection)
    tx: TxSection = field(default_factory=TxSection)
    rx: RxSection = field(default_factory=RxSection)
    environment: EnvironmentSection = field(default_factory=EnvironmentSection)
    fade_margin: FadeMarginSection | None = None
    system: SystemSection = field(default_factory=SystemSection)
    two_ray: TwoRaySection | None = None
    ber: BerSection = field(default_factory=BerSection)
    channel: ChannelSection = field(default_factory=ChannelSection)
    sim: SimSection = field(default_factory=SimSection)
    sweep: SweepSection | None = None
    coverage: CoverageSection = field(default_factory=CoverageSection)
    output: OutputSection = field(default_factory=OutputSection)

    # -- domain objects -------------------------------------------------

    def require(self, section: str) -> typing.Any:
        value = getattr(self, section)
        if value is None:
            raise ScenarioError(section, "section is required for this command")
        return value

    def carrier_obj(self) -> RfCarrier:
        return RfCarrier.from_ghz(self.carrier.frequency_ghz)

    def tx_endpoint(self) -> LinkEndpoint:
        return LinkEndpoint(self.tx.power_dbm, AntennaSpec(self.tx.gain_dbi), self.tx.cable_loss_db)

    def rx_endpoint(self) -> LinkEndpoint:
        return LinkEndpoint(0.0, AntennaSpec(self.rx.gain_dbi), self.rx.cable_loss_db)

    def environment_obj(self) -> PathEnvironment:
        e = self.environment
        return PathEnvironment(
            e.distance_m, e.atmospheric_attenuation_db_per_km,
            e.misc_loss_tx_db, e.misc_loss_rx_db, e.polarization_match,
        )

    def fade_margin_inputs(self) -> FadeMarginInputs:
        fm = self.require("fade_margin")
        return FadeMarginInputs(
            fm.distance_km, fm.terrain_factor, fm.climate_factor, fm.frequency_ghz, fm.availability
        )

    def link_scenario(self) -> LinkScenario:
        fm = self.fade_margin_inputs() if self.fade_margin is not None else None
        return LinkScenario(
            self.carrier_obj(), self.tx_endpoint(), self.rx_endpoint(), self.environment_obj(), fm
        )

    def radio_system(self, exponent: float | None = None) -> RadioSystem:
        s = self.system
        return RadioSystem(
            self.link_scenario(),
            s.bandwidth_hz,
            s.noise_figure_db,
            s.path_loss_exponent if exponent is None else exponent,
            s.symbol_rate_hz,
            apply_fade_margin=self.fade_margin is not None and self.fade_margin.apply,
        )

    def two_ray_geometry(self) -> TwoRayGeometry:
        t = self.require("two_ray")
        return TwoRayGeometry(t.r1_m, t.r2_m, t.g_t1, t.g_r1, t.g_t2, t.g_r2)

    def schemes(self) -> list[ModulationScheme]:
        return [ModulationScheme.of(m) for m in self.modulations]

    def fading_channel(self) -> FadingChannel:
        c = self.channel
        return FadingChannel(c.kind, c.k_factor, c.sui_index, c.sample_rate_hz)

    def ofdm_config(self) -> OfdmConfig | None:
        if not self.sim.ofdm:
            return None
        return OfdmConfig(self.sim.num_subcarriers, Fraction(self.sim.cyclic_prefix))

    def sim_config(self, ebn0_db: float | None = None) -> SimConfig:
        if ebn0_db is None:
            if self.sim.ebn0_db is None:
                raise ScenarioError("sim.ebn0_db", "required for this command")
            ebn0_db = self.sim.ebn0_db
        return SimConfig(ebn0_db, self.sim.seed, self.sim.min_bit_errors, self.sim.max_bits)


# -- parsing ------------------------------------------------------------


def _positive(section, prefix: str, name: str) -> None:
    if not getattr(section, name) > 0:
        raise ScenarioError(f"{prefix}.{name}", "must be positive")


def _non_negative(section, prefix: str, name: str) -> None:
    if not getattr(section, name) >= 0:
        raise ScenarioError(f"{prefix}.{name}", "must be non-negative")


def _coerce(value, hint, where: str):
    origin = typing.get_origin(hint)
    args = typing.get_args(hint)
    if origin is typing.Union or type(hint).__name__ == "UnionType":
        inner = [a for a in args if a is not type(None)]
        return _coerce(value, inner[0], where)
    if hint is bool:
        if not isinstance(value, bool):
            raise ScenarioError(where, f"expected true/false, got {value!r}")
        return value
    if hint is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ScenarioError(where, f"expected an integer, got {value!r}")
        return value
    if hint is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ScenarioError(where, f"expected a number, got {value!r}")
        if not math.isfinite(value):
            raise ScenarioError(where, "must be finite")
        return float(value)
    if hint is str:
        if not isinstance(value, str):
            raise ScenarioError(where, f"expected a string, got {value!r}")
        return value
    if origin is list:
        if not isinstance(value, list):
            raise ScenarioError(where, f"expected a list, got {value!r}")
        return [_coerce(v, args[0], f"{where}[{i}]") for i, v in enumerate(value)]
    raise TypeError(f"unsupported schema type {hint!r}")


def _build(cls, raw: dict, prefix: str):
    if not isinstance(raw, dict):
        raise ScenarioError(prefix, "expected a table")
    hints = typing.get_type_hints(cls)
    names = [f.name for f in dataclasses.fields(cls)]
    unknown = sorted(set(raw) - set(names))
    if unknown:
        raise ScenarioError(f"{prefix}.{unknown[0]}" if prefix else unknown[0], "unknown key")
    kwargs = {}
    for f in dataclasses.fields(cls):
        where = f"{prefix}.{f.name}" if prefix else f.name
        if f.name in raw:
            kwargs[f.name] = _coerce(raw[f.name], hints[f.name], where)
        elif f.default is dataclasses.MISSING and f.default_factory is dataclasses.MISSING:
            raise ScenarioError(where, "missing required key")
    return cls(**kwargs)


def _apply_presets(raw: dict) -> dict:
    raw = {k: (dict(v) if isinstance(v, dict) else v) for k, v in raw.items()}
    preset = raw.get("preset")
    if preset is not None:
        if not isinstance(preset, str) or not preset.startswith("table1-row"):
            raise ScenarioError("preset", f"unknown preset {preset!r}")
        try:
            row = int(preset[len("table1-row"):])
            mod, ghz = TABLE1_ROWS[row]
        except (ValueError, KeyError):
            raise ScenarioError("preset", f"unknown preset {preset!r}") from None
        raw.setdefault("modulations", [mod])
        raw.setdefault("carrier", {}).setdefault("frequency_ghz", ghz)
        sim = raw.setdefault("sim", {})
        sim.setdefault("ofdm", True)
        sim.setdefault("cyclic_prefix", "1/4")
    fm = raw.get("fade_margin")
    if isinstance(fm, dict) and "preset" in fm:
        values = FADE_MARGIN_PRESETS.get(fm["preset"])
        if values is None:
            raise ScenarioError("fade_margin.preset", f"unknown preset {fm['preset']!r}")
        for k, v in values.items():
            fm.setdefault(k, v)
    if isinstance(fm, dict) and "frequency_ghz" not in fm:
        carrier = raw.get("carrier", {})
        if isinstance(carrier, dict):
            fm["frequency_ghz"] = carrier.get("frequency_ghz", CarrierSection.frequency_ghz)
    return raw


def from_dict(raw: dict) -> ScenarioFile:
    raw = _apply_presets(raw)
    top = {}
    sections = {}
    for key, value in raw.items():
        if key in _SECTIONS:
            sections[key] = _build(_SECTIONS[key], value, key)
        else:
            top[key] = value
    scenario = _build(ScenarioFile, {**top}, "")
    scenario = dataclasses.replace(scenario, **sections)
    validate(scenario)
    return scenario


def validate(scenario: ScenarioFile) -> None:
    if scenario.command is not None and scenario.command not in COMMANDS:
        raise ScenarioError("command", f"unknown command {scenario.command!r}")
    if not scenario.modulations:
        raise ScenarioError("modulations", "must list at least one scheme")
    for i, m in enumerate(scenario.modulations):
        try:
            Modulation.parse(m)
        except DomainError as exc:
            raise ScenarioError(f"modulations[{i}]", str(exc)) from None
    for name in _SECTIONS:
        section = getattr(scenario, name)
        if section is not None:
            section.validate()


def parse_scenario(text: str) -> ScenarioFile:
    """Parse and validate scenario text, applying presets and defaults."""
    try:
        raw = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ScenarioSyntaxError(str(exc)) from None
    return from_dict(raw)


def load_scenario(path) -> ScenarioFile:
    with open(path, encoding="utf-8") as fh:
        return parse_scenario(fh.read())


# -- canonical serialisation ---------------------------------------------


def _format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, list):
        return "[" + ", ".join(_format_value(v) for v in value) + "]"
    raise TypeError(f"cannot serialise {value!r}")


def _table_lines(obj) -> list[str]:
    return [
        f"{f.name} = {_format_value(getattr(obj, f.name))}"
        for f in dataclasses.fields(obj)
        if getattr(obj, f.name) is not None
    ]


def serialize(scenario: ScenarioFile) -> str:
    """Canonical TOML text: top-level keys, then sections in schema order."""
    lines = []
    for name in ("command", "preset", "modulations"):
        value = getattr(scenario, name)
        if value is not None:
            lines.append(f"{name} = {_format_value(value)}")
    for name in _SECTIONS:
        section = getattr(scenario, name)
        if section is None:
            continue
        lines.append("")
        lines.append(f"[{name}]")
        lines.extend(_table_lines(section))
    return "\n".join(lines) + "\n"
