"""Command-line entry point.

    mmlink <command> SCENARIO [--record FILE] [--output-dir DIR] [--workers N]
    mmlink suite DIRECTORY [--output-dir DIR] [--workers N]

Exit status: 0 success, 2 invalid scenario or missing field, 3 numerical
domain error, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path

from .. import coverage, fading_ber, link_budget
from ..errors import DomainError
from ..phy_sim import ModulationScheme, derive_seed, simulate_ber
from ..rf_math import from_db, to_db
from .emit import _token, emit_csv, emit_plot
from .scenario import COMMANDS, ScenarioError, ScenarioFile, load_scenario

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_DOMAIN = 3
EXIT_IO = 4


@dataclass
class RunResult:
    command: str
    summary: str
    value: float | None = None
    unit: str = ""
    files: list[Path] = field(default_factory=list)


class CommandError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


# -- scalar commands --------------------------------------------------------


def _fspl(sc: ScenarioFile, **_) -> RunResult:
    v = link_budget.fspl_db(sc.carrier_obj(), sc.environment.distance_m)
    return RunResult("fspl", f"{v:.2f} dB", v, "dB")


def _eirp(sc: ScenarioFile, **_) -> RunResult:
    v = link_budget.eirp_dbm(sc.tx_endpoint())
    return RunResult("eirp", f"{v:.2f} dBm", v, "dBm")


def _rsl(sc: ScenarioFile, **_) -> RunResult:
    v = link_budget.received_signal_level_dbm(
        sc.tx_endpoint(), sc.rx_endpoint(), sc.carrier_obj(), sc.environment.distance_m
    )
    return RunResult("rsl", f"{v:.2f} dBm", v, "dBm")


def _fade_margin(sc: ScenarioFile, **_) -> RunResult:
    v = link_budget.fade_margin_db(sc.fade_margin_inputs())
    return RunResult("fade-margin", f"{v:.2f} dB", v, "dB")


def _two_ray(sc: ScenarioFile, **_) -> RunResult:
    ratio = link_budget.two_ray_power_ratio(
        sc.two_ray_geometry(), from_db(sc.tx.gain_dbi), from_db(sc.rx.gain_dbi), sc.carrier_obj()
    )
    v = to_db(ratio) if ratio > 0 else -math.inf
    return RunResult("two-ray", f"{v:.2f} dB", v, "dB")


def _analytic_channel(sc: ScenarioFile):
    b = sc.ber
    if b.model == "awgn":
        return fading_ber.AWGN(fading_ber.Modulation.parse(sc.modulations[0]))
    if b.model == "rayleigh-bfsk":
        return fading_ber.RayleighBFSK()
    if b.model == "ricean-bfsk":
        return fading_ber.RiceanBFSK(b.k_factor)
    return fading_ber.MRC(b.branches)


def _ber_theory(sc: ScenarioFile, **_) -> RunResult:
    channel = _analytic_channel(sc)
    if sc.ber.target_ber is not None:
        snr = fading_ber.required_mean_snr(sc.ber.target_ber, channel)
        v = to_db(snr) if snr > 0 else -math.inf
        return RunResult("ber-theory", f"{v:.2f} dB", v, "dB")
    v = float(fading_ber.forward_ber(channel, from_db(sc.ber.ebn0_db)))
    return RunResult("ber-theory", f"{v:.6e}", v, "")


def _ber_sim(sc: ScenarioFile, workers: int | None = None, **_) -> RunResult:
    est = simulate_ber(
        sc.schemes()[0], sc.fading_channel(), sc.sim_config(), sc.ofdm_config(),
        charge_cp=sc.sim.charge_cp, workers=workers or sc.sim.workers,
    )
    flag = " low-confidence" if est.low_confidence else ""
    summary = (
        f"{est.ber:.6e} +/- {est.ci95_halfwidth:.2e} "
        f"({est.bit_errors} errors / {est.bits_simulated} bits){flag}"
    )
    return RunResult("ber-sim", summary, est.ber, "")


def _capacity(sc: ScenarioFile, **_) -> RunResult:
    system = sc.radio_system()
    v = coverage.shannon_capacity(system.noise_bandwidth_hz, coverage.snr_at_distance(system, sc.environment.distance_m))
    return RunResult("capacity", f"{v:.6e} bit/s", v, "bit/s")


# -- curve commands ------------------------------------------------------------


def _write_curves(sc: ScenarioFile, curves, style: str, title: str, out_dir: Path | None) -> list[Path]:
    directory = Path(out_dir) if out_dir is not None else Path(sc.output.directory)
    stem = sc.output.stem
    files = []
    if "csv" in sc.output.formats:
        for c in curves:
            files.append(emit_csv(c, directory / f"{stem}_{_token(c.label)}.csv"))
    if "svg" in sc.output.formats and curves:
        files.append(emit_plot(curves, directory / f"{stem}.svg", sc.output.plot_style or style, title))
    return files


def _coverage(sc: ScenarioFile, output_dir: Path | None = None, **_) -> RunResult:
    system = sc.radio_system()
    target = sc.coverage.target_ber
    curve = coverage.coverage_vs_capacity_curve(system, sc.schemes(), target, sc.coverage.y_mode)
    parts = [f"{name} {r:.4g} m" for name, r in zip(curve.metadata["schemes"], curve.x)]
    files = _write_curves(sc, [curve], "linear", f"Coverage vs capacity at BER {target:g}", output_dir)
    return RunResult("coverage", "; ".join(parts), None, "m", files)


def _sweep(sc: ScenarioFile, output_dir: Path | None = None, workers: int | None = None, **_) -> RunResult:
    sweep = sc.require("sweep")
    xs = sweep.values()
    workers = workers or sc.sim.workers
    curves = []
    if sweep.quantity == "capacity":
        los = sc.radio_system()
        nlos = sc.radio_system(exponent=sc.system.nlos_exponent)
        curves.append(coverage.capacity_distance_curve(los, xs, label=f"LOS n={los.path_loss_exponent:g}"))
        curves.append(coverage.capacity_distance_curve(nlos, xs, label=f"NLOS n={nlos.path_loss_exponent:g}"))
        style, title = "linear", "Shannon capacity vs distance"
    else:
        channel = sc.fading_channel()
        ofdm = sc.ofdm_config()
        system = sc.radio_system() if sweep.variable == "distance_m" else None
        for scheme in sc.schemes():
            if sweep.mode in ("theoretical", "both"):
                curves.append(_theory_curve(system, scheme, xs))
            if sweep.mode in ("montecarlo", "both"):
                curves.append(_mc_curve(sc, system, scheme, xs, channel, ofdm, workers))
        style = "semilog-y"
        title = "BER vs distance" if system is not None else "BER vs Eb/N0"
    files = _write_curves(sc, curves, style, title, output_dir)
    return RunResult("sweep", f"{len(curves)} curves x {len(xs)} points", None, "", files)


def _theory_curve(system, scheme: ModulationScheme, xs) -> coverage.CurveResult:
    if system is not None:
        return coverage.ber_distance_curve(system, scheme, xs)
    y = [float(fading_ber.awgn_ber(scheme.modulation, from_db(x))) for x in xs]
    return coverage.CurveResult(xs, y, "ebn0", "dB", "ber", "ratio", label=f"{scheme.name} theory")


def _mc_curve(sc, system, scheme, xs, channel, ofdm, workers) -> coverage.CurveResult:
    sim = sc.sim_config(ebn0_db=0.0)
    if system is not None:
        return coverage.ber_distance_curve(
            system, scheme, xs, sim, channel=channel, ofdm=ofdm,
            charge_cp=sc.sim.charge_cp, workers=workers,
        )
    y, ci = [], []
    for i, x in enumerate(xs):
        est = simulate_ber(
            scheme, channel, replace(sim, ebn0_db=x, seed=derive_seed(sim.seed, i)), ofdm,
            charge_cp=sc.sim.charge_cp, workers=workers,
        )
        y.append(est.ber)
        ci.append(est.ci95_halfwidth)
    return coverage.CurveResult(
        xs, y, "ebn0", "dB", "ber", "ratio", label=f"{scheme.name} {channel.label} sim", ci95=ci
    )


_HANDLERS = {
    "fspl": _fspl,
    "eirp": _eirp,
    "rsl": _rsl,
    "fade-margin": _fade_margin,
    "two-ray": _two_ray,
    "ber-theory": _ber_theory,
    "ber-sim": _ber_sim,
    "capacity": _capacity,
    "coverage": _coverage,
    "sweep": _sweep,
}
assert set(_HANDLERS) == set(COMMANDS)


def run(command: str, scenario: ScenarioFile, *, output_dir=None, workers: int | None = None) -> RunResult:
    """Run one subcommand; raises CommandError carrying the exit status."""
    if command not in _HANDLERS:
        raise CommandError(EXIT_VALIDATION, f"unknown command {command!r}")
    try:
        return _HANDLERS[command](scenario, output_dir=output_dir, workers=workers)
    except ScenarioError as exc:
        raise CommandError(EXIT_VALIDATION, str(exc)) from exc
    except DomainError as exc:
        raise CommandError(EXIT_DOMAIN, f"{command}: {exc}") from exc
    except OSError as exc:
        raise CommandError(EXIT_IO, f"{command}: {exc}") from exc


def _record(path, result: RunResult) -> None:
    entry = {"command": result.command, "summary": result.summary, "unit": result.unit}
    if result.value is not None:
        entry["value"] = result.value if math.isfinite(result.value) else str(result.value)
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(json.dumps(entry, sort_keys=True) + "\n")


def run_suite(directory, output_dir=None, workers: int | None = None) -> list[RunResult]:
    """Run every ``*.toml`` scenario in ``directory`` with its declared command."""
    results = []
    for path in sorted(Path(directory).glob("*.toml")):
        sc = load_scenario(path)
        if sc.command is None:
            raise ScenarioError("command", f"{path.name} declares no command")
        out = Path(output_dir) / path.stem if output_dir is not None else None
        results.append(run(sc.command, sc, output_dir=out, workers=workers))
    return results


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mmlink", description="mm-wave link engineering toolkit")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("scenario", type=Path)
        s.add_argument("--record", type=Path, help="append a JSON line with the result")
        s.add_argument("--output-dir", type=Path, help="override [output] directory")
        s.add_argument("--workers", type=int, help="parallel Monte Carlo workers")
    s = sub.add_parser("suite", help="run every scenario in a directory")
    s.add_argument("directory", type=Path)
    s.add_argument("--output-dir", type=Path)
    s.add_argument("--workers", type=int)
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "suite":
            for r in run_suite(args.directory, args.output_dir, args.workers):
                print(f"{r.command}: {r.summary}")
            return EXIT_OK
        try:
            sc = load_scenario(args.scenario)
        except OSError as exc:
            raise CommandError(EXIT_IO, f"cannot read scenario: {exc}") from exc
        if sc.command is not None and sc.command != args.command:
            print(f"note: scenario declares command {sc.command!r}", file=sys.stderr)
        result = run(args.command, sc, output_dir=args.output_dir, workers=args.workers)
        print(result.summary)
        if args.record is not None:
            try:
                _record(args.record, result)
            except OSError as exc:
                raise CommandError(EXIT_IO, f"cannot write record: {exc}") from exc
        return EXIT_OK
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
