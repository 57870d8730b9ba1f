"""Run the shipped scenario suite through the batch interface.

Writes CSV tables and SVG plots under out/demo_suite/.

Run: python3 demos/05_scenarios.py
"""

from pathlib import Path

from mmlink.cli import load_scenario, run, run_suite, serialize

root = Path(__file__).resolve().parent.parent
scenarios = root / "scenarios"
out = root / "out" / "demo_suite"

# %% A scenario file parses to a fully resolved, validated document
sc = load_scenario(scenarios / "14_sweep_table1_row4.toml")
print(serialize(sc))

# %% One command at a time
print(run("fspl", load_scenario(scenarios / "01_fspl_60ghz_3km.toml")).summary)

# %% Or the whole suite; each scenario declares its own command
for result in run_suite(scenarios, out):
    files = ", ".join(p.name for p in result.files)
    print(f"{result.command:>12}: {result.summary}" + (f"  [{files}]" if files else ""))
