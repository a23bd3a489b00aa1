"""Throughput versus transmit power
====================================

Sweeps the transmit power from 40 to 50 dBm for both duplex modes and
both reference altitudes with orthogonal spectrum, writes the table and a
chart, and prints the headline comparisons.
"""

import collections
import dataclasses
import os

from satiab.expcli import ExperimentConfig, emit_plot, run_power_sweep, write_csv

cfg = dataclasses.replace(ExperimentConfig(), solvers=("exact", "pso"), seed=1)
rows = run_power_sweep(cfg)

os.makedirs("out", exist_ok=True)
write_csv(rows, "out/power_sweep.csv")
emit_plot(rows, "out/power_sweep.svg")
print(f"wrote {len(rows)} rows to out/power_sweep.csv and out/power_sweep.svg")

series = collections.defaultdict(dict)
for row in rows:
    if row.solver == "exact":
        series[(row.duplex, row.altitude_km)][row.sweep_value] = row.throughput_mbps

print(f"\n{'P dBm':>6} {'FDD 600':>9} {'TDD 600':>9} {'FDD 1200':>9} {'TDD 1200':>9}")
for power in sorted(series[("FDD", 600.0)]):
    print(f"{power:6.0f} "
          f"{series[('FDD', 600.0)][power]:9.1f} {series[('TDD', 600.0)][power]:9.1f} "
          f"{series[('FDD', 1200.0)][power]:9.1f} {series[('TDD', 1200.0)][power]:9.1f}")

print("\nmore power, more throughput; FDD beats TDD because TDD pays the")
print("noise of the full band, and the lower orbit wins on path loss")
