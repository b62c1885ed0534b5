"""Smoke test for the `tunneltime` Python extension.

Build and install with `maturin develop -m crates/python/Cargo.toml`, or build
with cargo and point TUNNELTIME_MODULE_DIR at a directory containing the
shared library renamed to `tunneltime.so`.
"""

import cmath
import math
import os
import sys

if "TUNNELTIME_MODULE_DIR" in os.environ:
    sys.path.insert(0, os.environ["TUNNELTIME_MODULE_DIR"])

import tunneltime as tt

EV = tt.ELECTRON_VOLT
ME = tt.ELECTRON_MASS


def check(cond, what):
    if not cond:
        raise SystemExit(f"FAIL: {what}")
    print(f"ok   {what}")


# Quantum barrier: U = 1 eV, W = 0.5 eV, 2 nm.
lead = tt.Medium.quantum(0.0, ME)
barrier = tt.Layer(tt.Medium.quantum(1.0 * EV, ME), 2e-9)
stack = tt.Stack(lead, [barrier])
t, r = stack.scatter(0.5 * EV)
check(abs(abs(t) ** 2 + abs(r) ** 2 - 1.0) < 1e-12, "flux conserved through a quantum barrier")

grid = [0.5 * EV * (1 + 1e-4 * (i - 1)) for i in range(3)]
tau = stack.phase_time(grid)[1]
hbar = 6.62607015e-34 / (2 * math.pi)
saturated = hbar / math.sqrt(0.5 * EV * 0.5 * EV)
check(abs(tau / saturated - 1.0) < 1e-3, f"opaque barrier phase time {tau:.4e} s near hbar/sqrt(W(U-W))")

check(abs(tt.universal_time_energy(0.7 * EV) - 5.908e-15) < 1e-17, "h/W at 0.7 eV")
check(abs(tt.interface_reflectance(1j * 2.0, 1.5 + 0j) - 1.0) < 1e-12, "imaginary index reflects totally")

dx, dp = tt.localization_bound(1.7 * EV, 0.7 * EV, ME)
check(abs(dp * dp / (2 * ME) - 1.0 * EV) < 1e-12 * EV, "localization bound identity")

# Free propagation: t = exp(-ikL).
free = tt.Stack(tt.Medium.dielectric(1.0), [tt.Layer(tt.Medium.dielectric(1.0), 0.4)])
w = 2 * math.pi * 1e9
t, _ = free.scatter(w)
check(abs(t - cmath.exp(-1j * w / tt.SPEED_OF_LIGHT * 0.4)) < 1e-12, "free propagation phase")

names = tt.builtin_names()
check("ftir-microwave" in names and len(names) == 10, "builtin scenarios listed")
report = tt.builtin_scenario("ftir-microwave").run()
check(60e-12 < report["probe_tau"] < 240e-12, f"ftir-microwave tau {report['probe_tau']:.3e} s")
check(all(report["virtual"]), "ftir gap is virtual")

cfg = tt.builtin_scenario("acoustic-1MHz")
again = tt.load_scenario(cfg.to_toml())
check(again.to_toml() == cfg.to_toml(), "scenario text round trip")

rows = tt.table1()
check(len(rows) == 10 and sum(r["factor"] is not None for r in rows) == 9, "table has ten rows, nine complete")

try:
    tt.load_scenario('name = "x"\nfield = "sound"\n')
except ValueError as e:
    check("sound" in str(e), "invalid scenario raises ValueError")
else:
    raise SystemExit("FAIL: invalid scenario accepted")

print("python smoke test passed")
