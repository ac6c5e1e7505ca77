#!/usr/bin/env python3
"""
Quick Slepian-vs-Fourier reconstruction comparison.

Runs 100 seeded line-of-sight trials (two 5 cm segments, 1 cm
wavelength, distance uniform in 5..25 cm) and prints the mean relative
L2 misfit per truncation size.  The full 1000-trial table is a CLI
call away:

    slepianlis channel --trials 1000 --out-dir out/
"""
from slepianlis import BASES, ExperimentConfig, run_experiment

config = ExperimentConfig(trials=100, N_values=tuple(range(1, 17)))
report = run_experiment(config)

near = report.regimes.count("near")
print(f"{config.trials} trials, {near} below the Rayleigh distance "
      f"({report.rayleigh * 100:.1f} cm), {report.resampled} resampled")
print(f"\n{'N':>3} {'slepian mean':>13} {'fourier mean':>13}")
for N in config.N_values:
    means = [report.stats(basis, N)[0] for basis in BASES]
    marker = "  <- knee" if N == 10 else ""
    print(f"{N:>3} {means[0]:>13.4e} {means[1]:>13.4e}{marker}")

print("\npast N ~ 10 the Slepian series keeps improving while the")
print("Fourier tail stalls; compare the two columns above.")
