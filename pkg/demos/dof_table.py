#!/usr/bin/env python3
"""
Degrees-of-freedom table for the four built-in shapes.

Sweeps kappa*L over the default grid and prints dof_th / dof_90 /
dof_99 per shape.  Node counts are kept small here so the whole table
builds in a few seconds; the CLI defaults use finer meshes.
"""
import numpy as np

from slepianlis import GeometrySpec, dof_sweep

NODES = {"linear": 256, "circular": 256, "square": 1024, "paraboloid": 1000}
KAPPA_L = [np.pi * m for m in (2, 4, 6, 8, 10, 12)]

print(f"{'shape':<12} {'kappa_L':>8} {'dof_th':>8} {'dof_90':>7} {'dof_99':>7}")
for kind, nodes in NODES.items():
    spec = GeometrySpec(kind=kind, aperture_L=1.0, resolution=nodes)
    for report in dof_sweep(spec, KAPPA_L):
        th = "-" if report.dof_th is None else f"{report.dof_th:.2f}"
        print(f"{kind:<12} {report.kappa_L / np.pi:>7.0f}p {th:>8} "
              f"{report.dof_90:>7} {report.dof_99:>7}")
