#!/usr/bin/env python3
"""
Far-field energies of ring Slepian functions on the wavenumber sphere.

The pattern energy of psi_i should track 2*pi*beta**2*lambda_i; the
table below shows the measured energy next to that prediction, plus
the worst off-diagonal of the pattern Gram matrix.  Ring modes come in
degenerate +/- pairs, visible as equal eigenvalues in adjacent rows.
"""
import numpy as np

from slepianlis import (GeometrySpec, Wavenumber, assemble, build_manifold,
                        far_field, plancherel_check, solve, sphere_grid)

COUNT = 6

manifold = build_manifold(GeometrySpec("circular", aperture_L=1.0, resolution=256))
k = Wavenumber.from_kappa(4.0 * np.pi)
spectrum = solve(assemble(manifold, k))
grid = sphere_grid(2000)

print(f"{'i':>2} {'lambda_i/lambda_1':>18} {'pattern energy':>15} {'2pi b^2 lambda':>15}")
for i in range(COUNT):
    energy = far_field(i, spectrum, grid).energy()
    predicted = 2.0 * np.pi * k.beta ** 2 * spectrum.eigenvalues[i]
    print(f"{i + 1:>2} {spectrum.scaled[i]:>18.6e} {energy:>15.6e} {predicted:>15.6e}")

gram = plancherel_check(spectrum, grid, COUNT)
off = np.abs(gram - np.diag(np.diag(gram))).max()
print(f"\nworst off-diagonal / largest diagonal: "
      f"{off / np.abs(np.diag(gram)).max():.2e}")
