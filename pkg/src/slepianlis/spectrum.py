"""Far-field spectra on the wavenumber sphere and plane-wave diagnostics.

The far-field pattern of a node-sampled function psi is its Fourier
transform restricted to the sphere of radius kappa,

    psi_hat(kappa*d) = sum_j w_j psi(r_j) exp(-1j*kappa*d.r_j),

evaluated over a Fibonacci-spiral quadrature of the unit directions d.
By the Plancherel theorem the patterns of distinct Slepian functions
are orthogonal on the sphere, which :func:`plancherel_check` verifies
numerically.  :func:`plane_wave_fit` approximates arbitrary sampled
fields by finitely many plane waves in the weighted least-squares
sense.
"""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass

import numpy as np

from .geometry import SampledManifold
from .kernel import Wavenumber

__all__ = [
    "FarFieldPattern",
    "SphereGrid",
    "far_field",
    "far_field_samples",
    "plancherel_check",
    "plane_wave_fit",
    "sphere_grid",
    "write_patterns_csv",
]

_GOLDEN_RATIO = (1.0 + np.sqrt(5.0)) / 2.0


@dataclass(frozen=True)
class SphereGrid:
    """Unit directions and solid-angle weights summing to 4*pi."""

    directions: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.directions, dtype=float)
        w = np.asarray(self.weights, dtype=float)
        if d.ndim != 2 or d.shape[1] != 3 or d.shape[0] != w.shape[0]:
            raise ValueError("directions must be (n, 3) with matching weights")
        norms = np.linalg.norm(d, axis=1)
        if np.abs(norms - 1.0).max() > 1e-12:
            raise ValueError("directions must be unit vectors")
        if abs(w.sum() - 4.0 * np.pi) > 1e-9 * 4.0 * np.pi:
            raise ValueError("weights must sum to the full solid angle 4*pi")

    def __len__(self) -> int:
        return self.weights.shape[0]


def _fibonacci_directions(n: int) -> np.ndarray:
    """n near-uniform unit vectors along the Fibonacci spiral."""
    i = np.arange(n) + 0.5
    polar = np.arccos(1.0 - 2.0 * i / n)
    azimuth = 2.0 * np.pi * i / _GOLDEN_RATIO
    sin_polar = np.sin(polar)
    return np.column_stack(
        [np.cos(azimuth) * sin_polar, np.sin(azimuth) * sin_polar, np.cos(polar)]
    )


def sphere_grid(n: int) -> SphereGrid:
    """Fibonacci-spiral quadrature of the sphere with equal weights 4*pi/n."""
    if n < 16:
        raise ValueError("sphere quadrature needs at least 16 directions")
    return SphereGrid(directions=_fibonacci_directions(n), weights=np.full(n, 4.0 * np.pi / n))


@dataclass(frozen=True)
class FarFieldPattern:
    """Complex spectrum values of one function over a sphere grid."""

    values: np.ndarray
    grid: SphereGrid
    wavenumber: Wavenumber

    def energy(self) -> float:
        """Total pattern energy, the weighted integral of |value|**2."""
        return float(np.sum(self.grid.weights * np.abs(self.values) ** 2))


def far_field_samples(values, manifold: SampledManifold, k: Wavenumber,
                      grid: SphereGrid) -> FarFieldPattern:
    """Far-field pattern of arbitrary node samples (linear in `values`)."""
    values = np.asarray(values)
    phase = np.exp(-1j * k.kappa * (grid.directions @ manifold.nodes.T))
    return FarFieldPattern(values=phase @ (manifold.weights * values), grid=grid, wavenumber=k)


def far_field(psi_index: int, spectrum, grid: SphereGrid) -> FarFieldPattern:
    """Far-field pattern of Slepian function `psi_index` (0-based column)."""
    n = spectrum.slepian_values.shape[1]
    if not 0 <= psi_index < n:
        raise IndexError(f"psi_index {psi_index} outside 0..{n - 1}")
    return far_field_samples(
        spectrum.slepian_values[:, psi_index], spectrum.manifold, spectrum.wavenumber, grid
    )


def plancherel_check(spectrum, grid: SphereGrid, count: int) -> np.ndarray:
    """Gram matrix of the first `count` patterns on the sphere.

    The continuous statement is exact orthogonality with diagonal
    2*pi*beta**2*lambda_i; off-diagonal magnitudes measure the combined
    discretization and quadrature error.
    """
    if not 0 < count <= spectrum.slepian_values.shape[1]:
        raise ValueError("count must be within the spectrum size")
    manifold, k = spectrum.manifold, spectrum.wavenumber
    phase = np.exp(-1j * k.kappa * (grid.directions @ manifold.nodes.T))
    patterns = phase @ (manifold.weights[:, None] * spectrum.slepian_values[:, :count])
    return (patterns.conj().T * grid.weights) @ patterns


def plane_wave_fit(u_samples, manifold: SampledManifold, k: Wavenumber, P: int,
                   directions=None):
    """Weighted least-squares fit of node samples by P plane waves.

    The dictionary is exp(+1j*kappa*r.d) over P Fibonacci directions
    (or explicit `directions`).  Singular values below 1e-12 of the
    largest are truncated; a rank-deficient dictionary yields the
    minimum-norm coefficients and a warning.

    Returns
    -------
    (coefficients, residual)
        `residual` is the relative L2 misfit sqrt(int |u - fit|^2 / int |u|^2)
        on the manifold, 0.0 for identically zero input.
    """
    if P < 1:
        raise ValueError("P must be at least 1")
    u = np.asarray(u_samples, dtype=complex).ravel()
    if u.shape[0] != len(manifold):
        raise ValueError("u_samples must match the manifold node count")
    if not np.all(np.isfinite(u)):
        raise ValueError("u_samples must be finite")
    dirs = _fibonacci_directions(P) if directions is None else np.asarray(directions, dtype=float)
    design = np.exp(1j * k.kappa * (manifold.nodes @ dirs.T))
    sqrt_w = np.sqrt(manifold.weights)
    rhs = sqrt_w * u
    rhs_norm = np.linalg.norm(rhs)
    if rhs_norm == 0.0:
        return np.zeros(dirs.shape[0], dtype=complex), 0.0
    coeffs, _, rank, _ = np.linalg.lstsq(sqrt_w[:, None] * design, rhs, rcond=1e-12)
    if rank < dirs.shape[0]:
        warnings.warn(
            f"plane-wave dictionary is rank deficient ({rank} < {dirs.shape[0]});"
            " returning the minimum-norm coefficients",
            stacklevel=2,
        )
    residual = float(np.linalg.norm(rhs - sqrt_w * (design @ coeffs)) / rhs_norm)
    return coeffs, residual


def write_patterns_csv(patterns, path) -> None:
    """Pattern CSV: columns psi_index, theta, phi, magnitude, phase.

    `patterns` is a sequence of (psi_index, FarFieldPattern); theta is
    the polar angle from +z and phi the azimuth in (-pi, pi].
    """
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["psi_index", "theta", "phi", "magnitude", "phase"])
        for index, pattern in patterns:
            d = pattern.grid.directions
            theta = np.arccos(np.clip(d[:, 2], -1.0, 1.0))
            phi = np.arctan2(d[:, 1], d[:, 0])
            for j in range(len(pattern.grid)):
                writer.writerow(
                    [
                        index,
                        repr(float(theta[j])),
                        repr(float(phi[j])),
                        repr(float(np.abs(pattern.values[j]))),
                        repr(float(np.angle(pattern.values[j]))),
                    ]
                )
