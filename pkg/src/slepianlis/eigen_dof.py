"""Eigendecomposition of the concentration operator and degrees of freedom.

Solving the symmetrized Nystrom matrix gives the concentration
eigenvalues and the node-sampled Slepian functions of the shape.  The
leading eigenfunctions span the sensing space; the number of
non-negligible eigenvalues is the spatial degrees-of-freedom count.

Raw eigenvalue magnitudes carry the quadrature units of the shape and
are never interpreted directly; reports use the scaled sequence
lambda_i / lambda_1 and eigenvalue-sum fractions.
"""

from __future__ import annotations

import csv
import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .geometry import GeometrySpec, SampledManifold, build_manifold
from .kernel import ConcentrationOperator, Wavenumber, assemble

__all__ = [
    "ConcentrationSpectrum",
    "DofReport",
    "NumericalError",
    "dof_numerical",
    "dof_sweep",
    "dof_theoretical",
    "solve",
    "write_summary_csv",
    "write_sweep_csv",
]

logger = logging.getLogger(__name__)

# negative eigenvalues larger than this fraction of lambda_1 signal an
# assembly bug; smaller ones are discretization noise and are clipped
PSD_TOLERANCE = 1e-10

DEFAULT_KAPPA_L_GRID = tuple(np.pi * m for m in (2, 4, 6, 8, 10, 12))


class NumericalError(RuntimeError):
    """Eigensolver failure or a violated operator property."""


@dataclass(frozen=True)
class ConcentrationSpectrum:
    """Sorted eigenvalues and node-sampled Slepian functions.

    ``eigenvalues`` is nonincreasing and nonnegative.  Column i of
    ``slepian_values`` holds psi_i at the manifold nodes, recovered
    from the symmetrized eigenvector v_i as psi_i(r_j) = v_i[j]/sqrt(w_j),
    so the functions are orthonormal in the weighted inner product.
    """

    eigenvalues: np.ndarray
    slepian_values: np.ndarray
    manifold: SampledManifold
    wavenumber: Wavenumber

    def __len__(self) -> int:
        return self.eigenvalues.shape[0]

    @property
    def scaled(self) -> np.ndarray:
        """Eigenvalues scaled to lambda_i / lambda_1."""
        top = self.eigenvalues[0]
        if top <= 0.0:
            raise NumericalError("leading eigenvalue is not positive")
        return self.eigenvalues / top


def solve(op: ConcentrationOperator) -> ConcentrationSpectrum:
    """Full symmetric eigendecomposition of the concentration operator.

    Eigenvalues come out sorted descending (ties keep the solver
    order); negatives within the PSD tolerance are clipped to zero.
    Each eigenvector is divided by sqrt(weights) to sample the Slepian
    function on the nodes, and its sign is fixed so the entry of
    largest magnitude is positive.

    Raises
    ------
    NumericalError
        If the eigensolver fails to converge or the spectrum violates
        positive semidefiniteness beyond tolerance.
    """
    try:
        values, vectors = sla.eigh(op.matrix, driver="evd", check_finite=False)
    except sla.LinAlgError as exc:
        cond = np.abs(op.matrix).max()
        raise NumericalError(f"eigensolver did not converge (max entry {cond:.3e})") from exc

    values = values[::-1]
    vectors = vectors[:, ::-1]
    top = float(values[0])
    if top <= 0.0:
        raise NumericalError("operator has no positive eigenvalue")
    if values[-1] < -PSD_TOLERANCE * top:
        raise NumericalError(
            f"PSD violation: min eigenvalue {values[-1]:.3e} vs top {top:.3e};"
            " the assembled operator is inconsistent"
        )
    negative = values < 0.0
    if np.any(negative):
        logger.debug("clipping %d negative eigenvalues (worst %.3e)",
                     int(negative.sum()), float(values.min()))
        values = np.where(negative, 0.0, values)

    # deterministic sign: largest-magnitude entry of each column positive
    peak = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[peak, np.arange(vectors.shape[1])])
    signs[signs == 0.0] = 1.0
    vectors = vectors * signs[None, :]

    psi = vectors / np.sqrt(op.manifold.weights)[:, None]
    return ConcentrationSpectrum(
        eigenvalues=values,
        slepian_values=psi,
        manifold=op.manifold,
        wavenumber=op.wavenumber,
    )


def dof_numerical(spectrum, fraction: float) -> int:
    """Smallest N whose top-N eigenvalue sum reaches `fraction` of the total.

    `spectrum` may be a :class:`ConcentrationSpectrum` or a bare
    nonincreasing eigenvalue sequence.
    """
    if not (0.0 < fraction < 1.0):
        raise ValueError("fraction must lie strictly between 0 and 1")
    values = np.asarray(getattr(spectrum, "eigenvalues", spectrum), dtype=float)
    cumulative = np.cumsum(values)
    total = cumulative[-1]
    if total <= 0.0:
        raise ValueError("eigenvalue sum must be positive")
    return int(np.searchsorted(cumulative, fraction * total)) + 1


def dof_theoretical(kind: str, kappa_L: float):
    """Closed-form DoF estimate, or None where no formula exists.

    linear: kappa_L/pi, circular: kappa_L, square: kappa_L**2/(4*pi);
    the paraboloid and custom shapes have no closed form.  The value is
    returned unfloored.
    """
    if kappa_L <= 0.0:
        raise ValueError("kappa_L must be positive")
    if kind == "linear":
        return kappa_L / np.pi
    if kind == "circular":
        return float(kappa_L)
    if kind == "square":
        return kappa_L ** 2 / (4.0 * np.pi)
    if kind in ("paraboloid", "custom"):
        return None
    raise ValueError(f"unknown geometry kind {kind!r}")


@dataclass(frozen=True)
class DofReport:
    """Degrees-of-freedom summary for one kappa*L value."""

    kappa_L: float
    dof_th: float | None
    dof_90: int
    dof_99: int
    eigenvalues_scaled: np.ndarray

    def __post_init__(self):
        if not (0 < self.dof_90 <= self.dof_99 <= len(self.eigenvalues_scaled)):
            raise ValueError("DoF counts must satisfy dof_90 <= dof_99 <= n")


def dof_sweep(spec: GeometrySpec, kappa_L_values) -> list[DofReport]:
    """One DofReport per kappa*L, fixing L and varying the wavelength.

    `kappa_L_values` must be positive and ascending.  The manifold is
    built once; each kappa*L sets beta = 2*pi*L/(kappa*L).
    """
    kl = [float(v) for v in kappa_L_values]
    if not kl or any(v <= 0.0 for v in kl) or any(b <= a for a, b in zip(kl, kl[1:])):
        raise ValueError("kappa_L values must be positive and strictly ascending")
    manifold = build_manifold(spec)
    reports = []
    for kappa_L in kl:
        k = Wavenumber.from_kappa(kappa_L / spec.aperture_L)
        spectrum = solve(assemble(manifold, k))
        reports.append(
            DofReport(
                kappa_L=kappa_L,
                dof_th=dof_theoretical(spec.kind, kappa_L),
                dof_90=dof_numerical(spectrum, 0.90),
                dof_99=dof_numerical(spectrum, 0.99),
                eigenvalues_scaled=spectrum.scaled,
            )
        )
    return reports


def write_sweep_csv(reports, path) -> None:
    """Scaled eigenvalues per kappa*L: columns kappa_L, index, lambda_scaled."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["kappa_L", "index", "lambda_scaled"])
        for report in reports:
            for i, value in enumerate(report.eigenvalues_scaled, start=1):
                writer.writerow([repr(float(report.kappa_L)), i, repr(float(value))])


def write_summary_csv(reports, path) -> None:
    """DoF summary: columns kappa_L, dof_th, dof_90, dof_99 (dof_th may be empty)."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["kappa_L", "dof_th", "dof_90", "dof_99"])
        for report in reports:
            dof_th = "" if report.dof_th is None else repr(float(report.dof_th))
            writer.writerow([repr(float(report.kappa_L)), dof_th, report.dof_90, report.dof_99])
