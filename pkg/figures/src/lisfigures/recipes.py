"""The four figure kinds and their CSV schemas.

Every renderer validates its input columns before touching matplotlib
and raises :class:`SchemaError` naming the file and the missing or
malformed column.  Rendering is deterministic: the same CSV bytes give
the same image bytes on one build.
"""

import csv
import math
import os
import re
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

KINDS = ("eigen-map", "slepian-panels", "spectra-panels", "error-whiskers")

SWEEP_COLUMNS = ("kappa_L", "index", "lambda_scaled")
SUMMARY_COLUMNS = ("kappa_L", "dof_th", "dof_90", "dof_99")
FUNCTIONS_COLUMNS = ("node", "x", "y", "z", "weight")
PATTERNS_COLUMNS = ("psi_index", "theta", "phi", "magnitude", "phase")
REPORT_COLUMNS = ("N", "basis", "mean", "min", "max")

# heat-map color floor; eigenvalues decay past 1e-8 carry no visual
# information at the overlay scales
_LOG_FLOOR = -8.0


class SchemaError(ValueError):
    """Input CSV does not match the documented schema."""


@dataclass(frozen=True)
class FigureRecipe:
    """One figure: input CSV paths, figure kind, output image path."""

    kind: str
    inputs: tuple
    output: str

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SchemaError(f"unknown figure kind {self.kind!r}, expected one of {KINDS}")
        object.__setattr__(self, "inputs", tuple(str(p) for p in self.inputs))
        object.__setattr__(self, "output", str(self.output))
        if not self.inputs:
            raise SchemaError("at least one input CSV is required")


def _load(path, required):
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            header = reader.fieldnames
            rows = list(reader)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    if header is None:
        raise SchemaError(f"{path}: empty file")
    missing = [c for c in required if c not in header]
    if missing:
        raise SchemaError(f"{path}: missing columns {missing} (header {header})")
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return header, rows


def _floats(rows, path, name):
    try:
        return np.array([float(r[name]) for r in rows])
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"{path}: column {name!r} is not numeric") from exc


def _ints(rows, path, name):
    values = _floats(rows, path, name)
    return values.astype(int)


def _edges(centers):
    c = np.asarray(centers, dtype=float)
    if c.size == 1:
        half = max(0.5, 0.05 * abs(c[0]))
        return np.array([c[0] - half, c[0] + half])
    mids = 0.5 * (c[1:] + c[:-1])
    return np.concatenate([[2.0 * c[0] - mids[0]], mids, [2.0 * c[-1] - mids[-1]]])


def _classify_eigen_inputs(inputs):
    sweep = summary = None
    if len(inputs) > 2:
        raise SchemaError("eigen-map takes the sweep CSV and optionally the summary CSV")
    for path in inputs:
        header, rows = _load(path, ())
        if all(c in header for c in SWEEP_COLUMNS):
            if sweep is not None:
                raise SchemaError(f"{path}: second sweep CSV given")
            sweep = (path, rows)
        elif all(c in header for c in SUMMARY_COLUMNS):
            if summary is not None:
                raise SchemaError(f"{path}: second summary CSV given")
            summary = (path, rows)
        else:
            raise SchemaError(
                f"{path}: header matches neither the sweep columns {SWEEP_COLUMNS}"
                f" nor the summary columns {SUMMARY_COLUMNS}"
            )
    if sweep is None:
        raise SchemaError("eigen-map needs the sweep CSV (kappa_L,index,lambda_scaled)")
    return sweep, summary


def _render_eigen_map(recipe):
    (sweep_path, sweep_rows), summary = _classify_eigen_inputs(recipe.inputs)
    kl = _floats(sweep_rows, sweep_path, "kappa_L")
    idx = _ints(sweep_rows, sweep_path, "index")
    val = _floats(sweep_rows, sweep_path, "lambda_scaled")
    if idx.min() < 1:
        raise SchemaError(f"{sweep_path}: eigenvalue indices must be 1-based")

    kappas = np.unique(kl)
    grid = np.full((int(idx.max()), kappas.size), np.nan)
    grid[idx - 1, np.searchsorted(kappas, kl)] = val

    # trim rows carrying no visible level, keeping headroom above the
    # deepest overlay line
    alive = np.where(np.nanmax(grid, axis=1) >= 10.0 ** _LOG_FLOOR)[0]
    cap = int(alive[-1]) + 1 if alive.size else grid.shape[0]
    if summary is not None:
        cap = max(cap, int(_floats(summary[1], summary[0], "dof_99").max()) + 3)
    cap = min(max(cap, 8), grid.shape[0])

    fig, ax = plt.subplots(figsize=(7.0, 4.6))
    colors = np.log10(np.clip(grid[:cap], 10.0 ** (_LOG_FLOOR - 8), None))
    mesh = ax.pcolormesh(
        _edges(kappas / np.pi),
        np.arange(0.5, cap + 1.0),
        colors,
        cmap="viridis",
        vmin=_LOG_FLOOR,
        vmax=0.0,
        shading="flat",
    )
    fig.colorbar(mesh, ax=ax, label=r"$\log_{10}(\lambda_i/\lambda_1)$")

    if summary is not None:
        summary_path, summary_rows = summary
        skl = _floats(summary_rows, summary_path, "kappa_L") / np.pi
        th_text = [r["dof_th"] for r in summary_rows]
        has_th = np.array([t not in ("", None) for t in th_text])
        if has_th.any():
            th = np.array([float(t) for t, keep in zip(th_text, has_th) if keep])
            ax.plot(skl[has_th], th, "w-", lw=1.8, label=r"DoF$_{th}$")
        ax.plot(skl, _floats(summary_rows, summary_path, "dof_90"),
                "w--", lw=1.5, label=r"DoF$_{90\%}$")
        ax.plot(skl, _floats(summary_rows, summary_path, "dof_99"),
                "w:", lw=1.8, label=r"DoF$_{99\%}$")
        ax.legend(loc="upper left", framealpha=0.35)

    ax.set_xlabel(r"$\kappa L / \pi$")
    ax.set_ylabel("eigenvalue index $i$")
    fig.tight_layout()
    return fig


def _panel_grid(count):
    ncols = int(math.ceil(math.sqrt(count)))
    nrows = int(math.ceil(count / ncols))
    return nrows, ncols


def _segment_parameter(x, y, z):
    """Natural 1-D coordinate of the nodes, or None for surface clouds."""
    coords = np.column_stack([x, y, z])
    spans = coords.max(axis=0) - coords.min(axis=0)
    order = np.argsort(spans)
    if spans[order[2]] > 0.0 and spans[order[1]] <= 1e-9 * spans[order[2]]:
        return coords[:, order[2]], "position"
    cx, cy = x.mean(), y.mean()
    radius = np.hypot(x - cx, y - cy)
    if spans[2] <= 1e-12 and radius.max() - radius.min() <= 1e-9 * radius.mean():
        return np.arctan2(y - cy, x - cx), "angle"
    return None, None


def _render_slepian_panels(recipe):
    if len(recipe.inputs) != 1:
        raise SchemaError("slepian-panels takes exactly one functions CSV")
    path = recipe.inputs[0]
    header, rows = _load(path, FUNCTIONS_COLUMNS)
    psi_names = sorted(
        (c for c in header if re.fullmatch(r"psi_\d+", c)),
        key=lambda c: int(c.split("_")[1]),
    )
    if not psi_names:
        raise SchemaError(f"{path}: no psi_<i> columns found")

    x = _floats(rows, path, "x")
    y = _floats(rows, path, "y")
    z = _floats(rows, path, "z")
    param, label = _segment_parameter(x, y, z)

    nrows, ncols = _panel_grid(len(psi_names))
    fig, axes = plt.subplots(
        nrows, ncols, figsize=(3.0 * ncols, 2.3 * nrows), squeeze=False,
        sharex=(param is not None),
    )
    for k, name in enumerate(psi_names):
        ax = axes[k // ncols][k % ncols]
        values = _floats(rows, path, name)
        if param is not None:
            order = np.argsort(param)
            ax.plot(param[order], values[order], lw=1.2)
            ax.axhline(0.0, color="0.8", lw=0.6, zorder=0)
        else:
            span = np.abs(values).max() or 1.0
            ax.scatter(x, y, c=values, s=6, cmap="coolwarm", vmin=-span, vmax=span)
            ax.set_aspect("equal")
        ax.set_title(name, fontsize=9)
    for k in range(len(psi_names), nrows * ncols):
        axes[k // ncols][k % ncols].set_axis_off()
    if param is not None:
        for ax in axes[-1]:
            ax.set_xlabel(label, fontsize=8)
    fig.tight_layout()
    return fig


def _render_spectra_panels(recipe):
    if len(recipe.inputs) != 1:
        raise SchemaError("spectra-panels takes exactly one patterns CSV")
    path = recipe.inputs[0]
    _, rows = _load(path, PATTERNS_COLUMNS)
    psi = _ints(rows, path, "psi_index")
    theta = _floats(rows, path, "theta")
    phi = _floats(rows, path, "phi")
    magnitude = _floats(rows, path, "magnitude")

    ids = np.unique(psi)
    nrows, ncols = _panel_grid(ids.size)
    fig, axes = plt.subplots(
        nrows, ncols, figsize=(3.0 * ncols, 2.4 * nrows),
        squeeze=False, sharex=True, sharey=True,
    )
    mappable = None
    for k, i in enumerate(ids):
        ax = axes[k // ncols][k % ncols]
        mask = psi == i
        peak = magnitude[mask].max()
        level = magnitude[mask] / peak if peak > 0.0 else magnitude[mask]
        mappable = ax.scatter(phi[mask], theta[mask], c=level, s=4,
                              cmap="viridis", vmin=0.0, vmax=1.0, rasterized=True)
        ax.set_title(f"psi_{i}", fontsize=9)
        ax.set_xlim(-np.pi, np.pi)
        ax.set_ylim(np.pi, 0.0)
    for k in range(ids.size, nrows * ncols):
        axes[k // ncols][k % ncols].set_axis_off()
    for ax in axes[-1]:
        ax.set_xlabel(r"$\phi$", fontsize=8)
    for row in axes:
        row[0].set_ylabel(r"$\theta$", fontsize=8)
    fig.colorbar(mappable, ax=axes, label="|pattern| / panel max", shrink=0.85)
    return fig


def _render_error_whiskers(recipe):
    if len(recipe.inputs) != 1:
        raise SchemaError("error-whiskers takes exactly one channel report CSV")
    path = recipe.inputs[0]
    _, rows = _load(path, REPORT_COLUMNS)
    N = _ints(rows, path, "N")
    mean = _floats(rows, path, "mean")
    low = _floats(rows, path, "min")
    high = _floats(rows, path, "max")
    basis = [r["basis"] for r in rows]

    names = list(dict.fromkeys(basis))
    offsets = np.linspace(-0.15, 0.15, len(names)) if len(names) > 1 else [0.0]
    markers = ["o", "s", "^", "d"]

    fig, ax = plt.subplots(figsize=(7.0, 4.4))
    for j, name in enumerate(names):
        mask = np.array([b == name for b in basis])
        order = np.argsort(N[mask])
        n = N[mask][order]
        m = mean[mask][order]
        yerr = np.vstack([
            np.clip(m - low[mask][order], 0.0, None),
            np.clip(high[mask][order] - m, 0.0, None),
        ])
        ax.errorbar(n + offsets[j], m, yerr=yerr, fmt=markers[j % len(markers)] + "-",
                    ms=4, lw=1.2, capsize=3, label=name)
    ax.set_yscale("log")
    ax.set_xlabel("truncation size $N$")
    ax.set_ylabel("relative L2 misfit")
    ax.grid(True, which="both", alpha=0.25)
    ax.legend()
    fig.tight_layout()
    return fig


_RENDERERS = {
    "eigen-map": _render_eigen_map,
    "slepian-panels": _render_slepian_panels,
    "spectra-panels": _render_spectra_panels,
    "error-whiskers": _render_error_whiskers,
}


def render(recipe: FigureRecipe) -> str:
    """Render the recipe and write the image; returns the output path."""
    fig = _RENDERERS[recipe.kind](recipe)
    directory = os.path.dirname(recipe.output)
    if directory:
        os.makedirs(directory, exist_ok=True)
    try:
        fig.savefig(recipe.output, dpi=150)
    finally:
        plt.close(fig)
    return recipe.output
