"""Command-line front end.

Four subcommands orchestrate the library: ``dofs`` (eigenvalue sweeps
and degrees-of-freedom summaries), ``slepian`` (node-sampled Slepian
functions), ``spectra`` (far-field patterns on the wavenumber sphere)
and ``channel`` (the two-segment Slepian/Fourier comparison).  Every
run writes its outputs plus a JSON manifest into ``--out-dir``; a
manifest can be replayed with ``--from-manifest`` to reproduce the
CSVs byte for byte on the same build.

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import datetime
import json
import os
import sys
import tempfile
from contextlib import nullcontext

import numpy as np
import scipy.linalg as sla

from . import __version__
from .channel import ExperimentConfig, run_experiment, write_report_csv, write_trials_csv
from .eigen_dof import (
    DEFAULT_KAPPA_L_GRID,
    NumericalError,
    dof_sweep,
    solve,
    write_summary_csv,
    write_sweep_csv,
)
from .geometry import KINDS, GeometryError, GeometrySpec, build_manifold, paraboloid_area
from .kernel import Wavenumber, assemble
from .spectrum import far_field, sphere_grid, write_patterns_csv

DEFAULT_NODES = {"linear": 512, "circular": 512, "square": 4096, "paraboloid": 4500}

_CONFIG_ERRORS = (GeometryError, ValueError, OSError, KeyError)
_NUMERICAL_ERRORS = (NumericalError, sla.LinAlgError, np.linalg.LinAlgError,
                     MemoryError, FloatingPointError, ArithmeticError)


def parse_kappa_l(text: str) -> float:
    """Parse a kappa*L value, either a float or a multiple of pi like '4pi'."""
    token = text.strip().lower()
    try:
        if token.endswith("pi"):
            factor = token[:-2].strip()
            return (float(factor) if factor else 1.0) * np.pi
        return float(token)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse kappa*L value {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slepianlis",
        description="Sensing-space analysis of continuous antenna apertures.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out-dir", default=".", help="directory for outputs (default: .)")
    common.add_argument("--seed", type=int, default=None, help="master RNG seed (default: 1)")
    common.add_argument("--threads", type=int, default=0,
                        help="cap BLAS worker threads (0 keeps the library default)")
    common.add_argument("--beta", type=float, default=None,
                        help="wavelength in meters (overridden by --kappa-l)")
    common.add_argument("--aperture", type=float, default=None,
                        help="equivalent aperture L in meters")
    common.add_argument("--from-manifest", default=None, metavar="PATH",
                        help="replay the resolved config of an earlier run")

    geom = argparse.ArgumentParser(add_help=False)
    geom.add_argument("--geometry", choices=KINDS, help="shape to analyze")
    geom.add_argument("--mesh", default=None, help="lismesh file (geometry 'custom')")
    geom.add_argument("--nodes", type=int, default=None,
                      help="target node/cell count (defaults per shape)")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dofs", parents=[common, geom],
                       help="eigenvalue sweep over kappa*L and DoF summary")
    p.add_argument("--kappa-l", type=parse_kappa_l, nargs="+", metavar="KL",
                   default=list(DEFAULT_KAPPA_L_GRID),
                   help="kappa*L grid, e.g. '4pi 8pi' (default 2pi..12pi)")
    p.add_argument("--dump-operator", action="store_true",
                   help="debug: dump each assembled operator matrix as CSV")

    p = sub.add_parser("slepian", parents=[common, geom],
                       help="export the first k Slepian functions on the nodes")
    p.add_argument("--kappa-l", type=parse_kappa_l, default=None,
                   help="kappa*L product, e.g. '4pi' (default 4pi, or from --beta)")
    p.add_argument("--count", type=int, default=9, help="number of functions (default 9)")

    p = sub.add_parser("spectra", parents=[common, geom],
                       help="export far-field patterns over the wavenumber sphere")
    p.add_argument("--kappa-l", type=parse_kappa_l, default=None,
                   help="kappa*L product, e.g. '4pi' (default 4pi, or from --beta)")
    p.add_argument("--count", type=int, default=9, help="number of patterns (default 9)")
    p.add_argument("--grid-size", type=int, default=2000,
                   help="sphere quadrature directions (default 2000)")

    p = sub.add_parser("channel", parents=[common],
                       help="two-segment Slepian vs Fourier comparison")
    p.add_argument("--config", default=None, metavar="PATH",
                   help="JSON experiment config (flags override its fields)")
    p.add_argument("--mode", choices=["parallel", "random_tilt"], default=None,
                   help="scenario mode (default from config, else parallel)")
    p.add_argument("--trials", type=int, default=None, help="Monte-Carlo trials")
    p.add_argument("--dump-trials", action="store_true",
                   help="also write the per-trial error table")
    return parser


def _geometry_spec(config: dict) -> GeometrySpec:
    return GeometrySpec(
        kind=config["geometry"],
        aperture_L=config["aperture"],
        resolution=config["nodes"],
        mesh_path=config.get("mesh"),
    )


def _resolve_geometry(args) -> dict:
    if args.geometry is None:
        raise ValueError("--geometry is required")
    nodes = args.nodes if args.nodes is not None else DEFAULT_NODES.get(args.geometry, 512)
    return {
        "geometry": args.geometry,
        "mesh": args.mesh,
        "aperture": args.aperture if args.aperture is not None else 1.0,
        "nodes": int(nodes),
    }


def _resolve_wavenumber(config: dict) -> Wavenumber:
    return Wavenumber.from_kappa(config["kappa_l"] / config["aperture"])


def _solve_spectrum(config: dict):
    manifold = build_manifold(_geometry_spec(config))
    if config["count"] > len(manifold):
        raise ValueError(f"count {config['count']} exceeds node count {len(manifold)}")
    if config["count"] < 1:
        raise ValueError("count must be at least 1")
    return manifold, solve(assemble(manifold, _resolve_wavenumber(config)))


def resolve_config(args) -> dict:
    """Turn parsed flags into the JSON-serializable resolved config."""
    seed = 1 if args.seed is None else int(args.seed)
    if args.command == "dofs":
        config = _resolve_geometry(args)
        values = sorted(set(float(v) for v in args.kappa_l))
        config.update(kappa_l=values, dump_operator=bool(args.dump_operator), seed=seed)
        return config
    if args.command in ("slepian", "spectra"):
        config = _resolve_geometry(args)
        if args.kappa_l is not None:
            kappa_l = float(args.kappa_l)
        elif args.beta is not None:
            kappa_l = 2.0 * np.pi * config["aperture"] / args.beta
        else:
            kappa_l = 4.0 * np.pi
        config.update(kappa_l=kappa_l, count=int(args.count), seed=seed)
        if args.command == "spectra":
            config["grid_size"] = int(args.grid_size)
        return config
    if args.command == "channel":
        base = ExperimentConfig() if args.config is None else ExperimentConfig.from_json(args.config)
        overrides = {}
        if args.mode is not None:
            overrides["scenario_mode"] = args.mode
        if args.trials is not None:
            overrides["trials"] = args.trials
        if args.beta is not None:
            overrides["beta"] = args.beta
        if args.aperture is not None:
            overrides["aperture_L"] = args.aperture
        if args.seed is not None:
            overrides["rng_seed"] = int(args.seed)
        experiment = ExperimentConfig.from_dict({**base.to_dict(), **overrides})
        config = experiment.to_dict()
        config["dump_trials"] = bool(args.dump_trials)
        return config
    raise ValueError(f"unknown command {args.command!r}")


def run_dofs(config: dict, out_dir: str):
    spec = _geometry_spec(config)
    reports = dof_sweep(spec, config["kappa_l"])
    sweep_path = os.path.join(out_dir, "dofs_sweep.csv")
    summary_path = os.path.join(out_dir, "dofs_summary.csv")
    write_sweep_csv(reports, sweep_path)
    write_summary_csv(reports, summary_path)
    outputs = ["dofs_sweep.csv", "dofs_summary.csv"]
    if config.get("dump_operator"):
        manifold = build_manifold(spec)
        for j, kappa_L in enumerate(config["kappa_l"]):
            op = assemble(manifold, Wavenumber.from_kappa(kappa_L / config["aperture"]))
            name = f"dofs_operator_{j}.csv"
            np.savetxt(
                os.path.join(out_dir, name),
                op.matrix,
                delimiter=",",
                header=f"symmetrized concentration operator, row-major, "
                       f"n={len(manifold)}, kappa_L={kappa_L!r}",
            )
            outputs.append(name)
    derived = {}
    if config["geometry"] == "paraboloid":
        derived["paraboloid_area"] = paraboloid_area(config["aperture"])
    return outputs, derived


def run_slepian(config: dict, out_dir: str):
    manifold, spectrum = _solve_spectrum(config)
    count = config["count"]
    # in-run contract check: exported functions must be orthonormal
    # under the quadrature weights
    psi = spectrum.slepian_values[:, :count]
    gram = (psi * manifold.weights[:, None]).T @ psi
    deviation = float(np.abs(gram - np.eye(count)).max())
    if deviation > 1e-8:
        raise NumericalError(f"orthonormality deviation {deviation:.3e} exceeds 1e-8")

    functions_path = os.path.join(out_dir, "slepian_functions.csv")
    with open(functions_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["node", "x", "y", "z", "weight"] +
                        [f"psi_{i}" for i in range(1, count + 1)])
        for j in range(len(manifold)):
            row = [j]
            row += [repr(float(v)) for v in manifold.nodes[j]]
            row.append(repr(float(manifold.weights[j])))
            row += [repr(float(psi[j, i])) for i in range(count)]
            writer.writerow(row)

    values_path = os.path.join(out_dir, "slepian_eigenvalues.csv")
    with open(values_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["index", "lambda", "lambda_scaled"])
        scaled = spectrum.scaled
        for i in range(count):
            writer.writerow([i + 1, repr(float(spectrum.eigenvalues[i])),
                             repr(float(scaled[i]))])
    return ["slepian_functions.csv", "slepian_eigenvalues.csv"], {}


def run_spectra(config: dict, out_dir: str):
    _, spectrum = _solve_spectrum(config)
    grid = sphere_grid(config["grid_size"])
    patterns = [(i + 1, far_field(i, spectrum, grid)) for i in range(config["count"])]
    path = os.path.join(out_dir, "spectra_patterns.csv")
    write_patterns_csv(patterns, path)
    return ["spectra_patterns.csv"], {}


def run_channel(config: dict, out_dir: str):
    experiment = ExperimentConfig.from_dict(
        {k: v for k, v in config.items() if k != "dump_trials"}
    )
    report = run_experiment(experiment)
    write_report_csv(report, os.path.join(out_dir, "channel_report.csv"))
    outputs = ["channel_report.csv"]
    if config.get("dump_trials"):
        write_trials_csv(report, os.path.join(out_dir, "channel_trials.csv"))
        outputs.append("channel_trials.csv")
    derived = {
        "rayleigh_distance": report.rayleigh,
        "resampled_scenarios": report.resampled,
        "near_field_trials": report.regimes.count("near"),
        "far_field_trials": report.regimes.count("far"),
    }
    return outputs, derived


_RUNNERS = {"dofs": run_dofs, "slepian": run_slepian, "spectra": run_spectra,
            "channel": run_channel}


def _write_manifest(path: str, payload: dict) -> None:
    # temp file plus rename keeps the manifest atomic next to outputs
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.from_manifest is not None:
            with open(args.from_manifest, "r", encoding="utf-8") as fh:
                manifest = json.load(fh)
            if manifest.get("command") != args.command:
                raise ValueError(
                    f"manifest records command {manifest.get('command')!r},"
                    f" not {args.command!r}"
                )
            config = manifest["config"]
        else:
            config = resolve_config(args)

        if args.threads > 0:
            from threadpoolctl import threadpool_limits
            limiter = threadpool_limits(limits=args.threads)
        else:
            limiter = nullcontext()

        out_dir = args.out_dir
        os.makedirs(out_dir, exist_ok=True)
        with limiter:
            outputs, derived = _RUNNERS[args.command](config, out_dir)
    except _NUMERICAL_ERRORS as exc:
        print(f"slepianlis {args.command}: numerical failure: {exc}", file=sys.stderr)
        return 3
    except _CONFIG_ERRORS as exc:
        print(f"slepianlis {args.command}: configuration error: {exc}", file=sys.stderr)
        return 2

    manifest_payload = {
        "command": args.command,
        "version": __version__,
        "rng_seed": config.get("seed", config.get("rng_seed")),
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "config": config,
        "outputs": outputs,
        "derived_constants": derived,
    }
    _write_manifest(os.path.join(out_dir, f"{args.command}_manifest.json"), manifest_payload)
    return 0


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
