"""Renderer behavior on small handwritten CSVs."""

import csv
import math

import numpy as np
import pytest

pytest.importorskip("lisfigures")

from lisfigures import FigureRecipe, SchemaError, render

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    return str(path)


def sweep_csv(path, kappas=(6.28, 12.57), levels=(1.0, 0.9, 0.4, 1e-3, 1e-7, 1e-11)):
    rows = [
        [k, i, level * (0.5 + 0.5 * j)]
        for j, k in enumerate(kappas)
        for i, level in enumerate(levels, start=1)
    ]
    return write_csv(path, ["kappa_L", "index", "lambda_scaled"], rows)


def summary_csv(path, kappas=(6.28, 12.57)):
    rows = [[k, 2.0 * (j + 1), 2 + j, 4 + j] for j, k in enumerate(kappas)]
    return write_csv(path, ["kappa_L", "dof_th", "dof_90", "dof_99"], rows)


def segment_functions_csv(path, count=4, nodes=48):
    x = (np.arange(nodes) + 0.5) / nodes
    header = ["node", "x", "y", "z", "weight"] + [f"psi_{i}" for i in range(1, count + 1)]
    rows = [
        [j, x[j], 0.0, 0.0, 1.0 / nodes]
        + [math.sin((i + 1) * math.pi * x[j]) for i in range(count)]
        for j in range(nodes)
    ]
    return write_csv(path, header, rows)


def ring_functions_csv(path, nodes=64):
    angle = 2.0 * np.pi * (np.arange(nodes) + 0.5) / nodes
    header = ["node", "x", "y", "z", "weight", "psi_1", "psi_2"]
    rows = [
        [j, 0.5 * math.cos(angle[j]), 0.5 * math.sin(angle[j]), 0.0, 1.0 / nodes,
         math.cos(angle[j]), math.sin(angle[j])]
        for j in range(nodes)
    ]
    return write_csv(path, header, rows)


def cloud_functions_csv(path, nodes=60):
    rng = np.random.default_rng(0)
    pts = rng.uniform(0.0, 1.0, (nodes, 2))
    header = ["node", "x", "y", "z", "weight", "psi_1"]
    rows = [
        [j, pts[j, 0], pts[j, 1], 0.0, 1.0 / nodes, math.sin(6.0 * pts[j, 0])]
        for j in range(nodes)
    ]
    return write_csv(path, header, rows)


def patterns_csv(path, count=2, directions=40):
    rng = np.random.default_rng(1)
    header = ["psi_index", "theta", "phi", "magnitude", "phase"]
    rows = []
    for i in range(1, count + 1):
        theta = rng.uniform(0.0, np.pi, directions)
        phi = rng.uniform(-np.pi, np.pi, directions)
        for t, p in zip(theta, phi):
            rows.append([i, t, p, abs(math.sin(i * t)), 0.1])
    return write_csv(path, header, rows)


def report_csv(path, n_values=range(1, 9)):
    header = ["N", "basis", "mean", "min", "max"]
    rows = []
    for n in n_values:
        slep = 10.0 ** (-0.4 * n)
        four = 0.3 / n
        rows.append([n, "slepian", slep, 0.5 * slep, 2.0 * slep])
        rows.append([n, "fourier", four, 0.5 * four, 2.0 * four])
    return write_csv(path, header, rows)


def render_to(tmp_path, kind, inputs, name="figure.png"):
    out = tmp_path / name
    result = render(FigureRecipe(kind=kind, inputs=tuple(inputs), output=str(out)))
    assert result == str(out)
    data = out.read_bytes()
    assert data[:8] == PNG_MAGIC and len(data) > 2000
    return data


class TestEigenMap:
    def test_sweep_with_summary_overlays(self, tmp_path):
        render_to(tmp_path, "eigen-map",
                  [sweep_csv(tmp_path / "s.csv"), summary_csv(tmp_path / "m.csv")])

    def test_sweep_alone(self, tmp_path):
        render_to(tmp_path, "eigen-map", [sweep_csv(tmp_path / "s.csv")])

    def test_single_kappa_is_a_strip(self, tmp_path):
        render_to(tmp_path, "eigen-map", [sweep_csv(tmp_path / "s.csv", kappas=(9.42,))])

    def test_input_order_does_not_matter(self, tmp_path):
        s = sweep_csv(tmp_path / "s.csv")
        m = summary_csv(tmp_path / "m.csv")
        a = render_to(tmp_path, "eigen-map", [s, m], "a.png")
        b = render_to(tmp_path, "eigen-map", [m, s], "b.png")
        assert a == b

    def test_rendering_is_deterministic(self, tmp_path):
        s = sweep_csv(tmp_path / "s.csv")
        a = render_to(tmp_path, "eigen-map", [s], "a.png")
        b = render_to(tmp_path, "eigen-map", [s], "b.png")
        assert a == b

    def test_missing_sweep_rejected(self, tmp_path):
        m = summary_csv(tmp_path / "m.csv")
        with pytest.raises(SchemaError, match="sweep"):
            render(FigureRecipe("eigen-map", (m,), str(tmp_path / "x.png")))

    def test_duplicate_roles_rejected(self, tmp_path):
        a = sweep_csv(tmp_path / "a.csv")
        b = sweep_csv(tmp_path / "b.csv")
        with pytest.raises(SchemaError, match="second sweep"):
            render(FigureRecipe("eigen-map", (a, b), str(tmp_path / "x.png")))

    def test_unrelated_schema_rejected(self, tmp_path):
        bad = write_csv(tmp_path / "bad.csv", ["foo", "bar"], [[1, 2]])
        with pytest.raises(SchemaError, match="neither"):
            render(FigureRecipe("eigen-map", (bad,), str(tmp_path / "x.png")))

    def test_too_many_inputs_rejected(self, tmp_path):
        s = sweep_csv(tmp_path / "s.csv")
        with pytest.raises(SchemaError):
            render(FigureRecipe("eigen-map", (s, s, s), str(tmp_path / "x.png")))


class TestSlepianPanels:
    def test_segment_curves(self, tmp_path):
        render_to(tmp_path, "slepian-panels",
                  [segment_functions_csv(tmp_path / "f.csv")])

    def test_ring_curves(self, tmp_path):
        render_to(tmp_path, "slepian-panels", [ring_functions_csv(tmp_path / "f.csv")])

    def test_surface_scatter_fallback(self, tmp_path):
        render_to(tmp_path, "slepian-panels", [cloud_functions_csv(tmp_path / "f.csv")])

    def test_no_function_columns_rejected(self, tmp_path):
        bad = write_csv(tmp_path / "bad.csv",
                        ["node", "x", "y", "z", "weight"], [[0, 0, 0, 0, 1]])
        with pytest.raises(SchemaError, match="psi"):
            render(FigureRecipe("slepian-panels", (bad,), str(tmp_path / "x.png")))

    def test_single_input_enforced(self, tmp_path):
        f = segment_functions_csv(tmp_path / "f.csv")
        with pytest.raises(SchemaError, match="exactly one"):
            render(FigureRecipe("slepian-panels", (f, f), str(tmp_path / "x.png")))


class TestSpectraPanels:
    def test_two_patterns(self, tmp_path):
        render_to(tmp_path, "spectra-panels", [patterns_csv(tmp_path / "p.csv")])

    def test_nine_patterns_fill_a_three_by_three_grid(self, tmp_path):
        render_to(tmp_path, "spectra-panels",
                  [patterns_csv(tmp_path / "p.csv", count=9, directions=30)])

    def test_missing_column_rejected(self, tmp_path):
        bad = write_csv(tmp_path / "bad.csv",
                        ["psi_index", "theta", "phi", "phase"], [[1, 0, 0, 0]])
        with pytest.raises(SchemaError, match="magnitude"):
            render(FigureRecipe("spectra-panels", (bad,), str(tmp_path / "x.png")))

    def test_non_numeric_cell_rejected(self, tmp_path):
        bad = write_csv(tmp_path / "bad.csv",
                        ["psi_index", "theta", "phi", "magnitude", "phase"],
                        [[1, 0.3, "north", 1.0, 0.0]])
        with pytest.raises(SchemaError, match="phi"):
            render(FigureRecipe("spectra-panels", (bad,), str(tmp_path / "x.png")))


class TestErrorWhiskers:
    def test_two_bases(self, tmp_path):
        render_to(tmp_path, "error-whiskers", [report_csv(tmp_path / "r.csv")])

    def test_empty_table_rejected(self, tmp_path):
        bad = write_csv(tmp_path / "bad.csv", ["N", "basis", "mean", "min", "max"], [])
        with pytest.raises(SchemaError, match="no data"):
            render(FigureRecipe("error-whiskers", (bad,), str(tmp_path / "x.png")))

    def test_missing_file_rejected(self, tmp_path):
        with pytest.raises(SchemaError, match="cannot read"):
            render(FigureRecipe("error-whiskers", (str(tmp_path / "none.csv"),),
                                str(tmp_path / "x.png")))


class TestRecipe:
    def test_unknown_kind_rejected(self, tmp_path):
        with pytest.raises(SchemaError, match="kind"):
            FigureRecipe("pie-chart", ("a.csv",), "x.png")

    def test_empty_inputs_rejected(self):
        with pytest.raises(SchemaError):
            FigureRecipe("eigen-map", (), "x.png")

    def test_output_directory_created(self, tmp_path):
        s = sweep_csv(tmp_path / "s.csv")
        out = tmp_path / "nested" / "dir" / "figure.png"
        render(FigureRecipe("eigen-map", (s,), str(out)))
        assert out.exists()
