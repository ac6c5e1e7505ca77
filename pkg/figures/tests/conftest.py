"""Fixtures: input CSVs produced by the slepianlis command line.

The renderers are exercised against real outputs of the primary CLI,
invoked as a subprocess so the only contact surface is the documented
file formats.
"""

import subprocess
import sys

import pytest

from figure_helpers import _CRITERION_LINES


def pytest_terminal_summary(terminalreporter):
    if _CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(_CRITERION_LINES):
            terminalreporter.write_line(line)


def run_primary(args):
    proc = subprocess.run(
        [sys.executable, "-m", "slepianlis.cli", *args],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, f"slepianlis {' '.join(args)} failed:\n{proc.stderr}"


@pytest.fixture(scope="session")
def primary_csvs(tmp_path_factory):
    """Reference CSVs: DoF sweeps, function/pattern tables, channel report."""
    root = tmp_path_factory.mktemp("primary")
    run_primary(["dofs", "--geometry", "linear", "--nodes", "1024",
                 "--kappa-l", "4pi", "8pi", "12pi",
                 "--out-dir", str(root / "dofs_linear")])
    run_primary(["dofs", "--geometry", "circular", "--nodes", "1024",
                 "--kappa-l", "4pi", "8pi", "12pi",
                 "--out-dir", str(root / "dofs_circular")])
    run_primary(["dofs", "--geometry", "paraboloid", "--nodes", "2000",
                 "--kappa-l", "2pi", "4pi", "6pi", "8pi", "10pi",
                 "--out-dir", str(root / "dofs_paraboloid")])
    run_primary(["slepian", "--geometry", "linear", "--nodes", "256",
                 "--count", "9", "--out-dir", str(root / "slepian")])
    run_primary(["spectra", "--geometry", "circular", "--nodes", "256",
                 "--count", "9", "--grid-size", "400",
                 "--out-dir", str(root / "spectra")])
    run_primary(["channel", "--mode", "parallel",
                 "--out-dir", str(root / "channel_parallel")])
    run_primary(["channel", "--mode", "random_tilt",
                 "--out-dir", str(root / "channel_random_tilt")])
    return root
