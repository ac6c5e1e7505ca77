"""Shared fixtures and oracles for the test suite.

Expensive eigensolves and the Monte-Carlo reports are memoized per
session so module tests and the acceptance gate reuse them.  The
acceptance tests record one [PASS]/[FAIL] line per criterion which is
echoed in the terminal summary.
"""

import pytest

from helpers import _CRITERION_LINES

from slepianlis import (
    ExperimentConfig,
    GeometrySpec,
    Wavenumber,
    assemble,
    build_manifold,
    run_experiment,
    solve,
)


def pytest_terminal_summary(terminalreporter):
    if _CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(_CRITERION_LINES):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def solved():
    """Memoized (kind, kappa_L, resolution[, aperture]) -> spectrum."""
    cache = {}

    def get(kind, kappa_L, resolution, aperture=1.0):
        key = (kind, round(float(kappa_L), 9), int(resolution), float(aperture))
        if key not in cache:
            manifold = build_manifold(GeometrySpec(kind, aperture, int(resolution)))
            k = Wavenumber.from_kappa(float(kappa_L) / aperture)
            cache[key] = solve(assemble(manifold, k))
        return cache[key]

    return get


@pytest.fixture(scope="session")
def channel_reports():
    """Default-configuration 1000-trial reports, one per scenario mode."""
    cache = {}

    def get(mode):
        if mode not in cache:
            cache[mode] = run_experiment(ExperimentConfig(scenario_mode=mode))
        return cache[mode]

    return get
