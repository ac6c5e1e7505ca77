"""Closed-form kernel values and the symmetrized Nystrom operator."""

import math

import numpy as np
import pytest

from helpers import prolate_oracle
from slepianlis import GeometrySpec, Wavenumber, assemble, build_manifold, kernel_value
from slepianlis.kernel import _sinc

TWO_PI = 2.0 * math.pi


class TestWavenumber:
    def test_from_beta(self):
        k = Wavenumber.from_beta(0.01)
        assert k.kappa == pytest.approx(TWO_PI / 0.01, rel=1e-15)

    def test_from_kappa(self):
        k = Wavenumber.from_kappa(4.0 * math.pi)
        assert k.beta == pytest.approx(0.5, rel=1e-15)

    def test_inconsistent_pair_rejected(self):
        with pytest.raises(ValueError):
            Wavenumber(kappa=1.0, beta=1.0)

    def test_nonpositive_rejected(self):
        with pytest.raises(ValueError):
            Wavenumber(kappa=-TWO_PI, beta=-1.0)


class TestKernelValue:
    def test_coincident_points(self):
        k = Wavenumber.from_beta(0.5)
        assert kernel_value([1.0, 2.0, 3.0], [1.0, 2.0, 3.0], k) == 2.0 / 0.25

    def test_first_zero_at_half_wavelength(self):
        # sinc vanishes at kappa*r = pi, i.e. r = beta/2
        k = Wavenumber.from_beta(2.0)
        v = kernel_value([0.0, 0.0, 0.0], [1.0, 0.0, 0.0], k)
        assert abs(v) <= 1e-12 * (2.0 / k.beta ** 2)

    def test_depends_only_on_distance(self):
        k = Wavenumber.from_beta(1.0)
        a = kernel_value([0.0, 0.0, 0.0], [0.3, 0.4, 0.0], k)
        b = kernel_value([1.0, 1.0, 1.0], [1.0, 1.5, 1.0], k)
        assert a == pytest.approx(b, rel=1e-15)

    def test_bounded_by_value_at_origin(self):
        k = Wavenumber.from_beta(1.0)
        peak = 2.0 / k.beta ** 2
        rng = np.random.default_rng(7)
        for r in rng.uniform(-2.0, 2.0, size=(50, 3)):
            assert abs(kernel_value(r, [0.0, 0.0, 0.0], k)) <= peak

    def test_series_branch_is_continuous(self):
        below = _sinc(np.array(0.99e-4))
        above = _sinc(np.array(1.01e-4))
        assert below == pytest.approx(above, rel=1e-10)
        assert _sinc(np.array(0.0)) == 1.0


class TestAssemble:
    def test_trace_identity(self):
        # trace(A) = (2/beta**2)|M| holds exactly by construction
        k = Wavenumber.from_kappa(4.0 * math.pi)
        for kind, res in [("linear", 64), ("circular", 64), ("square", 64), ("paraboloid", 120)]:
            m = build_manifold(GeometrySpec(kind, aperture_L=1.0, resolution=res))
            op = assemble(m, k)
            expected = 2.0 / k.beta ** 2 * m.measure
            assert np.trace(op.matrix) == pytest.approx(expected, rel=1e-13)

    def test_symmetry_and_positive_semidefinite(self):
        m = build_manifold(GeometrySpec("circular", aperture_L=1.0, resolution=96))
        op = assemble(m, Wavenumber.from_kappa(6.0 * math.pi))
        scale = np.abs(op.matrix).max()
        assert np.abs(op.matrix - op.matrix.T).max() <= 1e-14 * scale
        eigs = np.linalg.eigvalsh(op.matrix)
        assert eigs.min() >= -1e-10 * eigs.max()

    def test_entries_match_pointwise_kernel(self):
        m = build_manifold(GeometrySpec("linear", aperture_L=1.0, resolution=8))
        k = Wavenumber.from_kappa(4.0 * math.pi)
        op = assemble(m, k)
        i, j = 1, 6
        expected = (
            math.sqrt(m.weights[i] * m.weights[j])
            * kernel_value(m.nodes[i], m.nodes[j], k)
        )
        assert op.matrix[i, j] == pytest.approx(expected, rel=1e-14)

    def test_mismatched_manifold_rejected(self):
        m = build_manifold(GeometrySpec("linear", aperture_L=1.0, resolution=8))
        op = assemble(m, Wavenumber.from_kappa(TWO_PI))
        from slepianlis.kernel import ConcentrationOperator

        with pytest.raises(ValueError):
            ConcentrationOperator(op.matrix[:4, :4], m, op.wavenumber)
        bad = op.matrix.copy()
        bad[0, 1] += 1.0
        with pytest.raises(ValueError):
            ConcentrationOperator(bad, m, op.wavenumber)


class TestSegmentOracle:
    """The segment operator against an independent 1-D discretization."""

    def test_eigenvalues_converge_to_fine_oracle(self):
        # n=512 segment at kappa*L = 4*pi against the oracle at n=4096.
        # The Nystrom error is O(h**2); measured gap 1.97e-5 on the
        # leading 20 eigenvalues, frozen with headroom below.
        kappa = 4.0 * math.pi
        m = build_manifold(GeometrySpec("linear", aperture_L=1.0, resolution=512))
        k = Wavenumber.from_kappa(kappa)
        values = np.linalg.eigvalsh(assemble(m, k).matrix)[::-1][:20]
        reference = prolate_oracle(kappa, 1.0, 4096, 20)
        assert np.max(np.abs(k.beta * values - reference)) < 2.5e-5

    def test_same_grid_equivalence_is_exact(self):
        # On identical grids the two discretizations are the same matrix
        # up to the scalar beta, so eigenvalues agree to roundoff.
        kappa = 4.0 * math.pi
        m = build_manifold(GeometrySpec("linear", aperture_L=1.0, resolution=512))
        k = Wavenumber.from_kappa(kappa)
        values = np.linalg.eigvalsh(assemble(m, k).matrix)[::-1][:20]
        reference = prolate_oracle(kappa, 1.0, 512, 20)
        assert np.max(np.abs(k.beta * values - reference)) < 1e-12

    def test_halving_the_step_quarters_the_error(self):
        kappa = 4.0 * math.pi
        reference = prolate_oracle(kappa, 1.0, 4096, 5)
        gaps = []
        for n in (128, 256, 512):
            m = build_manifold(GeometrySpec("linear", aperture_L=1.0, resolution=n))
            k = Wavenumber.from_kappa(kappa)
            values = np.linalg.eigvalsh(assemble(m, k).matrix)[::-1][:5]
            gaps.append(np.max(np.abs(k.beta * values - reference)))
        assert gaps[0] / gaps[1] == pytest.approx(4.0, rel=0.2)
        assert gaps[1] / gaps[2] == pytest.approx(4.0, rel=0.25)
