"""Sensing-space analysis of continuous-aperture antennas.

The toolkit discretizes an arbitrarily shaped continuous antenna into
a node/weight quadrature, assembles the closed-form sinc concentration
kernel, and solves the resulting symmetric eigenproblem.  The outputs
are the antenna's spatial degrees of freedom, its Slepian basis
functions, their far-field spectra on the wavenumber sphere, and a
Monte-Carlo comparison of Slepian against Fourier expansions of
line-of-sight received fields.
"""

__version__ = "0.1.0"

from .channel import (
    BASES,
    ChannelExperimentReport,
    ExperimentConfig,
    LosScenario,
    ScenarioError,
    fourier_coefficients,
    fourier_index_set,
    los_field,
    normalized_error,
    random_smooth_current,
    rayleigh_distance,
    run_experiment,
    segment_nodes,
    slepian_basis_for_segment,
    slepian_coefficients,
    write_report_csv,
    write_trials_csv,
)
from .eigen_dof import (
    ConcentrationSpectrum,
    DofReport,
    NumericalError,
    dof_numerical,
    dof_sweep,
    dof_theoretical,
    solve,
    write_summary_csv,
    write_sweep_csv,
)
from .geometry import (
    GeometryError,
    GeometrySpec,
    SampledManifold,
    build_manifold,
    load_custom_mesh,
    paraboloid_area,
)
from .kernel import ConcentrationOperator, Wavenumber, assemble, kernel_value
from .spectrum import (
    FarFieldPattern,
    SphereGrid,
    far_field,
    far_field_samples,
    plancherel_check,
    plane_wave_fit,
    sphere_grid,
    write_patterns_csv,
)

__all__ = [
    "BASES",
    "ChannelExperimentReport",
    "ConcentrationOperator",
    "ConcentrationSpectrum",
    "DofReport",
    "ExperimentConfig",
    "FarFieldPattern",
    "GeometryError",
    "GeometrySpec",
    "LosScenario",
    "NumericalError",
    "SampledManifold",
    "ScenarioError",
    "SphereGrid",
    "Wavenumber",
    "assemble",
    "build_manifold",
    "dof_numerical",
    "dof_sweep",
    "dof_theoretical",
    "far_field",
    "far_field_samples",
    "fourier_coefficients",
    "fourier_index_set",
    "kernel_value",
    "load_custom_mesh",
    "los_field",
    "normalized_error",
    "paraboloid_area",
    "plancherel_check",
    "plane_wave_fit",
    "random_smooth_current",
    "rayleigh_distance",
    "run_experiment",
    "segment_nodes",
    "slepian_basis_for_segment",
    "slepian_coefficients",
    "solve",
    "sphere_grid",
    "write_patterns_csv",
    "write_report_csv",
    "write_summary_csv",
    "write_sweep_csv",
    "write_trials_csv",
    "__version__",
]
