"""Numerical laboratory for the 1D multifrequency inverse source problem."""

from .fixtures import FIXTURES, make_fixture
from .forward import (
    BoundaryDataset,
    ComplexFrequency,
    FrequencyGrid,
    SplitSource,
    boundary_data,
    boundary_data_complex,
    forward_solve,
    green,
    make_frequency_grid,
    ode_residual,
    split_source,
)
from .grid import (
    Grid,
    SourceFunction,
    h1_norm_sq,
    integrate,
    l2_norm_sq,
    m_constant,
    make_grid,
)
from .harness import Scenario, ScanRow, emit_csv, run_scenario
from .noise import add_noise
from .spectral import (
    Reconstruction,
    SpectralData,
    TailProfile,
    fourier_from_boundary,
    reconstruct_bandlimited,
    reconstruction_error_identity_check,
    truncation_tail,
)
from .stability import (
    SectorSample,
    StabilityReport,
    bound_rhs,
    epsilon_sq,
    high_freq_step_bound,
    i1_i2,
    i_complex,
    lemma21_ratios,
    lemma24_diagnostic,
    mu_lower,
    split_frequency,
    stability_report,
    tail_ratio,
    weighted_i_ratio,
)

__version__ = "0.1.0"
