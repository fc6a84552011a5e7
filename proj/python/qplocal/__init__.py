"""Finite-volume Green's function and localization laboratory for
quasi-periodic Schrodinger operators with degenerate weights."""

from ._qplocal import (  # noqa: F401
    AnalyticTorusFunction,
    BadSetReport,
    DecayFit,
    EigenReport,
    FrequencyVector,
    GoodnessVerdict,
    GreensMatrix,
    LatticeInterval,
    LyapunovEstimate,
    ModelParameters,
    OrbitHitReport,
    Phase,
    SingularRestrictionError,
    SpectrumDistance,
    TridiagonalMatrix,
    WeightFloorError,
    WeightFunction,
    assemble_H,
    assemble_jacobi,
    bad_set_estimate,
    calibration_frequencies,
    decay_fit,
    decay_rate_of_eigenvector,
    diophantine_margin,
    distance_to_spectrum,
    eigensolve_jacobi,
    fourier_truncate,
    greens,
    invert_tridiagonal,
    ipr,
    lyapunov,
    orbit,
    orbit_hit_count,
    pencil_eigensolve,
    poisson_reconstruct,
    sublevel_measure,
    verify_ldt_bounds,
    weight_zero_analysis,
    weighted_inner_product,
)

__version__ = "0.1.0"
