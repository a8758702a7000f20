"""Pull rumor spreading on the complete graph.

Thin wrapper over the C++ core; see ``pullsim._core`` for the full list.
"""

from ._core import (
    CapacityError,
    DegenerateInputError,
    UsageError,
    ensemble,
    exact_informed_pmf,
    exact_J_pmf,
    h_iterate,
    j_moments,
    kde_density,
    lambert_w,
    lattice_mean,
    lattice_variance,
    limit_samples,
    modulus_recursion_residual,
    phi,
    phi_planar,
    run,
    runtime_centering,
    sample_martingale,
    scott_bandwidth,
    subsequence,
    theorem1_distance,
    tv_distance,
    verify_tv_bound,
)

__version__ = "0.1.0"
