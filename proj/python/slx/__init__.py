"""Extension theory of half-line Sturm-Liouville operators with matrix
potential: Weyl functions, boundary-triplet transforms, Krein-type
resolvent formulas, spectral multiplicity tables and an independent
finite-difference oracle."""

from ._slx import (
    Error,
    SpectralMeasure,
    __version__,
    ac_band,
    ac_closure,
    boundary_value,
    branch_sqrt,
    canonical_parameter,
    direct_sum_weyl,
    dirichlet_resolvent,
    energy_identity,
    fd_halfline_spectrum,
    fd_interval_spectrum,
    interval_formula,
    invariant_max_normal,
    kato_check,
    krein_kernel,
    krein_resolvent,
    multiplicity_table,
    regularize_at_i,
    run_acceptance,
    transform_parameter,
    transform_weyl,
    weyl,
    weyl_of_extension,
)

__all__ = [
    "Error",
    "SpectralMeasure",
    "__version__",
    "ac_band",
    "ac_closure",
    "boundary_value",
    "branch_sqrt",
    "canonical_parameter",
    "direct_sum_weyl",
    "dirichlet_resolvent",
    "energy_identity",
    "fd_halfline_spectrum",
    "fd_interval_spectrum",
    "interval_formula",
    "invariant_max_normal",
    "kato_check",
    "krein_kernel",
    "krein_resolvent",
    "multiplicity_table",
    "regularize_at_i",
    "run_acceptance",
    "transform_parameter",
    "transform_weyl",
    "weyl",
    "weyl_of_extension",
]
