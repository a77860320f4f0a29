"""Bound entangled states from unextendible product bases, their entanglement
witnesses, and certified robustness balls, with randomized verification."""

__version__ = "0.1.0"

from .operators import (
    Bipartition,
    DensityMatrix,
    EigenDecomposition,
    HermitianOperator,
    HilbertStructure,
    PPTAllCuts,
    PPTCheck,
    PSD_TOL,
    all_bipartitions,
    eig_hermitian,
    is_ppt,
    is_ppt_all_cuts,
    partial_transpose,
    purity,
)
from .upb import (
    CATALOG,
    ProductState,
    UPBSet,
    build_complete_basis,
    build_pyramid,
    build_shifts,
    build_tiles,
    get_upb,
    omega_state,
)
from .witness import (
    LambdaResult,
    SeesawConfig,
    SpectralSplit,
    Witness,
    build_witness,
    compute_lambda,
    compute_lambda_multipartite,
    minimum_overlap,
    spectral_split,
    witness_from_operator,
    witness_value,
)
from .gridsearch import GridMinimum, grid_minimum_overlap
from .robustness import (
    CrossingResult,
    LineFamily,
    MaximalRobustnessReport,
    MixtureDecomposition,
    RobustnessProfile,
    ball_membership,
    crossing_x0,
    entanglement_threshold,
    entanglement_threshold_upb,
    family_member,
    in_gurvits_ball,
    minimizer_direction,
    mixture_tau,
    ppt_mixing_threshold,
    radius_from_witness,
    radius_y0,
    robustness_profile,
    separable_mixing_threshold,
    verify_maximal_robustness,
)
from .montecarlo import (
    BallFractionEstimate,
    SamplerConfig,
    VerificationOutcome,
    ball_fraction_estimate,
    sample_hs_density,
    sample_random_product_separable,
    verify_ball_robustness,
    verify_separable_mixing,
)

__all__ = [
    "Bipartition",
    "DensityMatrix",
    "EigenDecomposition",
    "HermitianOperator",
    "HilbertStructure",
    "PPTAllCuts",
    "PPTCheck",
    "PSD_TOL",
    "all_bipartitions",
    "eig_hermitian",
    "is_ppt",
    "is_ppt_all_cuts",
    "partial_transpose",
    "purity",
    "CATALOG",
    "ProductState",
    "UPBSet",
    "build_complete_basis",
    "build_pyramid",
    "build_shifts",
    "build_tiles",
    "get_upb",
    "omega_state",
    "LambdaResult",
    "SeesawConfig",
    "SpectralSplit",
    "Witness",
    "build_witness",
    "compute_lambda",
    "compute_lambda_multipartite",
    "minimum_overlap",
    "spectral_split",
    "witness_from_operator",
    "witness_value",
    "GridMinimum",
    "grid_minimum_overlap",
    "CrossingResult",
    "LineFamily",
    "MaximalRobustnessReport",
    "MixtureDecomposition",
    "RobustnessProfile",
    "ball_membership",
    "crossing_x0",
    "entanglement_threshold",
    "entanglement_threshold_upb",
    "family_member",
    "in_gurvits_ball",
    "minimizer_direction",
    "mixture_tau",
    "ppt_mixing_threshold",
    "radius_from_witness",
    "radius_y0",
    "robustness_profile",
    "separable_mixing_threshold",
    "verify_maximal_robustness",
    "BallFractionEstimate",
    "SamplerConfig",
    "VerificationOutcome",
    "ball_fraction_estimate",
    "sample_hs_density",
    "sample_random_product_separable",
    "verify_ball_robustness",
    "verify_separable_mixing",
]
