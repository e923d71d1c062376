"""Single-snapshot line-spectrum estimation toolkit.

Recovers frequencies and amplitudes of a superposition of complex sinusoids
from one vector of noisy uniform samples, via the shift-invariance (ESPRIT)
matrix pencil, with a MUSIC baseline, closed-form stability certificates, and
a reproducible Monte Carlo benchmark harness.
"""

from .exceptions import (
    EstimationError,
    ModelGenerationError,
    PeakPickingError,
    RankDeficiencyError,
    SparsityDetectionError,
)
from .signal_model import (
    AmplitudeLaw,
    NoiseSpec,
    SampleVector,
    SpectralModel,
    add_noise,
    derive_seed,
    hausdorff_distance,
    make_rng,
    min_separation,
    nsr,
    nu_for_target_nsr,
    pairwise_torus_distances,
    random_model,
    synthesize,
    torus_distance,
)
from .hankel import (
    HankelPencil,
    VandermondeMatrix,
    build_pencil,
    decomposition_residual,
    imaging_vector,
    samples_from_pencil,
    vandermonde,
)
from .numerics import (
    SvdResult,
    eigenvalues,
    least_squares,
    spectral_norm,
    svd,
    truncated_pinv,
)
from .esprit import (
    EspritEstimator,
    EstimationResult,
    eigenvalue_to_frequency,
    estimate_sparsity,
    full_shift_matrix,
    ss_esprit,
)
from .music import MusicEstimator, Pseudospectrum, music_estimate, pseudospectrum
from .bounds import (
    BoundReport,
    EtaBounds,
    ScalingRow,
    SeparationCheck,
    eigenvalue_hausdorff,
    elsner_bound,
    eta_asymptotic,
    eta_bound,
    evaluate_bounds,
    hankel_noise_norm_scaling,
    ingham_lower,
    ingham_upper,
    rayleigh_quotient,
    separation_ok,
    separation_threshold_rl,
    sigma_bounds,
    weyl_check,
)
from .experiments import (
    ExperimentConfig,
    Figure2Result,
    MethodAggregate,
    SweepResult,
    TrialRecord,
    fig1_config,
    run_figure2,
    run_sweep,
    timing_comparison,
)

__version__ = "0.1.0"

__all__ = [
    "AmplitudeLaw",
    "BoundReport",
    "EspritEstimator",
    "EstimationError",
    "EstimationResult",
    "EtaBounds",
    "ExperimentConfig",
    "Figure2Result",
    "HankelPencil",
    "MethodAggregate",
    "ModelGenerationError",
    "MusicEstimator",
    "NoiseSpec",
    "PeakPickingError",
    "Pseudospectrum",
    "RankDeficiencyError",
    "SampleVector",
    "ScalingRow",
    "SeparationCheck",
    "SparsityDetectionError",
    "SpectralModel",
    "SvdResult",
    "SweepResult",
    "TrialRecord",
    "VandermondeMatrix",
    "add_noise",
    "build_pencil",
    "decomposition_residual",
    "derive_seed",
    "eigenvalue_hausdorff",
    "eigenvalue_to_frequency",
    "eigenvalues",
    "elsner_bound",
    "estimate_sparsity",
    "eta_asymptotic",
    "eta_bound",
    "evaluate_bounds",
    "fig1_config",
    "full_shift_matrix",
    "hankel_noise_norm_scaling",
    "hausdorff_distance",
    "imaging_vector",
    "ingham_lower",
    "ingham_upper",
    "least_squares",
    "make_rng",
    "min_separation",
    "music_estimate",
    "nsr",
    "nu_for_target_nsr",
    "pairwise_torus_distances",
    "pseudospectrum",
    "random_model",
    "rayleigh_quotient",
    "run_figure2",
    "run_sweep",
    "samples_from_pencil",
    "separation_ok",
    "separation_threshold_rl",
    "sigma_bounds",
    "spectral_norm",
    "ss_esprit",
    "svd",
    "synthesize",
    "timing_comparison",
    "torus_distance",
    "truncated_pinv",
    "vandermonde",
    "weyl_check",
]
