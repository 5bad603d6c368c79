"""Numerical laboratory for phase-sensitive interference observables.

Spectral grids and states, split-operator evolution, translation-operator and
modular-momentum measurements, exact operator-matrix identities, scattering
off a thin flux line, and a seeded experiment runner.
"""

__version__ = "0.1.0"

from .errors import ModlabError, NumericalGuardError
from .evolve import (
    PotentialSpec,
    PropagatorConfig,
    TwoParticleState,
    free_far_field,
    product_state,
    propagate,
    propagate_two,
    translation_expect_two,
)
from .experiments import (
    DetectionSample,
    ExperimentConfig,
    classical_limit_experiment,
    random_walk_experiment,
    run,
    sample_detections,
    uncertainty_experiment,
)
from .grid import (
    Grid,
    MomentumAmplitudes,
    WaveFunction,
    from_momentum,
    inner,
    make_grid,
    to_momentum,
    translate,
)
from .observables import (
    ModularDistribution,
    MomentSpec,
    eom_residual,
    fold_density,
    fringe_peaks,
    modular_distribution,
    taylor_divergence_demo,
    translation_expect,
    tv_from_uniform,
    weyl_moment,
)
from .operators import (
    ClassicalState,
    OperatorMatrix,
    build_p,
    build_translation,
    build_x,
    classical_step,
    ellipse_check,
    eom_identity_residual,
    weyl_matrix,
)
from .records import ExperimentRecord, write_record
from .scattering import (
    FluxParam,
    PartialWave,
    ScatterConfig,
    bessel_j,
    gamma,
    log_gamma,
    partial_wave_psi,
    scattering_profile,
)
from .states import (
    PacketSpec,
    SlitArraySpec,
    apply_region_phase,
    make_grating,
    make_packet,
    make_two_slit,
    superpose,
)

__all__ = [
    "__version__",
    "ModlabError", "NumericalGuardError",
    "Grid", "WaveFunction", "MomentumAmplitudes",
    "make_grid", "to_momentum", "from_momentum", "inner", "translate",
    "PacketSpec", "SlitArraySpec",
    "make_packet", "superpose", "make_two_slit", "make_grating", "apply_region_phase",
    "PotentialSpec", "PropagatorConfig", "TwoParticleState",
    "propagate", "free_far_field", "product_state", "propagate_two",
    "translation_expect_two",
    "ModularDistribution", "MomentSpec",
    "translation_expect", "modular_distribution", "fold_density", "tv_from_uniform",
    "weyl_moment", "eom_residual", "fringe_peaks", "taylor_divergence_demo",
    "OperatorMatrix", "ClassicalState",
    "build_x", "build_p", "build_translation", "eom_identity_residual",
    "weyl_matrix", "classical_step", "ellipse_check",
    "FluxParam", "ScatterConfig", "PartialWave",
    "bessel_j", "gamma", "log_gamma", "partial_wave_psi", "scattering_profile",
    "ExperimentRecord", "write_record",
    "ExperimentConfig", "DetectionSample", "run", "sample_detections",
    "uncertainty_experiment", "classical_limit_experiment", "random_walk_experiment",
]
