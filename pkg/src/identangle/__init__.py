"""Entanglement of two identical particles without particle labels.

Pair states are holistic symmetrized kets |x, y>; projecting a one-particle
probe into them yields outcome probabilities and partner states, summing
projections over a probe basis yields full or localized partial traces,
and the von Neumann entropy of those reduced states quantifies the
entanglement a detector in a given region can actually use.  A labeled
tensor-product oracle mirrors every identity for cross-validation.
"""
from .entanglement import (
    MEASUREMENT_PLANS,
    BellPairParams,
    EntropyResult,
    SpinCorrelationResult,
    bell_like_state,
    binary_entropy,
    closed_form_eigenvalues,
    elementary_state_entropy,
    entanglement_distinguishable,
    entanglement_L,
    entanglement_LL,
    entanglement_LR,
    entanglement_R,
    evaluate_plan,
    reduced_state,
    spin_correlation_check,
    von_neumann_entropy,
)
from .errors import BasisMismatch, DegenerateError, StatisticsMismatch
from .hilbert import (
    DOWN,
    LEFT,
    RIGHT,
    UP,
    ModeOverlap,
    OneParticleBasis,
    SingleParticleState,
    SpinDirection,
    basis_state,
    inner_product,
    nonlocal_mode,
    overlap_mode,
    spin_state,
    two_mode_basis,
)
from .oracle import (
    LabeledTwoParticleState,
    OracleCheckResult,
    labeled_amplitude,
    labeled_projector_expectation,
    run_oracle_check,
    symmetrize,
)
from .reduction import (
    LocalizedSubspace,
    MeasurementOutcome,
    OneParticleDensityMatrix,
    localized,
    localized_partial_trace,
    measure,
    measurement_induced_trace,
    partial_trace,
    project,
    project_density,
)
from .symm import (
    ExtractionReport,
    OneParticleOperator,
    SplitterParams,
    Statistics,
    TwoParticleState,
    apply_one_particle_operator,
    apply_splitter,
    basis_pair_expansion,
    extraction_report,
    norm_constant,
    normalize,
    one_particle_expectation,
    pair_ket,
    swap,
    two_particle_amplitude,
)

__version__ = "0.1.0"
