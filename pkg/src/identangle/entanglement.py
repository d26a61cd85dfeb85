"""Entanglement entropy of reduced pair states and the two-qubit scenario.

The central scenario prepares two identical qubits in the superposition

    amplitude |L up, B down> + other e^{i phase} |L down, B up>

where L is the left well and B a unit mode overlapping it with squared
overlap `overlap` (the rest of B sits on the right well R).  At overlap 0
the particles are remote and behave like distinguishable qubits; at
overlap 1 they share one site.  Entanglement is quantified as the von
Neumann entropy, in bits, of a reduced one-particle state; which reduction
is taken is named by a measurement plan:

    L         localized trace over the left well
    R         localized trace over the right well
    LR        L, conditioned on the partner ending up on the right
    LL        L, conditioned on the partner staying on the left
    nonlocal  trace over delocalized (L +- R) probes
    full      trace over the whole canonical basis

The localized-on-L spectrum has a closed form with at most two levels;
`closed_form_eigenvalues` evaluates it and the test-suite pins it against
the measurement pipeline.  Everything here also works with a complex
left-overlap amplitude via `overlap_phase`.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateError
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
    overlap_mode,
    spin_state,
    two_mode_basis,
)
from .reduction import (
    OneParticleDensityMatrix,
    localized,
    localized_partial_trace,
    measure,
    measurement_induced_trace,
    partial_trace,
    project_density,
)
from .symm import Statistics, TwoParticleState, pair_ket

# denominator magnitudes below this make the closed form degenerate
DEGENERATE_TOL = 1e-12

MEASUREMENT_PLANS = ("L", "R", "LR", "LL", "nonlocal", "full")


@dataclass(frozen=True)
class EntropyResult:
    """Descending spectrum of a reduced state and its entropy in bits."""

    eigenvalues: tuple[float, ...]
    entropy_bits: float


@dataclass(frozen=True)
class BellPairParams:
    """Parameters of the two-qubit overlap scenario.

    amplitude: weight of the |L up, B down> branch, in [0, 1]; the other
        branch carries sqrt(1 - amplitude**2).
    phase: relative phase between the branches, radians.
    overlap: squared overlap of mode B with the left well, in [0, 1].
    statistics: exchange statistics of the pair.
    overlap_phase: phase of the B-to-left overlap amplitude; 0 keeps the
        usual real convention.
    """

    amplitude: float
    phase: float
    overlap: float
    statistics: Statistics
    overlap_phase: float = 0.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.amplitude <= 1.0:
            raise ValueError(f"amplitude must lie in [0, 1], got {self.amplitude}")
        if not 0.0 <= self.overlap <= 1.0:
            raise ValueError(f"overlap must lie in [0, 1], got {self.overlap}")

    @property
    def other_amplitude(self) -> float:
        return math.sqrt(max(0.0, 1.0 - self.amplitude * self.amplitude))


def _xlog2(p: float) -> float:
    return 0.0 if p <= 0.0 else p * math.log2(p)


def binary_entropy(p: float) -> float:
    """Entropy in bits of the distribution (p, 1 - p)."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability must lie in [0, 1], got {p}")
    # + 0.0 turns an all-zero sum's -0.0 into 0.0
    return -_xlog2(p) - _xlog2(1.0 - p) + 0.0


def von_neumann_entropy(rho: OneParticleDensityMatrix) -> EntropyResult:
    """Spectrum and entropy -sum(lam log2 lam) of a density matrix."""
    lam = rho.eigenvalues()
    entropy = -sum(_xlog2(float(v)) for v in lam) + 0.0
    return EntropyResult(tuple(float(v) for v in lam), float(entropy))


def bell_like_state(
    params: BellPairParams, basis: OneParticleBasis | None = None
) -> TwoParticleState:
    """The scenario state amplitude |L up, B down> + other e^{i phase} |L down, B up>.

    Left unnormalized on purpose: every reduction divides its own constant
    out, so no downstream result depends on the input scale.
    """
    if basis is None:
        basis = two_mode_basis()
    spread = ModeOverlap(params.overlap, params.overlap_phase)
    first = pair_ket(
        basis_state(basis, LEFT, UP),
        overlap_mode(basis, spread, DOWN),
        params.statistics,
        params.amplitude,
    )
    second = pair_ket(
        basis_state(basis, LEFT, DOWN),
        overlap_mode(basis, spread, UP),
        params.statistics,
        params.other_amplitude * cmath.exp(1j * params.phase),
    )
    return first + second


def closed_form_eigenvalues(params: BellPairParams) -> tuple[float, float]:
    """The two eigenvalues of the localized-on-L reduced state, closed form.

    lam1 = (a^2 + overlap (b^2 + 2 eta a b cos(phase))) / den
    den  = 1 + overlap (1 + 4 eta a b cos(phase))

    with a = amplitude and b = other_amplitude.  Valid for any
    overlap_phase.  The denominator is nonnegative and vanishes only at
    overlap 1, a^2 = 1/2, cos(phase) = -eta, where the scenario state
    itself is the zero vector; there the spectrum is undefined.
    """
    a = params.amplitude
    b = params.other_amplitude
    ct = math.cos(params.phase)
    eta = params.statistics.eta
    den = 1.0 + params.overlap * (1.0 + 4.0 * eta * a * b * ct)
    if abs(den) <= DEGENERATE_TOL:
        raise DegenerateError(
            "closed form undefined: the scenario state has zero norm here"
        )
    lam1 = (a * a + params.overlap * (b * b + 2.0 * eta * a * b * ct)) / den
    return (lam1, 1.0 - lam1)


def _reduced(params: BellPairParams, plan: str) -> OneParticleDensityMatrix:
    basis = two_mode_basis()
    state = bell_like_state(params, basis)
    if plan == "L":
        return localized_partial_trace(state, localized(basis, LEFT))
    if plan == "R":
        return localized_partial_trace(state, localized(basis, RIGHT))
    if plan == "LR":
        rho = localized_partial_trace(state, localized(basis, LEFT))
        return project_density(rho, localized(basis, RIGHT))
    if plan == "LL":
        rho = localized_partial_trace(state, localized(basis, LEFT))
        return project_density(rho, localized(basis, LEFT))
    if plan == "nonlocal":
        return measurement_induced_trace(state)
    if plan == "full":
        return partial_trace(state)
    raise ValueError(f"unknown measurement plan {plan!r}; use one of {MEASUREMENT_PLANS}")


def reduced_state(params: BellPairParams, plan: str = "L") -> OneParticleDensityMatrix:
    """Reduced one-particle state of the scenario under a measurement plan."""
    return _reduced(params, plan)


def evaluate_plan(params: BellPairParams, plan: str = "L") -> EntropyResult:
    """Spectrum and entropy of the scenario under a measurement plan."""
    return von_neumann_entropy(_reduced(params, plan))


def entanglement_L(params: BellPairParams) -> EntropyResult:
    """Entropy seen by a detector localized at the left well."""
    return evaluate_plan(params, "L")


def entanglement_R(params: BellPairParams) -> EntropyResult:
    """Entropy seen by a detector localized at the right well."""
    return evaluate_plan(params, "R")


def entanglement_LR(params: BellPairParams) -> EntropyResult:
    """Left-well entropy conditioned on the partner sitting on the right."""
    return evaluate_plan(params, "LR")


def entanglement_LL(params: BellPairParams) -> EntropyResult:
    """Left-well entropy conditioned on the partner staying on the left."""
    return evaluate_plan(params, "LL")


def entanglement_distinguishable(amplitude: float) -> float:
    """Entropy in bits of the same superposition for distinguishable qubits.

    Just the binary entropy of the branch weights; the identical-particle
    curves approach it as the overlap goes to zero and stay at or above it
    everywhere else.
    """
    if not 0.0 <= amplitude <= 1.0:
        raise ValueError(f"amplitude must lie in [0, 1], got {amplitude}")
    return binary_entropy(amplitude * amplitude)


def elementary_state_entropy(overlap: float) -> float:
    """Localized-on-L entropy of the single-branch state (amplitude 1).

    Closed form log2(1 + overlap) - overlap log2(overlap) / (1 + overlap),
    rising from 0 at overlap 0 to 1 at overlap 1: a product-like pair gains
    a full bit purely by moving into the measured region.
    """
    if not 0.0 <= overlap <= 1.0:
        raise ValueError(f"overlap must lie in [0, 1], got {overlap}")
    if overlap == 0.0:
        return 0.0
    return math.log2(1.0 + overlap) - (overlap / (1.0 + overlap)) * math.log2(overlap)


@dataclass(frozen=True)
class SpinCorrelationResult:
    """Partner states after a spin measurement on a same-site opposite pair.

    up_outcome and down_outcome are the normalized partner states left by
    finding spin up or down along the measured direction; reflected is the
    direction mirrored through the equatorial plane, which is where the
    bosonic partner points.
    """

    up_outcome: SingleParticleState
    down_outcome: SingleParticleState
    reflected: SpinDirection


def spin_correlation_check(
    statistics: Statistics, direction: SpinDirection
) -> SpinCorrelationResult:
    """Measure a spin direction on the pair |up, down> sharing one site.

    Fermions: the partner is exactly the opposite spin along the measured
    direction, for every direction, like the singlet of distinguishable
    qubits.  Bosons: the partner follows the measured branch along the
    mirrored direction reflected(), like the triplet Bell state, so up
    leaves up-along-reflected and down leaves down-along-reflected.  At the
    poles the two behaviors coincide.
    """
    basis = OneParticleBasis((LEFT,))
    pair = pair_ket(
        basis_state(basis, LEFT, UP), basis_state(basis, LEFT, DOWN), statistics
    )
    up_out = measure(spin_state(basis, LEFT, direction, UP), pair).projected
    down_out = measure(spin_state(basis, LEFT, direction, DOWN), pair).projected
    if up_out is None or down_out is None:
        raise DegenerateError("spin measurement returned a zero-probability branch")
    return SpinCorrelationResult(up_out, down_out, direction.reflected())
