"""Labeled tensor-product reference for the pair algebra.

The conventional description names the particles and stores the pair as an
explicitly (anti)symmetrized vector on the doubled space H x H.  This
module is the brute-force mirror of the term algebra: same physics,
independent arithmetic route, used only for cross-checks.  The symmetrizer
deliberately omits the usual 1/sqrt(2), which shows up as an exact factor
2 between labeled and pair amplitudes:

    <sym(x) | sym(y)> = 2 <x|y>            (pair overlap on the right)
    <P_k x I + I x P_k>_sym = 2 p_k        (outcome probability p_k)

`run_oracle_check` samples random states and verifies both identities plus
outcome completeness; flipping the exchange sign on the labeled side only
is wired in as a negative control that must fail.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BasisMismatch, DegenerateError, StatisticsMismatch
from .hilbert import OneParticleBasis, SingleParticleState, state_at, two_mode_basis
from .reduction import measure
from .symm import (
    Statistics,
    TwoParticleState,
    norm_constant,
    pair_ket,
    two_particle_amplitude,
)

# exchange-symmetry validation tolerance for labeled vectors
EXCHANGE_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class LabeledTwoParticleState:
    """Vector on H x H with the exchange symmetry of its statistics."""

    vector: np.ndarray
    basis: OneParticleBasis
    statistics: Statistics

    def __post_init__(self) -> None:
        vec = np.array(self.vector, dtype=complex)
        d = self.basis.dim
        if vec.shape != (d * d,):
            raise ValueError(f"expected {d * d} amplitudes, got shape {vec.shape}")
        table = vec.reshape(d, d)
        slip = np.abs(table - self.statistics.eta * table.T).max()
        if slip > EXCHANGE_TOL:
            raise ValueError(
                f"vector breaks the exchange symmetry by {slip}; wrong statistics?"
            )
        vec.flags.writeable = False
        object.__setattr__(self, "vector", vec)


def symmetrize(state: TwoParticleState) -> LabeledTwoParticleState:
    """Labeled vector sum_terms c (x kron y + eta y kron x), unnormalized."""
    eta = state.statistics.eta
    d = state.basis.dim
    vec = np.zeros(d * d, dtype=complex)
    for c, x, y in state.terms:
        vec += c * (
            np.kron(x.amplitudes, y.amplitudes)
            + eta * np.kron(y.amplitudes, x.amplitudes)
        )
    return LabeledTwoParticleState(vec, state.basis, state.statistics)


def labeled_amplitude(
    bra: LabeledTwoParticleState, ket: LabeledTwoParticleState
) -> complex:
    """Plain doubled-space inner product <bra|ket>."""
    if bra.statistics is not ket.statistics:
        raise StatisticsMismatch("bra and ket carry different statistics")
    if bra.basis != ket.basis:
        raise BasisMismatch("bra and ket live in different bases")
    return complex(np.vdot(bra.vector, ket.vector))


def labeled_projector_expectation(
    probe: SingleParticleState, state: LabeledTwoParticleState
) -> float:
    """Expectation of |probe><probe| x I + I x |probe><probe|, normalized.

    Evaluated without building the doubled-space operator: contracting the
    probe into either slot of the reshaped vector gives the two partial
    amplitudes directly.
    """
    if probe.basis != state.basis:
        raise BasisMismatch("probe and state live in different bases")
    squared = float(np.vdot(state.vector, state.vector).real)
    if squared <= EXCHANGE_TOL:
        raise DegenerateError("expectation undefined on a zero labeled vector")
    d = state.basis.dim
    table = state.vector.reshape(d, d)
    against = probe.amplitudes.conj()
    first = against @ table
    second = table @ against
    weight = float(np.vdot(first, first).real + np.vdot(second, second).real)
    return weight / squared


@dataclass(frozen=True)
class OracleCheckResult:
    """Worst observed deviations of the labeled-route identities.

    worst_case carries plain-data reproduction info for the single draw
    with the largest combined deviation.
    """

    statistics: Statistics
    trials: int
    amplitude_deviation: float
    probability_deviation: float
    completeness_deviation: float
    worst_case: dict
    tolerance: float = 1e-10

    @property
    def passed(self) -> bool:
        return (
            self.amplitude_deviation < self.tolerance
            and self.probability_deviation < self.tolerance
            and self.completeness_deviation < self.tolerance
        )


def _random_single(rng: np.random.Generator, basis: OneParticleBasis) -> SingleParticleState:
    vec = rng.standard_normal(basis.dim) + 1j * rng.standard_normal(basis.dim)
    return SingleParticleState(vec / np.linalg.norm(vec), basis)


def random_pair_state(
    rng: np.random.Generator,
    basis: OneParticleBasis,
    statistics: Statistics,
    n_terms: int = 2,
    min_norm: float = 1e-6,
) -> TwoParticleState:
    """Random term-sum state, resampled until comfortably normalizable."""
    while True:
        state = None
        for _ in range(n_terms):
            coeff = complex(rng.standard_normal(), rng.standard_normal())
            term = pair_ket(
                _random_single(rng, basis), _random_single(rng, basis), statistics, coeff
            )
            state = term if state is None else state + term
        if norm_constant(state) > min_norm:
            return state


def _as_plain_data(state: TwoParticleState) -> list:
    return [
        [
            [c.real, c.imag],
            [[a.real, a.imag] for a in x.amplitudes],
            [[a.real, a.imag] for a in y.amplitudes],
        ]
        for c, x, y in state.terms
    ]


def run_oracle_check(
    statistics: Statistics,
    trials: int = 200,
    seed: int = 0,
    corrupt_eta: bool = False,
) -> OracleCheckResult:
    """Random-state validation of the labeled-route identities.

    Per trial: the factor-2 amplitude identity on two random states, the
    probability identity for a random probe, and completeness of the
    canonical outcome probabilities.  corrupt_eta builds the labeled side
    with the opposite exchange sign, a negative control that must fail.
    """
    if trials < 1:
        raise ValueError(f"trials must be positive, got {trials}")
    rng = np.random.default_rng(seed)
    basis = two_mode_basis()
    labeled_stat = statistics.flipped if corrupt_eta else statistics
    dev_amp = dev_prob = dev_comp = 0.0
    worst: dict = {}
    worst_score = -1.0
    for trial in range(trials):
        bra = random_pair_state(rng, basis, statistics)
        ket = random_pair_state(rng, basis, statistics)
        lab_bra = symmetrize(TwoParticleState(bra.terms, labeled_stat, basis))
        lab_ket = symmetrize(TwoParticleState(ket.terms, labeled_stat, basis))
        d_amp = abs(
            labeled_amplitude(lab_bra, lab_ket) - 2.0 * two_particle_amplitude(bra, ket)
        )
        probe = _random_single(rng, basis)
        outcome = measure(probe, ket)
        d_prob = abs(
            0.5 * labeled_projector_expectation(probe, lab_ket) - outcome.probability
        )
        total = sum(
            measure(state_at(basis, i), ket).probability for i in range(basis.dim)
        )
        d_comp = abs(total - 1.0)
        dev_amp = max(dev_amp, d_amp)
        dev_prob = max(dev_prob, d_prob)
        dev_comp = max(dev_comp, d_comp)
        score = d_amp + d_prob + d_comp
        if score > worst_score:
            worst_score = score
            worst = {
                "trial": trial,
                "amplitude_deviation": d_amp,
                "probability_deviation": d_prob,
                "completeness_deviation": d_comp,
                "bra_terms": _as_plain_data(bra),
                "ket_terms": _as_plain_data(ket),
                "probe": [[a.real, a.imag] for a in probe.amplitudes],
            }
    return OracleCheckResult(
        statistics=statistics,
        trials=trials,
        amplitude_deviation=dev_amp,
        probability_deviation=dev_prob,
        completeness_deviation=dev_comp,
        worst_case=worst,
    )
