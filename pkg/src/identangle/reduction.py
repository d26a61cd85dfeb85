"""One-particle projective measurement and partial traces.

Projecting a probe <k| into a pair state leaves the other particle in the
unnormalized one-particle state

    v_k = <k|x> |y> + eta <k|y> |x>    (summed over terms)

with outcome probability <v_k|v_k> / (2 <state|state>), so a complete probe
basis exhausts probability one.  Summing |v_k><v_k| over a complete basis
and dividing by the accumulated trace gives the reduced density matrix;
restricting the sum to the basis states of a spatial region gives the
localized variant modeling a measurement performed in that region alone.
Both are insensitive to the input normalization, and the full trace is
insensitive to the choice of probe basis.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BasisMismatch, DegenerateError
from .hilbert import (
    LEFT,
    RIGHT,
    OneParticleBasis,
    SingleParticleState,
    nonlocal_mode,
    state_at,
)
from .symm import TwoParticleState, norm_constant

# minimum accumulated weight for a trace or probability to be defined
WEIGHT_TOL = 1e-12
# Hermiticity and unit-trace validation tolerance for density matrices
MATRIX_TOL = 1e-12
# eigenvalues in [-EIGEN_CLIP, 0) count as round-off zeros
EIGEN_CLIP = 1e-10


@dataclass(frozen=True)
class LocalizedSubspace:
    """All basis states whose mode label belongs to a set of modes."""

    basis: OneParticleBasis
    modes: frozenset[str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "modes", frozenset(self.modes))
        if not self.modes:
            raise ValueError("a region needs at least one mode")
        unknown = self.modes - set(self.basis.modes)
        if unknown:
            raise KeyError(f"unknown modes {sorted(unknown)}; basis has {self.basis.modes}")

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(
            i for i in range(self.basis.dim) if self.basis.mode_at(i) in self.modes
        )

    def projector(self) -> np.ndarray:
        p = np.zeros((self.basis.dim, self.basis.dim), dtype=complex)
        for i in self.indices:
            p[i, i] = 1.0
        return p


def localized(basis: OneParticleBasis, *modes: str) -> LocalizedSubspace:
    """Region made of the given mode labels, all spins included."""
    return LocalizedSubspace(basis, frozenset(modes))


@dataclass(frozen=True)
class MeasurementOutcome:
    """Outcome probability and the partner's normalized state.

    projected is None exactly when the outcome has (numerically) zero
    probability, in which case no partner state exists.
    """

    probability: float
    projected: SingleParticleState | None


@dataclass(frozen=True, eq=False)
class OneParticleDensityMatrix:
    """Hermitian unit-trace matrix over the one-particle basis.

    normalization records the constant divided out at construction: twice
    the squared state norm for a full trace, the accumulated region weight
    for a localized one.  Ratios of normalizations are meaningful for a
    fixed input state; the matrix itself never depends on the input scale.
    """

    matrix: np.ndarray
    basis: OneParticleBasis
    normalization: float

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=complex)
        d = self.basis.dim
        if m.shape != (d, d):
            raise ValueError(f"expected a {d}x{d} matrix, got shape {m.shape}")
        if np.abs(m - m.conj().T).max() > MATRIX_TOL:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(m).real - 1.0) > MATRIX_TOL:
            raise ValueError(f"density matrix trace is {np.trace(m).real}, not 1")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    def eigenvalues(self) -> np.ndarray:
        """Real eigenvalues, descending, with round-off negatives clipped."""
        lam = np.linalg.eigvalsh(self.matrix)
        lam = np.where((lam < 0.0) & (lam >= -EIGEN_CLIP), 0.0, lam)
        if lam.min() < 0.0:
            raise ValueError(f"eigenvalue {lam.min()} is negative beyond round-off")
        return np.sort(lam)[::-1]


def project(probe: SingleParticleState, state: TwoParticleState) -> SingleParticleState:
    """Unnormalized partner state <probe|state>."""
    if probe.basis != state.basis:
        raise BasisMismatch("probe and state live in different bases")
    eta = state.statistics.eta
    out = np.zeros(state.basis.dim, dtype=complex)
    for c, x, y in state.terms:
        out += c * (
            np.vdot(probe.amplitudes, x.amplitudes) * y.amplitudes
            + eta * np.vdot(probe.amplitudes, y.amplitudes) * x.amplitudes
        )
    return SingleParticleState(out, state.basis)


def measure(probe: SingleParticleState, state: TwoParticleState) -> MeasurementOutcome:
    """Probability of finding one particle in `probe`, and the partner state.

    The probability is half the symmetric projector expectation, so the
    outcomes of a complete orthonormal probe basis sum to one.  The input
    norm is divided out; pre-normalization is not required.
    """
    n = norm_constant(state)
    if n <= WEIGHT_TOL:
        raise DegenerateError("cannot measure a zero-norm state")
    leftover = project(probe, state)
    weight = float(np.vdot(leftover.amplitudes, leftover.amplitudes).real)
    probability = weight / (2.0 * n)
    if weight <= WEIGHT_TOL:
        return MeasurementOutcome(probability, None)
    return MeasurementOutcome(probability, leftover.normalized())


def _trace_from_probes(
    state: TwoParticleState,
    probes: list[SingleParticleState],
    zero_message: str,
) -> OneParticleDensityMatrix:
    d = state.basis.dim
    raw = np.zeros((d, d), dtype=complex)
    for probe in probes:
        v = project(probe, state).amplitudes
        raw += np.outer(v, v.conj())
    weight = float(np.trace(raw).real)
    if weight <= WEIGHT_TOL:
        raise DegenerateError(zero_message)
    return OneParticleDensityMatrix(raw / weight, state.basis, weight)


def partial_trace(state: TwoParticleState) -> OneParticleDensityMatrix:
    """Reduced one-particle state, summed over the full canonical basis.

    The result does not change under any other complete orthonormal probe
    basis; the canonical one is just cheap.
    """
    probes = [state_at(state.basis, i) for i in range(state.basis.dim)]
    return _trace_from_probes(state, probes, "cannot trace a zero-norm state")


def localized_partial_trace(
    state: TwoParticleState, region: LocalizedSubspace
) -> OneParticleDensityMatrix:
    """Partial trace restricted to the region's basis states.

    Models a detector that only ever fires inside the region.  The result
    can still have support outside it: the detected particle is in the
    region, the partner goes wherever the state sent it.
    """
    if region.basis != state.basis:
        raise BasisMismatch("region and state live in different bases")
    probes = [state_at(state.basis, i) for i in region.indices]
    return _trace_from_probes(
        state,
        probes,
        f"the pair is never found in region {sorted(region.modes)}",
    )


def measurement_induced_trace(
    state: TwoParticleState,
    left: str = LEFT,
    right: str = RIGHT,
) -> OneParticleDensityMatrix:
    """Partial trace over the delocalized probe basis (left +- right).

    The probes are the two delocalized combinations for every spin, plus
    the canonical states of any remaining modes; together they are again a
    complete basis, so the matrix equals the full partial trace while the
    probe set models detectors with no position information.
    """
    basis = state.basis
    probes = [
        nonlocal_mode(basis, sign, spin, left, right)
        for sign in (1, -1)
        for spin in basis.spins
    ]
    for mode in basis.modes:
        if mode in (left, right):
            continue
        for spin in basis.spins:
            probes.append(state_at(basis, basis.index(mode, spin)))
    return _trace_from_probes(
        state, probes, "cannot trace a zero-norm state"
    )


def project_density(
    rho: OneParticleDensityMatrix, region: LocalizedSubspace
) -> OneParticleDensityMatrix:
    """Conditional state given the particle is found inside the region.

    Conjugates by the region projector and renormalizes; the divided-out
    weight is the probability of the region under rho.
    """
    if region.basis != rho.basis:
        raise BasisMismatch("region and density matrix live in different bases")
    p = region.projector()
    sub = p @ rho.matrix @ p
    weight = float(np.trace(sub).real)
    if weight <= WEIGHT_TOL:
        raise DegenerateError(
            f"the reduced state has no weight in region {sorted(region.modes)}"
        )
    return OneParticleDensityMatrix(sub / weight, rho.basis, weight)
