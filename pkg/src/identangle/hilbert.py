"""One-particle Hilbert space: mode x pseudospin bases and named states.

A basis is an ordered tuple of spatial mode labels crossed with an ordered
tuple of pseudospin labels, indexed mode-major: modes ("L", "R") with spins
("up", "down") put L-up at 0, L-down at 1, R-up at 2, R-down at 3.  States
are dense complex amplitude vectors over that ordering and are not forced
to unit norm, because intermediate projections are naturally unnormalized.

Three named constructions recur downstream: a mode that overlaps the left
well with a given squared overlap, the delocalized combinations
(|L> +- |R>)/sqrt(2), and pseudospin states along an arbitrary Bloch
direction.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import BasisMismatch, DegenerateError

UP = "up"
DOWN = "down"
LEFT = "L"
RIGHT = "R"

# absolute tolerance for amplitude comparisons and zero tests
ATOL = 1e-10


@dataclass(frozen=True)
class OneParticleBasis:
    """Finite mode x spin product basis with a dense index map."""

    modes: tuple[str, ...]
    spins: tuple[str, ...] = (UP, DOWN)

    def __post_init__(self) -> None:
        object.__setattr__(self, "modes", tuple(self.modes))
        object.__setattr__(self, "spins", tuple(self.spins))
        if not self.modes or not self.spins:
            raise ValueError("basis needs at least one mode and one spin")
        if len(set(self.modes)) != len(self.modes):
            raise ValueError(f"duplicate mode labels: {self.modes}")
        if len(set(self.spins)) != len(self.spins):
            raise ValueError(f"duplicate spin labels: {self.spins}")

    @property
    def dim(self) -> int:
        return len(self.modes) * len(self.spins)

    def index(self, mode: str, spin: str) -> int:
        """Dense index of the (mode, spin) basis state."""
        if mode not in self.modes:
            raise KeyError(f"unknown mode {mode!r}; basis has {self.modes}")
        if spin not in self.spins:
            raise KeyError(f"unknown spin {spin!r}; basis has {self.spins}")
        return self.modes.index(mode) * len(self.spins) + self.spins.index(spin)

    def mode_at(self, index: int) -> str:
        """Mode label of the dense index."""
        return self.modes[index // len(self.spins)]

    def labels(self) -> tuple[tuple[str, str], ...]:
        """(mode, spin) pairs in dense index order."""
        return tuple((m, s) for m in self.modes for s in self.spins)


def two_mode_basis() -> OneParticleBasis:
    """The four-state workhorse basis: modes (L, R), spins (up, down)."""
    return OneParticleBasis((LEFT, RIGHT))


@dataclass(frozen=True, eq=False)
class SingleParticleState:
    """Immutable complex amplitude vector over a OneParticleBasis."""

    amplitudes: np.ndarray
    basis: OneParticleBasis

    def __post_init__(self) -> None:
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.shape != (self.basis.dim,):
            raise ValueError(
                f"expected {self.basis.dim} amplitudes, got shape {amps.shape}"
            )
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> SingleParticleState:
        n = self.norm()
        if n <= ATOL:
            raise DegenerateError("cannot normalize a zero state")
        return SingleParticleState(self.amplitudes / n, self.basis)

    def __add__(self, other: SingleParticleState) -> SingleParticleState:
        _require_same_basis(self, other)
        return SingleParticleState(self.amplitudes + other.amplitudes, self.basis)

    def __sub__(self, other: SingleParticleState) -> SingleParticleState:
        _require_same_basis(self, other)
        return SingleParticleState(self.amplitudes - other.amplitudes, self.basis)

    def __mul__(self, scalar: complex) -> SingleParticleState:
        return SingleParticleState(self.amplitudes * complex(scalar), self.basis)

    __rmul__ = __mul__

    def __neg__(self) -> SingleParticleState:
        return SingleParticleState(-self.amplitudes, self.basis)


@dataclass(frozen=True)
class SpinDirection:
    """Bloch sphere direction given by polar and azimuthal angles in radians.

    The azimuth is stored modulo 2 pi; the polar angle must lie in [0, pi].
    """

    polar: float
    azimuth: float = 0.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.polar <= math.pi:
            raise ValueError(f"polar angle must lie in [0, pi], got {self.polar}")
        object.__setattr__(self, "azimuth", float(self.azimuth) % (2.0 * math.pi))

    def reflected(self) -> SpinDirection:
        """Mirror image through the equatorial plane (polar -> pi - polar)."""
        return SpinDirection(math.pi - self.polar, self.azimuth)


@dataclass(frozen=True)
class ModeOverlap:
    """Squared overlap of a moving mode with the left well, plus its phase."""

    overlap: float
    phase: float = 0.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.overlap <= 1.0:
            raise ValueError(f"overlap must lie in [0, 1], got {self.overlap}")

    @property
    def amplitude(self) -> complex:
        """Complex overlap amplitude; its squared modulus is `overlap`."""
        return math.sqrt(self.overlap) * cmath.exp(1j * self.phase)


def _require_same_basis(x, y) -> None:
    if x.basis != y.basis:
        raise BasisMismatch(f"bases differ: {x.basis} vs {y.basis}")


def basis_state(basis: OneParticleBasis, mode: str, spin: str) -> SingleParticleState:
    """Canonical basis state carrying the given mode and spin."""
    amps = np.zeros(basis.dim, dtype=complex)
    amps[basis.index(mode, spin)] = 1.0
    return SingleParticleState(amps, basis)


def state_at(basis: OneParticleBasis, index: int) -> SingleParticleState:
    """Canonical basis state at a dense index."""
    amps = np.zeros(basis.dim, dtype=complex)
    amps[index] = 1.0
    return SingleParticleState(amps, basis)


def inner_product(x: SingleParticleState, y: SingleParticleState) -> complex:
    """Hermitian inner product <x|y>, conjugate linear in the first slot."""
    _require_same_basis(x, y)
    return complex(np.vdot(x.amplitudes, y.amplitudes))


def overlap_mode(
    basis: OneParticleBasis,
    spread: ModeOverlap,
    spin: str,
    left: str = LEFT,
    right: str = RIGHT,
) -> SingleParticleState:
    """Unit mode overlapping `left` with amplitude spread.amplitude.

    The remaining weight sqrt(1 - overlap) sits on `right`, so overlap 0
    gives the right state and overlap 1 (phase 0) the left one.
    """
    outside = math.sqrt(1.0 - spread.overlap)
    return spread.amplitude * basis_state(basis, left, spin) + outside * basis_state(
        basis, right, spin
    )


def nonlocal_mode(
    basis: OneParticleBasis,
    sign: int,
    spin: str,
    left: str = LEFT,
    right: str = RIGHT,
) -> SingleParticleState:
    """Delocalized mode (|left> + sign |right>)/sqrt(2) carrying `spin`."""
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    combo = basis_state(basis, left, spin) + sign * basis_state(basis, right, spin)
    return (1.0 / math.sqrt(2.0)) * combo


def spin_state(
    basis: OneParticleBasis,
    mode: str,
    direction: SpinDirection,
    branch: str,
) -> SingleParticleState:
    """Pseudospin state along `direction` in the given mode.

    branch "up":   cos(t/2) |up> + e^{i p} sin(t/2) |down>
    branch "down": -e^{-i p} sin(t/2) |up> + cos(t/2) |down>

    with t the polar and p the azimuthal angle.  The two branches are
    orthonormal for every direction.
    """
    if len(basis.spins) != 2:
        raise ValueError("spin_state needs a two-spin basis")
    half = 0.5 * direction.polar
    along = math.cos(half)
    across = math.sin(half)
    twist = cmath.exp(1j * direction.azimuth)
    plus = basis_state(basis, mode, basis.spins[0])
    minus = basis_state(basis, mode, basis.spins[1])
    if branch == UP:
        return along * plus + (twist * across) * minus
    if branch == DOWN:
        return (-across / twist) * plus + along * minus
    raise ValueError(f"branch must be {UP!r} or {DOWN!r}, got {branch!r}")
