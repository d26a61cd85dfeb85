"""Shared builders for the test-suite."""
import numpy as np

from identangle.hilbert import OneParticleBasis, SingleParticleState
from identangle.oracle import random_pair_state
from identangle.symm import Statistics

BOTH_STATISTICS = (Statistics.BOSON, Statistics.FERMION)


def random_single(
    rng: np.random.Generator, basis: OneParticleBasis, unit: bool = True
) -> SingleParticleState:
    vec = rng.standard_normal(basis.dim) + 1j * rng.standard_normal(basis.dim)
    if unit:
        vec = vec / np.linalg.norm(vec)
    return SingleParticleState(vec, basis)


def state_from_reals(basis: OneParticleBasis, values: list[float]) -> SingleParticleState:
    """2*dim plain floats to one complex state, for hypothesis-driven draws."""
    half = basis.dim
    re = np.asarray(values[:half], dtype=float)
    im = np.asarray(values[half:], dtype=float)
    return SingleParticleState(re + 1j * im, basis)


random_pair = random_pair_state
