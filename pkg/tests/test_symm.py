"""Symmetrized amplitude algebra, operators, splitter, and sector expansion."""
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import BOTH_STATISTICS, random_pair, random_single, state_from_reals
from identangle.errors import BasisMismatch, DegenerateError, StatisticsMismatch
from identangle.hilbert import (
    DOWN,
    LEFT,
    RIGHT,
    UP,
    ModeOverlap,
    OneParticleBasis,
    basis_state,
    overlap_mode,
    two_mode_basis,
)
from identangle.symm import (
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
    splitter_matrix,
    swap,
    two_particle_amplitude,
)

BASIS = two_mode_basis()

amplitude_reals = st.lists(
    st.floats(-1.0, 1.0, allow_nan=False, allow_infinity=False),
    min_size=2 * BASIS.dim,
    max_size=2 * BASIS.dim,
)


def test_statistics_enum():
    assert Statistics.BOSON.eta == 1
    assert Statistics.FERMION.eta == -1
    assert Statistics.from_name("Fermion") is Statistics.FERMION
    assert Statistics.BOSON.flipped is Statistics.FERMION
    with pytest.raises(ValueError):
        Statistics.from_name("anyon")


def test_amplitude_on_orthogonal_slots():
    pair = pair_ket(
        basis_state(BASIS, LEFT, UP), basis_state(BASIS, LEFT, DOWN), Statistics.BOSON
    )
    assert two_particle_amplitude(pair, pair) == pytest.approx(1.0)


def test_amplitude_gains_the_exchange_bonus_on_overlapping_slots():
    moving = overlap_mode(BASIS, ModeOverlap(0.3), UP)
    for statistics in BOTH_STATISTICS:
        pair = pair_ket(basis_state(BASIS, LEFT, UP), moving, statistics)
        expected = 1.0 + statistics.eta * 0.3
        assert norm_constant(pair) == pytest.approx(expected, abs=1e-12)


def test_fermion_pair_on_one_state_vanishes():
    rng = np.random.default_rng(5)
    for _ in range(10):
        one = random_single(rng, BASIS)
        pair = pair_ket(one, one, Statistics.FERMION)
        assert norm_constant(pair) == pytest.approx(0.0, abs=1e-12)


def test_boson_pair_on_one_state_doubles():
    lu = basis_state(BASIS, LEFT, UP)
    assert norm_constant(pair_ket(lu, lu, Statistics.BOSON)) == pytest.approx(2.0)


def test_mixing_rules_raise():
    lu = basis_state(BASIS, LEFT, UP)
    rd = basis_state(BASIS, RIGHT, DOWN)
    boson = pair_ket(lu, rd, Statistics.BOSON)
    fermion = pair_ket(lu, rd, Statistics.FERMION)
    with pytest.raises(StatisticsMismatch):
        boson + fermion
    with pytest.raises(StatisticsMismatch):
        two_particle_amplitude(boson, fermion)
    other = OneParticleBasis(("L", "R", "C"))
    alien = pair_ket(
        basis_state(other, LEFT, UP), basis_state(other, RIGHT, DOWN), Statistics.BOSON
    )
    with pytest.raises(BasisMismatch):
        boson + alien
    with pytest.raises(BasisMismatch):
        pair_ket(lu, basis_state(other, LEFT, UP), Statistics.BOSON)


def test_normalize_divides_the_exchange_bonus_out():
    lu = basis_state(BASIS, LEFT, UP)
    unit = normalize(pair_ket(lu, lu, Statistics.BOSON))
    assert norm_constant(unit) == pytest.approx(1.0, abs=1e-12)
    assert unit.terms[0][0] == pytest.approx(1.0 / math.sqrt(2.0))
    one = random_single(np.random.default_rng(3), BASIS)
    with pytest.raises(DegenerateError):
        normalize(pair_ket(one, one, Statistics.FERMION))


@given(amplitude_reals, amplitude_reals, amplitude_reals, amplitude_reals)
def test_amplitude_is_hermitian(xs, ys, us, vs):
    for statistics in BOTH_STATISTICS:
        bra = pair_ket(
            state_from_reals(BASIS, xs), state_from_reals(BASIS, ys), statistics
        )
        ket = pair_ket(
            state_from_reals(BASIS, us), state_from_reals(BASIS, vs), statistics
        )
        forward = two_particle_amplitude(bra, ket)
        backward = two_particle_amplitude(ket, bra)
        assert forward == pytest.approx(np.conj(backward), abs=1e-9)


@given(amplitude_reals, amplitude_reals, amplitude_reals)
def test_amplitude_is_linear_in_the_ket(xs, ys, us):
    for statistics in BOTH_STATISTICS:
        bra = pair_ket(
            state_from_reals(BASIS, xs), state_from_reals(BASIS, ys), statistics
        )
        ket = pair_ket(
            state_from_reals(BASIS, us), state_from_reals(BASIS, xs), statistics
        )
        scale = 0.7 - 1.3j
        assert two_particle_amplitude(bra, scale * ket) == pytest.approx(
            scale * two_particle_amplitude(bra, ket), abs=1e-9
        )
        assert two_particle_amplitude(scale * bra, ket) == pytest.approx(
            np.conj(scale) * two_particle_amplitude(bra, ket), abs=1e-9
        )
        both = ket + ket
        assert two_particle_amplitude(bra, both) == pytest.approx(
            2.0 * two_particle_amplitude(bra, ket), abs=1e-9
        )


def test_swap_equals_the_exchange_sign():
    rng = np.random.default_rng(17)
    for statistics in BOTH_STATISTICS:
        for _ in range(10):
            state = random_pair(rng, BASIS, statistics)
            probe = random_pair(rng, BASIS, statistics)
            swapped = two_particle_amplitude(probe, swap(state))
            straight = two_particle_amplitude(probe, state)
            assert swapped == pytest.approx(statistics.eta * straight, abs=1e-10)


def test_identity_expectation_counts_both_particles():
    rng = np.random.default_rng(23)
    identity = OneParticleOperator.identity(BASIS)
    for statistics in BOTH_STATISTICS:
        state = random_pair(rng, BASIS, statistics)
        assert one_particle_expectation(identity, state) == pytest.approx(
            2.0, abs=1e-10
        )


def test_projector_expectation_on_a_product_like_pair():
    lu = basis_state(BASIS, LEFT, UP)
    rd = basis_state(BASIS, RIGHT, DOWN)
    pair = pair_ket(lu, rd, Statistics.FERMION)
    grabber = OneParticleOperator.projector(lu)
    # exactly one particle is in L-up, so the symmetric count is 1
    assert one_particle_expectation(grabber, pair) == pytest.approx(1.0, abs=1e-12)
    filtered = apply_one_particle_operator(grabber, pair)
    overlap = two_particle_amplitude(pair, filtered)
    assert overlap == pytest.approx(1.0, abs=1e-12)


def test_operator_on_zero_norm_state_raises():
    one = basis_state(BASIS, LEFT, UP)
    dead = pair_ket(one, one, Statistics.FERMION)
    with pytest.raises(DegenerateError):
        one_particle_expectation(OneParticleOperator.identity(BASIS), dead)


def test_splitter_params_validation():
    with pytest.raises(ValueError):
        SplitterParams(1.0, 1.0, "L", "C", "D")
    with pytest.raises(ValueError):
        SplitterParams(1.0, 0.0, "L", "L", "D")


def test_splitter_matrix_routes_the_source_only():
    basis = OneParticleBasis(("L", "C", "D"))
    params = SplitterParams(0.6, 0.8, "L", "C", "D")
    matrix = splitter_matrix(params, basis)
    lu = basis.index("L", UP)
    assert matrix[basis.index("C", UP), lu] == pytest.approx(0.6)
    assert matrix[basis.index("D", UP), lu] == pytest.approx(0.8)
    assert matrix[lu, lu] == 0.0
    cd = basis.index("C", DOWN)
    assert matrix[cd, cd] == 1.0


def test_splitter_preserves_norm_off_the_outputs():
    basis = OneParticleBasis(("L", "C", "D"))
    rng = np.random.default_rng(29)
    for statistics in BOTH_STATISTICS:
        for _ in range(20):
            half = rng.uniform(0.0, math.pi / 2.0)
            params = SplitterParams(
                math.cos(half) * np.exp(1j * rng.uniform(0, 2 * math.pi)),
                math.sin(half) * np.exp(1j * rng.uniform(0, 2 * math.pi)),
                "L",
                "C",
                "D",
            )
            lu = basis_state(basis, "L", UP)
            ld = basis_state(basis, "L", DOWN)
            pair = pair_ket(lu, ld, statistics, 0.3 - 0.9j)
            routed = apply_splitter(params, pair)
            assert norm_constant(routed) == pytest.approx(
                norm_constant(pair), abs=1e-10
            )


def test_basis_pair_expansion_folds_and_drops():
    lu = basis_state(BASIS, LEFT, UP)
    ld = basis_state(BASIS, LEFT, DOWN)
    doubled = pair_ket(lu, lu, Statistics.BOSON)
    assert basis_pair_expansion(doubled) == {(0, 0): 1.0}
    # writing the pair slots in either order lands on the same (i < j) key
    forward = basis_pair_expansion(pair_ket(lu, ld, Statistics.FERMION))
    backward = basis_pair_expansion(pair_ket(ld, lu, Statistics.FERMION))
    assert set(forward) == {(0, 1)} and set(backward) == {(0, 1)}
    assert forward[(0, 1)] == pytest.approx(-backward[(0, 1)])
    dead = pair_ket(lu, lu, Statistics.FERMION)
    assert basis_pair_expansion(dead) == {}


def test_basis_pair_expansion_reproduces_the_norm():
    rng = np.random.default_rng(31)
    for statistics in BOTH_STATISTICS:
        state = random_pair(rng, BASIS, statistics)
        coeffs = basis_pair_expansion(state)
        total = sum(
            (abs(c) ** 2) * (2.0 if i == j else 1.0) for (i, j), c in coeffs.items()
        )
        assert total == pytest.approx(norm_constant(state), abs=1e-10)


def test_extraction_report_balanced_splitter():
    basis = OneParticleBasis(("L", "C", "D"))
    for statistics in BOTH_STATISTICS:
        pair = pair_ket(
            basis_state(basis, "L", UP), basis_state(basis, "L", DOWN), statistics
        )
        params = SplitterParams(math.sqrt(0.5), math.sqrt(0.5), "L", "C", "D")
        report = extraction_report(apply_splitter(params, pair), "C", "D")
        assert report.same_mode_1 == pytest.approx(0.25, abs=1e-12)
        assert report.same_mode_2 == pytest.approx(0.25, abs=1e-12)
        assert report.split == pytest.approx(0.5, abs=1e-12)
        # the split sector is the (|C up, D down> + eta |C down, D up>)/sqrt(2) pair
        expected = pair_ket(
            basis_state(basis, "C", UP),
            basis_state(basis, "D", DOWN),
            statistics,
            1.0 / math.sqrt(2.0),
        ) + pair_ket(
            basis_state(basis, "C", DOWN),
            basis_state(basis, "D", UP),
            statistics,
            statistics.eta / math.sqrt(2.0),
        )
        fidelity = abs(
            two_particle_amplitude(expected, report.split_component)
        ) / math.sqrt(norm_constant(expected))
        assert fidelity == pytest.approx(1.0, abs=1e-10)


def test_extraction_report_perfect_reflection():
    basis = OneParticleBasis(("L", "C", "D"))
    pair = pair_ket(
        basis_state(basis, "L", UP), basis_state(basis, "L", DOWN), Statistics.BOSON
    )
    params = SplitterParams(1.0, 0.0, "L", "C", "D")
    report = extraction_report(apply_splitter(params, pair), "C", "D")
    assert report.same_mode_1 == pytest.approx(1.0)
    assert report.split == 0.0
    assert report.split_component is None


def test_extraction_report_rejects_leftover_amplitude():
    basis = OneParticleBasis(("L", "C", "D"))
    pair = pair_ket(
        basis_state(basis, "L", UP), basis_state(basis, "C", DOWN), Statistics.BOSON
    )
    with pytest.raises(ValueError):
        extraction_report(pair, "C", "D")
