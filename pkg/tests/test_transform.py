import itertools
import math

import numpy as np
import pytest

from fockmodes import (
    DimensionError,
    HermitianParams,
    ModeUnitary,
    NotUnitaryError,
    SizeLimitError,
    apply_redefinition,
    basis_state,
    beam_splitter,
    enumerate_sector,
    exp_map,
    fock_matrix_element,
    parse_state,
    permanent,
    sector_weights,
    validate_unitary,
)
from fockmodes.suite import (
    balanced_mixer,
    circular_mixer,
    two_photon_pair,
    uniform_triple_mixer,
)

from conftest import random_state, random_unitary, states_close


def permanent_by_definition(matrix):
    """Independent oracle: sum over permutations of products."""
    a = np.asarray(matrix, dtype=complex)
    n = a.shape[0]
    return sum(
        math.prod(a[i, perm[i]] for i in range(n))
        for perm in itertools.permutations(range(n))
    )


# --- validate_unitary ---------------------------------------------------


def test_validate_unitary_accepts_identity_and_balanced_mix():
    validate_unitary(np.eye(3), tol=1e-10)
    validate_unitary(np.array([[1, 1], [1, -1]]) / np.sqrt(2), tol=1e-10)


def test_validate_unitary_rejects_rank_deficient():
    with pytest.raises(NotUnitaryError) as err:
        validate_unitary(np.array([[1, 1], [1, 1]]) / np.sqrt(2))
    assert err.value.residual is not None and err.value.residual > 1e-3


def test_validate_unitary_rejects_non_square():
    with pytest.raises(DimensionError):
        validate_unitary(np.ones((2, 3)))


def test_mode_unitary_compose_and_adjoint():
    bal = balanced_mixer()
    prod = bal @ bal.adjoint()
    np.testing.assert_allclose(prod.matrix, np.eye(2), atol=1e-14)


# --- apply_redefinition -------------------------------------------------


def test_rewrite_single_photon_pair_to_product():
    state = parse_state("|01> + |10>")
    out = apply_redefinition(state, balanced_mixer())
    assert states_close(out, basis_state((1, 0)), 1e-12)


def test_rewrite_under_identity_is_identity():
    state = parse_state("|01> + 2*|20> - i*|11>")
    out = apply_redefinition(state, ModeUnitary.identity(2))
    assert states_close(out, state, 1e-12)


def test_rewrite_two_photon_pair_to_product():
    out = apply_redefinition(two_photon_pair(), circular_mixer())
    assert states_close(out, basis_state((1, 1)), 1e-12)


def test_rewrite_two_photon_pair_to_uniform_triple():
    out = apply_redefinition(two_photon_pair(), uniform_triple_mixer())
    target = 1 / math.sqrt(3)
    assert set(out.amplitudes) == {(2, 0), (1, 1), (0, 2)}
    for amp in out.amplitudes.values():
        assert abs(amp) == pytest.approx(target, abs=1e-12)


def test_rewrite_dimension_mismatch():
    with pytest.raises(DimensionError):
        apply_redefinition(basis_state((1, 0, 0)), balanced_mixer())


def test_rewrite_norm_and_sector_preservation(rng):
    for _ in range(40):
        mode_count = int(rng.integers(2, 5))
        totals = tuple(rng.choice(4, size=int(rng.integers(1, 3)), replace=False))
        state = random_state(rng, mode_count, totals)
        out = apply_redefinition(state, random_unitary(rng, mode_count))
        assert abs(out.norm() - 1.0) < 1e-12
        before = sector_weights(state)
        after = sector_weights(out)
        assert set(before) == set(after)
        for total in before:
            assert abs(before[total] - after[total]) < 1e-12


def test_rewrite_composition_and_inverse(rng):
    for _ in range(25):
        mode_count = int(rng.integers(2, 5))
        state = random_state(rng, mode_count, totals=(2,))
        first = random_unitary(rng, mode_count)
        second = random_unitary(rng, mode_count)
        chained = apply_redefinition(apply_redefinition(state, first), second)
        direct = apply_redefinition(state, second @ first)
        assert states_close(chained, direct, 1e-10)
        back = apply_redefinition(apply_redefinition(state, first), first.adjoint())
        assert states_close(back, state, 1e-10)


# --- permanent ----------------------------------------------------------


def test_permanent_small_cases():
    assert permanent([[3.5]]) == pytest.approx(3.5)
    a, b, c, d = 1 + 2j, -0.5, 3j, 2 - 1j
    assert permanent([[a, b], [c, d]]) == pytest.approx(a * d + b * c)
    assert permanent(np.ones((3, 3))) == pytest.approx(6.0)


def test_permanent_matches_definition(rng):
    for n in (2, 3, 4, 5):
        m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        assert permanent(m) == pytest.approx(permanent_by_definition(m), abs=1e-10)


def test_permanent_rejects_bad_shapes():
    with pytest.raises(DimensionError):
        permanent(np.ones((2, 3)))
    with pytest.raises(SizeLimitError):
        permanent(np.eye(17))


# --- fock_matrix_element ------------------------------------------------


def test_matrix_element_identity():
    ident = ModeUnitary.identity(2)
    for occ in [(0, 0), (1, 0), (2, 1)]:
        assert fock_matrix_element(ident, occ, occ) == pytest.approx(1.0)


def test_matrix_element_balanced_mix_single_photon():
    # Hand expansion: a_B† -> (b_A† - b_B†)/sqrt(2), so <10|...|01> = 1/sqrt(2).
    assert fock_matrix_element(balanced_mixer(), (1, 0), (0, 1)) == pytest.approx(
        1 / math.sqrt(2)
    )


def test_matrix_element_vanishes_between_sectors():
    assert fock_matrix_element(balanced_mixer(), (1, 0), (1, 1)) == 0


def test_matrix_element_matches_expansion_on_balanced_mix():
    out = apply_redefinition(basis_state((2, 0)), balanced_mixer())
    element = fock_matrix_element(balanced_mixer(), (1, 1), (2, 0))
    assert element == pytest.approx(out.amplitudes[(1, 1)], abs=1e-12)


def test_matrix_element_oracle_equivalence(rng):
    # The permanent formula and the multinomial expansion are developed
    # independently; they must agree on every sector of a random unitary.
    for _ in range(8):
        unitary = random_unitary(rng, 3)
        for total in range(0, 4):
            occs = enumerate_sector(3, total)
            for source in occs:
                rewritten = apply_redefinition(basis_state(source), unitary)
                for target in occs:
                    expansion_amp = rewritten.amplitudes.get(target, 0j)
                    element = fock_matrix_element(unitary, target, source)
                    assert abs(element - expansion_amp) < 1e-10


def test_matrix_element_dimension_mismatch():
    with pytest.raises(DimensionError):
        fock_matrix_element(balanced_mixer(), (1, 0, 0), (0, 0, 1))


# --- exp_map ------------------------------------------------------------


def test_exp_map_zero_is_identity():
    np.testing.assert_allclose(exp_map(np.zeros(9)).matrix, np.eye(3), atol=1e-14)


def test_exp_map_single_mode_pi():
    np.testing.assert_allclose(exp_map([math.pi]).matrix, [[-1]], atol=1e-14)


def test_exp_map_pauli_x_closed_form():
    # H = (pi/4) sigma_x: U = cos(pi/4) I + i sin(pi/4) sigma_x.
    theta = np.array([0.0, 0.0, math.pi / 4, 0.0])
    u = exp_map(theta).matrix
    np.testing.assert_allclose(np.abs(u), [[math.cos(math.pi / 4)] * 2] * 2, atol=1e-12)
    np.testing.assert_allclose(u[0, 0], math.cos(math.pi / 4), atol=1e-12)
    np.testing.assert_allclose(u[0, 1], 1j * math.sin(math.pi / 4), atol=1e-12)


def test_exp_map_always_unitary(rng):
    for _ in range(200):
        dim = int(rng.integers(1, 6))
        theta = rng.uniform(-np.pi, np.pi, dim * dim)
        unitary = exp_map(theta)  # construction validates at 1e-12
        residual = np.abs(
            unitary.matrix.conj().T @ unitary.matrix - np.eye(dim)
        ).max()
        assert residual <= 1e-12


def test_hermitian_params_validation():
    params = HermitianParams(np.zeros(16))
    assert params.dim == 4
    with pytest.raises(DimensionError):
        HermitianParams(np.zeros(5))


# --- beam_splitter ------------------------------------------------------


def test_beam_splitter_zero_angle_is_identity():
    np.testing.assert_allclose(beam_splitter(3, 0, 2, 0.0).matrix, np.eye(3), atol=1e-15)


def test_beam_splitter_quarter_matches_balanced_mix_up_to_row_signs():
    bs = beam_splitter(2, 0, 1, math.pi / 4).matrix
    bal = balanced_mixer().matrix
    np.testing.assert_allclose(bs[0], bal[0], atol=1e-14)
    np.testing.assert_allclose(bs[1], -bal[1], atol=1e-14)


def test_beam_splitter_angles_compose():
    first = beam_splitter(4, 1, 3, 0.3)
    second = beam_splitter(4, 1, 3, 0.5)
    combined = beam_splitter(4, 1, 3, 0.8)
    np.testing.assert_allclose((second @ first).matrix, combined.matrix, atol=1e-13)


def test_beam_splitter_index_errors():
    with pytest.raises(IndexError):
        beam_splitter(2, 1, 1, 0.1)
    with pytest.raises(IndexError):
        beam_splitter(2, 0, 2, 0.1)
