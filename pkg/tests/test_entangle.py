import numpy as np
import pytest

from conftest import monte_carlo_ep, unitary_cases
from ldoi.embed import embed
from ldoi.entangle import (
    NotUnitaryError,
    dense_operator_entanglement,
    fourier_matrix,
    hadamard_functional,
    is_complex_hadamard,
    ldui_dual,
    max_ep_dual_ldui,
    operator_entanglement_closed,
    profile,
    profile_closed_form,
    profile_oracle,
    swap_entanglement,
    sylvester_hadamard,
)
from ldoi.schmidt import schmidt_rank
from ldoi.special import is_dual
from ldoi.triples import MatrixTriple, random_triple, triple_product
from ldoi.unitary import random_unitary


@pytest.mark.parametrize("d", [2, 3, 5])
def test_swap_profile(d):
    p = profile_closed_form(MatrixTriple.swap(d))
    assert abs(p.e_op - (1 - 1 / d ** 2)) <= 1e-12
    assert abs(p.e_op_swapped) <= 1e-12
    assert abs(p.e_power) <= 1e-12
    assert abs(p.typicality - 1) <= 1e-12


def test_identity_profile():
    p = profile_closed_form(MatrixTriple.identity(4))
    assert max(abs(p.e_op), abs(p.e_power), abs(p.typicality)) <= 1e-12


@pytest.mark.parametrize("d", range(2, 9))
def test_fourier_dual_max(d):
    t = ldui_dual(fourier_matrix(d))
    assert abs(profile(t).e_power - d / (d + 1)) <= 1e-10
    ep, is_max = max_ep_dual_ldui(fourier_matrix(d))
    assert is_max and abs(ep - d / (d + 1)) <= 1e-10


def test_all_ones_phase_matrix():
    ep, is_max = max_ep_dual_ldui(np.ones((4, 4)))
    assert ep == 0 and not is_max


def test_real_hadamard_d2():
    ep, is_max = max_ep_dual_ldui(sylvester_hadamard(2))
    assert is_max and abs(ep - 2 / 3) <= 1e-12


def test_max_ep_rejects_non_unimodular():
    with pytest.raises(ValueError):
        max_ep_dual_ldui(np.array([[1, 2], [1, 1]]))


def test_sylvester():
    H = sylvester_hadamard(8)
    assert np.array_equal(H @ H.T, 8 * np.eye(8))
    assert hadamard_functional(H) == 8 ** 3
    with pytest.raises(ValueError):
        sylvester_hadamard(6)


def test_perturbing_a_phase_decreases_ep():
    for d in range(2, 9):
        F = fourier_matrix(d)
        ep0 = max_ep_dual_ldui(F)[0]
        for eps in (1e-3, 0.1, 1.0):
            G = F.copy()
            G[d - 1, 1] *= np.exp(1j * eps)
            ep, is_max = max_ep_dual_ldui(G)
            assert ep < ep0 and not is_max


def test_closed_form_matches_oracle():
    for t in unitary_cases(200, range(1, 7), seed=2):
        a, b = profile_closed_form(t), profile_oracle(t)
        for x, y in zip(a.to_dict().values(), b.to_dict().values()):
            assert abs(x - y) <= 1e-9


def test_closed_form_E_matches_dense_for_any_triple(rng):
    # the E formula itself needs no unitarity
    for _ in range(50):
        t = random_triple(int(rng.integers(2, 5)), rng)
        assert abs(operator_entanglement_closed(t) - dense_operator_entanglement(embed(t))) <= 1e-9 * (
            1 + np.linalg.norm(embed(t)) ** 4
        )


def test_non_unitary_rejected(rng):
    with pytest.raises(NotUnitaryError):
        profile(random_triple(3, rng))


def test_ranges_and_duality_link():
    for t in unitary_cases(150, range(2, 6), seed=4):
        p = profile(t)
        es = swap_entanglement(t.dim)
        assert -1e-12 <= p.e_op <= es + 1e-12
        assert -1e-12 <= p.e_power <= 1 + 1e-12
        assert -1e-12 <= p.typicality <= 1 + 1e-12
        assert (abs(p.e_op - es) <= 1e-9) == is_dual(t)
        assert (abs(p.typicality) <= 1e-9) == (schmidt_rank(t) == 1)


def test_local_diagonal_invariance():
    rng = np.random.default_rng(5)
    for d in (2, 3, 4):
        t = random_unitary(d, seed=d)
        u, v = np.exp(2j * np.pi * rng.random(d)), np.exp(2j * np.pi * rng.random(d))
        A = np.outer(u, v)
        local = MatrixTriple(A, np.diag(np.diagonal(A)), np.diag(np.diagonal(A)))
        assert np.allclose(embed(local), np.kron(np.diag(u), np.diag(v)))
        p0 = profile(t).to_dict()
        for moved in (triple_product(local, t), triple_product(t, local)):
            for k, val in profile(moved).to_dict().items():
                assert abs(val - p0[k]) <= 1e-10


def test_complex_hadamard_check():
    assert is_complex_hadamard(fourier_matrix(5))
    assert not is_complex_hadamard(np.ones((3, 3)))


@pytest.mark.slow
@pytest.mark.parametrize("d", [2, 3])
def test_monte_carlo_entangling_power(d):
    rng = np.random.default_rng(100 + d)
    for t in (random_unitary(d, seed=5), ldui_dual(fourier_matrix(d))):
        ep = profile(t).e_power
        est = monte_carlo_ep(embed(t), d, 100_000, rng)
        assert abs(est - ep) <= 5e-3 * ep
