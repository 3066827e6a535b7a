import numpy as np
import pytest

from conftest import unitary_cases
from ldoi.schmidt import (
    dense_schmidt_rank,
    is_product,
    make_rank,
    orthogonality_defect,
    explicit_cases,
    explicit_triple,
    schmidt_coefficients,
    schmidt_rank,
)
from ldoi.triples import MatrixTriple, random_triple
from ldoi.unitary import check_unitary, random_unitary


def test_identity_rank_one():
    assert schmidt_rank(MatrixTriple.identity(4)) == 1
    sp = schmidt_coefficients(MatrixTriple.identity(4))
    assert sp.rank == 1 and abs(sp.coefficients[0] - 4) <= 1e-12


@pytest.mark.parametrize("d", [2, 3, 4])
def test_swap_full_rank(d):
    assert schmidt_rank(MatrixTriple.swap(d)) == d * d
    assert np.allclose(schmidt_coefficients(MatrixTriple.swap(d)).coefficients, 1)


def test_coefficients_square_sum_for_unitaries():
    for seed in range(10):
        t = random_unitary(3, seed=seed)
        lam = schmidt_coefficients(t).coefficients
        assert abs(np.sum(lam ** 2) - 9) <= 1e-9
        assert np.all(np.diff(lam) <= 0)


def test_zero_triple():
    z = np.zeros((3, 3))
    assert schmidt_rank(MatrixTriple(z, z, z)) == 0


def test_formula_matches_svd_oracle(rng):
    trials = unitary_cases(250, range(2, 7), seed=1)
    trials += [random_triple(int(rng.integers(2, 7)), rng) for _ in range(250)]
    for t in trials:
        assert schmidt_rank(t) == dense_schmidt_rank(t)


def test_formula_matches_oracle_on_rank_deficient(rng):
    # low-rank A and repeated blocks stress the shared threshold
    for d in (3, 4, 5):
        for k in range(1, d * d + 1):
            t = make_rank(d, k, seed=3, explicit=False)
            assert schmidt_rank(t) == dense_schmidt_rank(t) == k


@pytest.mark.parametrize("d,k", explicit_cases())
def test_explicit_triples(d, k):
    t = explicit_triple(d, k)
    assert schmidt_rank(t) == dense_schmidt_rank(t) == k
    assert check_unitary(t, "real").is_unitary


def test_explicit_d3_rank5_entries():
    t = explicit_triple(3, 5)
    assert np.array_equal(t.A.real, [[1, 0, 1], [0, 1, 1], [1, 1, 1]])
    assert np.array_equal(t.C.real, [[1, 1, 0], [1, 1, 0], [0, 0, 1]])


def test_explicit_d4_rank11_uses_sqrt_half():
    t = explicit_triple(4, 11)
    assert np.any(np.isclose(np.abs(t.B), 1 / np.sqrt(2)))


@pytest.mark.parametrize("d", [3, 4, 5, 6])
def test_make_rank_coverage(d):
    got = []
    for k in range(1, d * d + 1):
        t = make_rank(d, k, seed=0)
        assert t.is_real()
        assert orthogonality_defect(t) <= 1e-9
        assert check_unitary(t, "real").is_unitary
        got.append(schmidt_rank(t))
    assert got == list(range(1, d * d + 1))


def test_make_rank_deterministic():
    assert make_rank(5, 13, seed=4).allclose(make_rank(5, 13, seed=4), atol=0)


def test_make_rank_errors():
    with pytest.raises(ValueError):
        make_rank(2, 2)
    with pytest.raises(ValueError):
        make_rank(3, 10)
    with pytest.raises(ValueError):
        make_rank(3, 0)


def test_product_detection():
    d1, d2 = np.exp(1j * np.arange(3)), np.array([1, -1, 1j])
    A = np.outer(d1, d2)
    D = np.diag(np.diagonal(A))
    assert is_product(MatrixTriple(A, D, D))
    # the d=2 anti-diagonal case: sigma_x (x) sigma_x
    X = np.array([[0, 1], [1, 0]])
    assert is_product(MatrixTriple(np.zeros((2, 2)), X, X))
    assert not is_product(MatrixTriple.swap(2))


def test_rank_three_never_at_d2():
    for seed in range(300):
        t = random_unitary(2, ["ldoi", "ldui", "cldui"][seed % 3], ["complex", "real"][seed % 2], seed=seed)
        assert schmidt_rank(t) != 3
