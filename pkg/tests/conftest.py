"""Shared fixtures and independent oracles for the test suite."""

import numpy as np
import pytest

from ldoi.triples import InvarianceClass, MatrixTriple, random_triple
from ldoi.unitary import Field, random_unitary


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def loop_embed(t):
    """Dense operator built entry by entry from the defining sum."""
    d = t.dim
    X = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            X[i * d + j, i * d + j] += t.A[i, j]
            if i != j:
                X[i * d + i, j * d + j] += t.B[i, j]
                X[i * d + j, j * d + i] += t.C[i, j]
    return X


def doc_map(t):
    """Superoperator ``Z -> diag(A diag Z) + B~ * Z + C~ * Z^T`` on row-major vec(Z)."""
    d = t.dim
    Phi = np.zeros((d * d, d * d), dtype=complex)
    for k in range(d):
        for l in range(d):
            Z = np.zeros((d, d), dtype=complex)
            Z[k, l] = 1.0
            out = np.diag(t.A @ np.diagonal(Z)) + t.B_tilde * Z + t.C_tilde * Z.T
            Phi[:, k * d + l] = out.reshape(-1)
    return Phi


def triple_of_map(Phi, d):
    """Read ``(A, B, C)`` back from a superoperator of the :func:`doc_map` form."""
    A = np.zeros((d, d), dtype=complex)
    B = np.zeros((d, d), dtype=complex)
    C = np.zeros((d, d), dtype=complex)
    for i in range(d):
        for j in range(d):
            A[i, j] = Phi[i * d + i, j * d + j]
            if i != j:
                B[i, j] = Phi[i * d + j, i * d + j]
                C[i, j] = Phi[i * d + j, j * d + i]
    np.fill_diagonal(B, np.diagonal(A))
    np.fill_diagonal(C, np.diagonal(A))
    return MatrixTriple(A, B, C)


def compose_oracle(t1, t2):
    """``t1 o t2`` as the triple of the composed maps ``Phi_1 Phi_2``."""
    return triple_of_map(doc_map(t1) @ doc_map(t2), t1.dim)


def haar_states(n, d, rng):
    z = rng.standard_normal((n, d)) + 1j * rng.standard_normal((n, d))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def monte_carlo_ep(X, d, n, rng, batch=20000):
    """``(d+1)/(d-1)`` times the mean linear entropy of ``X|phi>|psi>``."""
    total = 0.0
    done = 0
    while done < n:
        m = min(batch, n - done)
        phi, psi = haar_states(m, d, rng), haar_states(m, d, rng)
        prod = (phi[:, :, None] * psi[:, None, :]).reshape(m, d * d)
        out = (prod @ X.T).reshape(m, d, d)
        rho = np.einsum("nij,nkj->nik", out, out.conj())
        purity = np.einsum("nik,nki->n", rho, rho).real
        total += float(np.sum(1.0 - purity))
        done += m
    return (d + 1) / (d - 1) * total / n


def unitary_cases(n, dims, seed):
    """``n`` seeded random unitary triples over all classes and both fields."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        d = int(rng.choice(list(dims)))
        cls = list(InvarianceClass)[int(rng.integers(3))]
        field = list(Field)[int(rng.integers(2))]
        out.append(random_unitary(d, cls, field, seed=int(rng.integers(2**63))))
    return out


def triple_pairs(n, dims, seed):
    rng = np.random.default_rng(seed)
    pairs = []
    for _ in range(n):
        d = int(rng.choice(list(dims)))
        pairs.append((random_triple(d, rng), random_triple(d, rng)))
    return pairs
