"""Operator entanglement, entangling power and gate typicality.

For a unitary ``X`` on C^d (x) C^d with swap ``S``:

    E(X)   = 1 - Tr[(X^R X^R^dagger)^2] / d^4
    e_p(X) = (E(X) + E(XS) - E(S)) / E(S)
    g_t(X) = (E(X) - E(XS) + E(S)) / (2 E(S)),     E(S) = 1 - 1/d^2

For LDOI triples ``E(X)`` and ``E(XS)`` have closed forms in the entries of
``(A, B, C)``; the dense route is kept alongside as an oracle.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .embed import dense_realign, embed, swap_matrix
from .triples import MatrixTriple, times_swap
from .unitary import EPS_U, check_unitary


class NotUnitaryError(ValueError):
    pass


@dataclass
class EntanglementProfile:
    e_op: float
    e_op_swapped: float
    e_power: float
    typicality: float

    def to_dict(self):
        return asdict(self)


def swap_entanglement(d):
    return 1.0 - 1.0 / d ** 2


def _profile(d, e, e_s):
    es = swap_entanglement(d)
    if es == 0.0:
        # d = 1: every operator is a phase
        return EntanglementProfile(e, e_s, 0.0, 0.0)
    return EntanglementProfile(e, e_s, (e + e_s - es) / es, (e - e_s + es) / (2 * es))


def _require_unitary(t):
    rep = check_unitary(t)
    if not rep.is_unitary:
        raise NotUnitaryError(
            f"triple is not unitary (B defect {rep.b_defect:.3g}, "
            f"worst pair {rep.worst_pair} defect {rep.pair_defect:.3g})"
        )


def operator_entanglement_closed(t):
    """``E(X(t))`` from the triple entries."""
    A, B, C = t.as_tuple()
    d = t.dim
    G = A @ A.conj().T
    total = np.real(np.trace(G @ G))
    off = ~np.eye(d, dtype=bool)
    mod = (np.abs(B) ** 2 + np.abs(C) ** 2) ** 2
    cross = np.abs(B * C.T.conj() + B.T.conj() * C) ** 2
    total += np.sum(mod[off]) + np.sum(cross[off])
    return float(1.0 - total / d ** 4)


def profile_closed_form(t, check=True):
    if check:
        _require_unitary(t)
    e = operator_entanglement_closed(t)
    e_s = operator_entanglement_closed(times_swap(t))
    return _profile(t.dim, e, e_s)


def dense_operator_entanglement(X):
    """``1 - Tr[(X^R X^R^dagger)^2] / d^4`` for any dense d^2 x d^2 matrix."""
    R = dense_realign(X)
    G = R @ R.conj().T
    d2 = X.shape[0]
    return float(1.0 - np.real(np.trace(G @ G)) / d2 ** 2)


def profile_oracle(t, check=True):
    if check:
        _require_unitary(t)
    X = embed(t)
    e = dense_operator_entanglement(X)
    e_s = dense_operator_entanglement(X @ swap_matrix(t.dim))
    return _profile(t.dim, e, e_s)


def profile(t, oracle=False):
    return profile_oracle(t) if oracle else profile_closed_form(t)


def hadamard_functional(C):
    """``Tr[(C C^dagger)^2]`` for a complex matrix."""
    C = np.asarray(C, dtype=complex)
    G = C @ C.conj().T
    return float(np.real(np.sum(np.abs(G) ** 2)))


def is_complex_hadamard(C, tol=EPS_U):
    C = np.asarray(C, dtype=complex)
    d = C.shape[0]
    if np.max(np.abs(np.abs(C) - 1.0)) > tol:
        return False
    return float(np.linalg.norm(C @ C.conj().T - d * np.eye(d))) <= tol * d


def max_ep_dual_ldui(C, tol=EPS_U):
    """Entangling power of the LDUI dual unitary built on phase matrix ``C``.

    Returns ``(e_p, is_max)``; the maximum ``d/(d+1)`` is reached exactly
    when ``C`` is a complex Hadamard matrix.
    """
    C = np.asarray(C, dtype=complex)
    d = C.shape[0]
    if np.max(np.abs(np.abs(C) - 1.0)) > tol:
        raise ValueError("C must have unimodular entries")
    e_s = 1.0 - hadamard_functional(C) / d ** 4
    e_p = e_s / swap_entanglement(d) if d > 1 else 0.0
    return e_p, is_complex_hadamard(C, tol)


def fourier_matrix(d):
    k = np.arange(d)
    return np.exp(2j * np.pi * np.outer(k, k) / d)


def sylvester_hadamard(d):
    """Real Hadamard matrix of order ``d = 2^n``."""
    if d < 1 or d & (d - 1):
        raise ValueError("Sylvester construction needs a power of two")
    H = np.ones((1, 1))
    while H.shape[0] < d:
        H = np.block([[H, H], [H, -H]])
    return H


def ldui_dual(C):
    """Dual unitary LDUI triple ``(diag C, diag C, C)``."""
    C = np.asarray(C, dtype=complex)
    D = np.diag(np.diagonal(C))
    return MatrixTriple(D, D.copy(), C)
