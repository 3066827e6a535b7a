"""Dense d^2 x d^2 matrices from triples, and back.

Product basis ordering is row-major: ``|ij>`` sits at index ``i*d + j``.
The dense realignment and partial transpose here act on arbitrary
matrices and serve as independent checks of the triple-level rules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .triples import EPS_EQ, MatrixTriple, TripleError


class NotLDOIError(ValueError):
    """A dense matrix has weight outside the LDOI support pattern."""

    def __init__(self, message, coordinate=None, value=None):
        super().__init__(message)
        self.coordinate = coordinate
        self.value = value


def _pattern_indices(d):
    i, j = np.meshgrid(np.arange(d), np.arange(d), indexing="ij")
    i, j = i.ravel(), j.ravel()
    off = i != j
    return i, j, off


def embed(t):
    d = t.dim
    X = np.zeros((d * d, d * d), dtype=complex)
    i, j, off = _pattern_indices(d)
    X[i * d + j, i * d + j] = t.A[i, j]
    io, jo = i[off], j[off]
    X[io * d + io, jo * d + jo] = t.B[io, jo]
    X[io * d + jo, jo * d + io] = t.C[io, jo]
    return X


def ldoi_mask(d):
    """Boolean d^2 x d^2 mask of coordinates an LDOI matrix may occupy."""
    mask = np.zeros((d * d, d * d), dtype=bool)
    i, j, off = _pattern_indices(d)
    mask[i * d + j, i * d + j] = True
    io, jo = i[off], j[off]
    mask[io * d + io, jo * d + jo] = True
    mask[io * d + jo, jo * d + io] = True
    return mask


def side_to_dim(n):
    d = math.isqrt(n)
    if d * d != n or d < 1:
        raise TripleError(f"side {n} is not a perfect square")
    return d


def extract(X, tol=EPS_EQ):
    """Inverse of :func:`embed`.

    Raises :class:`NotLDOIError` naming the largest coordinate outside the
    LDOI support if it exceeds ``tol``.
    """
    X = np.asarray(X, dtype=complex)
    if X.ndim != 2 or X.shape[0] != X.shape[1]:
        raise TripleError(f"dense operator must be square, got {X.shape}")
    d = side_to_dim(X.shape[0])
    outside = np.where(ldoi_mask(d), 0, np.abs(X))
    worst = np.unravel_index(np.argmax(outside), outside.shape)
    if outside[worst] > tol:
        (i, j), (k, l) = divmod(int(worst[0]), d), divmod(int(worst[1]), d)
        raise NotLDOIError(
            f"not LDOI: X[{i}{j},{k}{l}] = {X[worst]:.3g} lies outside the LDOI pattern",
            coordinate=((i, j), (k, l)),
            value=complex(X[worst]),
        )
    i, j, off = _pattern_indices(d)
    A = X[i * d + j, i * d + j].reshape(d, d)
    B = np.diag(np.diagonal(A)).astype(complex)
    C = B.copy()
    io, jo = i[off], j[off]
    B[io, jo] = X[io * d + io, jo * d + jo]
    C[io, jo] = X[io * d + jo, jo * d + io]
    return MatrixTriple(A, B, C)


def dense_realign(X):
    """``X^R[ij, kl] = X[ik, jl]``."""
    X = np.asarray(X)
    d = side_to_dim(X.shape[0])
    return X.reshape(d, d, d, d).transpose(0, 2, 1, 3).reshape(d * d, d * d)


def dense_pt(X):
    """Partial transpose on the second factor: ``X^G[ij, kl] = X[il, kj]``."""
    X = np.asarray(X)
    d = side_to_dim(X.shape[0])
    return X.reshape(d, d, d, d).transpose(0, 3, 2, 1).reshape(d * d, d * d)


def swap_matrix(d):
    S = np.zeros((d * d, d * d))
    for i in range(d):
        for j in range(d):
            S[j * d + i, i * d + j] = 1.0
    return S


@dataclass
class BlockDecomposition:
    """``X = B (+) (+)_{i<j} [[A_ij, C_ij], [C_ji, A_ji]]``."""

    b_block: np.ndarray
    pair_blocks: dict

    @property
    def dim(self):
        return self.b_block.shape[0]

    def spectrum(self):
        parts = [np.linalg.eigvals(self.b_block)]
        parts += [np.linalg.eigvals(M) for M in self.pair_blocks.values()]
        return np.concatenate(parts)

    def direct_sum(self):
        """Block-diagonal matrix in the basis of :func:`block_permutation`."""
        d = self.dim
        out = np.zeros((d * d, d * d), dtype=complex)
        out[:d, :d] = self.b_block
        pos = d
        for key in pair_order(d):
            out[pos:pos + 2, pos:pos + 2] = self.pair_blocks[key]
            pos += 2
        return out

    def reassemble(self):
        """Undo the basis permutation: returns the dense operator."""
        P = block_permutation(self.dim)
        return P.T @ self.direct_sum() @ P


def pair_order(d):
    return [(i, j) for i in range(d) for j in range(i + 1, d)]


def block_permutation(d):
    """Permutation matrix ``P`` with ``P X P^T`` block diagonal.

    New basis: ``|00>, |11>, ...`` first, then ``|ij>, |ji>`` for each
    ``i < j`` in lexicographic order.
    """
    order = [i * d + i for i in range(d)]
    for i, j in pair_order(d):
        order += [i * d + j, j * d + i]
    P = np.zeros((d * d, d * d))
    P[np.arange(d * d), order] = 1.0
    return P


def pair_block(M, N, i, j):
    """``[[M_ij, N_ij], [N_ji, M_ji]]``."""
    return np.array([[M[i, j], N[i, j]], [N[j, i], M[j, i]]], dtype=complex)


def blocks(t):
    pairs = {(i, j): pair_block(t.A, t.C, i, j) for i, j in pair_order(t.dim)}
    return BlockDecomposition(np.array(t.B, dtype=complex), pairs)
