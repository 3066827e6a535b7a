"""Discrimination of LDOI unitaries.

Two unitaries ``X1, X2`` are perfectly distinguishable with ``k`` parallel
copies iff the eigenvalues of ``X2^dagger X1`` spread over an arc of length
at least ``pi / k``. The eigenvalues of an LDOI unitary are those of ``B``
together with those of the 2x2 pair blocks, so no dense eigensolver is
needed.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from ._linalg import haar_state
from .embed import blocks, embed
from .triples import adjoint, triple_product, _check_same_dim
from .unitary import EPS_U, check_unitary

TWO_PI = 2 * math.pi
THETA_ZERO = 1e-9


class Signal(enum.Enum):
    """Outcome that is not a copy count."""

    EQUAL_SPECTRUM = "equal-spectrum"


EQUAL_SPECTRUM = Signal.EQUAL_SPECTRUM


class NotUnitaryError(ValueError):
    pass


@dataclass
class ArcResult:
    theta: float
    eigen_angles: np.ndarray

    def to_dict(self):
        return {"theta": self.theta, "eigen_angles": [float(a) for a in self.eigen_angles]}


def smallest_arc(eigenvalues):
    """Length of the shortest arc of the unit circle holding every eigenvalue."""
    angles = np.sort(np.mod(np.angle(np.asarray(eigenvalues)), TWO_PI))
    if angles.size <= 1:
        return ArcResult(0.0, angles)
    gaps = np.diff(angles)
    wrap = TWO_PI - (angles[-1] - angles[0])
    theta = TWO_PI - max(float(gaps.max()), wrap)
    return ArcResult(max(theta, 0.0), angles)


def _check_on_circle(eigs, what):
    off = float(np.max(np.abs(np.abs(eigs) - 1.0)))
    if off > EPS_U:
        raise NotUnitaryError(f"{what} has an eigenvalue {off:.3g} off the unit circle")


def block_spectrum(t):
    return blocks(t).spectrum()


def arc(t):
    eigs = block_spectrum(t)
    _check_on_circle(eigs, "triple")
    return smallest_arc(eigs)


def dense_arc(X):
    eigs = np.linalg.eigvals(X)
    _check_on_circle(eigs, "matrix")
    return smallest_arc(eigs)


def copies_for_arc(theta):
    """``ceil(pi / theta)``, or :data:`EQUAL_SPECTRUM` when ``theta`` is 0."""
    if theta <= THETA_ZERO:
        return EQUAL_SPECTRUM
    return max(1, math.ceil(math.pi / theta - 1e-9))


def _require_unitary(t, name):
    if not check_unitary(t).is_unitary:
        raise NotUnitaryError(f"{name} is not unitary")


def relative(t1, t2):
    """Triple of ``X2^dagger X1``."""
    _check_same_dim(t1, t2)
    return triple_product(adjoint(t2), t1)


def k_copies(t1, t2):
    """Fewest copies making ``X1`` and ``X2`` perfectly distinguishable."""
    _require_unitary(t1, "first triple")
    _require_unitary(t2, "second triple")
    return copies_for_arc(arc(relative(t1, t2)).theta)


def _k_min(values):
    ints = [v for v in values if v is not EQUAL_SPECTRUM]
    return min(ints) if ints else EQUAL_SPECTRUM


def k_bound(t1, t2):
    """Upper bound on :func:`k_copies` from the ``B`` and pair blocks alone.

    Each block of ``X2^dagger X1`` is the product of the corresponding
    blocks, and the full arc is at least any block's arc.
    """
    _require_unitary(t1, "first triple")
    _require_unitary(t2, "second triple")
    rel = blocks(relative(t1, t2))
    ks = [copies_for_arc(smallest_arc(np.linalg.eigvals(rel.b_block)).theta)]
    ks += [copies_for_arc(smallest_arc(np.linalg.eigvals(M)).theta) for M in rel.pair_blocks.values()]
    return _k_min(ks)


def k_bound_parts(t1, t2):
    """``(k(B, B'), min over pairs of k(block, block'))`` as in the bound."""
    _require_unitary(t1, "first triple")
    _require_unitary(t2, "second triple")
    b1, b2 = blocks(t1), blocks(t2)

    def k(U, V):
        return copies_for_arc(smallest_arc(np.linalg.eigvals(V.conj().T @ U)).theta)

    kb = k(b1.b_block, b2.b_block)
    kac = _k_min([k(b1.pair_blocks[key], b2.pair_blocks[key]) for key in b1.pair_blocks])
    return kb, kac


@dataclass
class LocalRangeSample:
    values: np.ndarray
    min_abs: float
    argmin: int
    witness_v: np.ndarray
    witness_w: np.ndarray


def local_value(t, v, w):
    """``<v (x) w| X |v (x) w>`` from the triple entries."""
    A, Bt, Ct = t.A, t.B_tilde, t.C_tilde
    x, y = v * v.conj(), w * w.conj()
    p, q = v * w, v * w.conj()
    return complex(x.conj() @ A @ y + p.conj() @ Bt @ p + q.conj() @ Ct @ q)


def dense_local_value(X, v, w):
    psi = np.kron(v, w)
    return complex(psi.conj() @ X @ psi)


def local_range_sample(t, n_samples, seed, n_check=10, tol=1e-10):
    """Sample the local numerical range at Haar-random product vectors.

    The first ``n_check`` samples are recomputed from the dense matrix; a
    mismatch beyond ``tol`` raises. This only estimates how close the range
    comes to 0.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be positive")
    rng = np.random.default_rng(seed)
    d = t.dim
    X = embed(t) if n_check else None
    values = np.empty(n_samples, dtype=complex)
    best, best_k, best_vw = math.inf, 0, (None, None)
    for k in range(n_samples):
        v, w = haar_state(d, rng), haar_state(d, rng)
        z = local_value(t, v, w)
        if k < n_check:
            ref = dense_local_value(X, v, w)
            if abs(z - ref) > tol:
                raise AssertionError(f"closed form disagrees with dense value by {abs(z - ref):.3g}")
        values[k] = z
        if abs(z) < best:
            best, best_k, best_vw = abs(z), k, (v, w)
    return LocalRangeSample(values, float(best), best_k, *best_vw)
