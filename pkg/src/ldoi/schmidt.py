"""Operator Schmidt rank and coefficients of LDOI triples.

Realignment maps the triple ``(A, B, C)`` to ``(B, A, C)``, so the
realigned operator splits into the block ``A`` plus the 2x2 blocks
``[[B_ij, C_ij], [C_ji, B_ji]]``; the Schmidt rank is the sum of their ranks.

:func:`make_rank` builds a real orthogonal LDOI triple of any prescribed
Schmidt rank ``1..d^2`` for ``d >= 3``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm
from scipy.optimize import least_squares

from ._linalg import haar_unitary, numerical_rank, rank_threshold
from .embed import dense_realign, embed, pair_block, pair_order
from .triples import MatrixTriple, realign
from .unitary import EPS_U, check_unitary


@dataclass
class SchmidtSpectrum:
    coefficients: np.ndarray

    @property
    def rank(self):
        return len(self.coefficients)

    def to_dict(self):
        return {"rank": self.rank, "coefficients": [float(x) for x in self.coefficients]}


def _realigned_blocks(t):
    yield t.A
    for i, j in pair_order(t.dim):
        yield pair_block(t.B, t.C, i, j)


def schmidt_rank(t):
    """Operator Schmidt rank from the block formula."""
    blocks = list(_realigned_blocks(t))
    scale = max(np.linalg.norm(M, 2) for M in blocks)
    if scale == 0.0:
        return 0
    n = t.dim ** 2
    return sum(numerical_rank(M, scale=scale, size=n) for M in blocks)


def dense_schmidt_rank(t):
    """Reference value: numerical rank of the dense realignment."""
    return numerical_rank(dense_realign(embed(t)))


def schmidt_coefficients(t):
    R = embed(realign(t))
    s = np.linalg.svd(R, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return SchmidtSpectrum(np.zeros(0))
    keep = s > rank_threshold(s[0], R.shape[0])
    return SchmidtSpectrum(s[keep])


def is_product(t):
    return schmidt_rank(t) == 1


# Explicit triples for the cases the generic recipes do not reach.
_S = 1 / np.sqrt(2)

_EXPLICIT = {
    # (d, rank): (A, C, B or None for B = diag A)
    (3, 4): (
        [[_S, _S, -1], [_S, _S, 1], [1, -1, 1]],
        [[_S, -_S, 0], [_S, _S, 0], [0, 0, 1]],
        [[_S, -_S, 0], [_S, _S, 0], [0, 0, 1]],
    ),
    (3, 5): ([[1, 0, 1], [0, 1, 1], [1, 1, 1]], [[1, 1, 0], [1, 1, 0], [0, 0, 1]], None),
    (3, 6): ([[1, 0, 0], [0, 1, 1], [0, 1, 1]], [[1, 1, 1], [1, 1, 0], [1, 0, 1]], None),
    (3, 7): ([[1, 0, 0], [0, 1, 1], [0, 1, -1]], [[1, 1, 1], [1, 1, 0], [1, 0, -1]], None),
    (4, 5): (
        [[-1, 0, 1, 1], [0, -1, 1, 1], [1, 1, -1, -1], [1, 1, 1, 1]],
        [[-1, 1, 0, 0], [1, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, 1]],
        None,
    ),
    (4, 6): (
        [[-1, 0, 1, 1], [0, -1, 1, 1], [1, 1, -1, 1], [1, 1, 1, -1]],
        [[-1, 1, 0, 0], [1, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]],
        None,
    ),
    (4, 7): (
        [[-1, 0, 0, 1], [0, -1, -1, 1], [0, 1, 1, 1], [1, 1, 1, -1]],
        [[-1, 1, 1, 0], [1, -1, 0, 0], [1, 0, 1, 0], [0, 0, 0, -1]],
        None,
    ),
    (4, 8): (
        [[-1, 0, 0, 1], [0, -1, 1, 1], [0, 1, -1, 1], [1, 1, 1, -1]],
        [[-1, 1, 1, 0], [1, -1, 0, 0], [1, 0, -1, 0], [0, 0, 0, -1]],
        None,
    ),
    (4, 9): (
        [[-1, 0, 0, 0], [0, -1, 1, 1], [0, 1, -1, -1], [0, 1, 1, 1]],
        [[-1, 1, 1, 1], [1, -1, 0, 0], [1, 0, -1, 0], [1, 0, 0, 1]],
        None,
    ),
    (4, 10): (
        [[-1, 0, 0, 0], [0, -1, 1, 1], [0, 1, -1, 1], [0, 1, 1, -1]],
        [[-1, 1, 1, 1], [1, -1, 0, 0], [1, 0, -1, 0], [1, 0, 0, -1]],
        None,
    ),
    (4, 11): (
        [[_S, _S, 0, 0], [_S, _S, 0, 1], [0, 0, 1, 1], [0, 1, 1, 1]],
        [[_S, -_S, 1, 1], [_S, _S, 1, 0], [1, 1, 1, 0], [1, 0, 0, 1]],
        [[_S, -_S, 0, 0], [_S, _S, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
    ),
    (5, 6): (
        [[-1, 0, 1, 1, 1], [0, -1, 1, 1, 1], [1, 1, -1, 1, 1], [1, 1, 1, -1, -1], [1, 1, 1, 1, 1]],
        [[-1, 1, 0, 0, 0], [1, -1, 0, 0, 0], [0, 0, -1, 0, 0], [0, 0, 0, -1, 0], [0, 0, 0, 0, 1]],
        None,
    ),
    (5, 7): (
        [[-1, 0, 1, 1, 1], [0, -1, 1, 1, 1], [1, 1, -1, 1, 1], [1, 1, 1, -1, 1], [1, 1, 1, 1, -1]],
        [[-1, 1, 0, 0, 0], [1, -1, 0, 0, 0], [0, 0, -1, 0, 0], [0, 0, 0, -1, 0], [0, 0, 0, 0, -1]],
        None,
    ),
    (5, 8): (
        [[-1, 0, 0, 1, 1], [0, -1, 1, 1, 1], [0, 1, -1, 1, 1], [1, 1, 1, -1, -1], [1, 1, 1, 1, 1]],
        [[-1, 1, 1, 0, 0], [1, -1, 0, 0, 0], [1, 0, -1, 0, 0], [0, 0, 0, -1, 0], [0, 0, 0, 0, 1]],
        None,
    ),
}


def explicit_triple(d, rank):
    """One of the explicit orthogonal triples with known Schmidt rank."""
    A, C, B = _EXPLICIT[(d, rank)]
    A = np.array(A, dtype=float)
    B = np.diag(np.diagonal(A)) if B is None else np.array(B, dtype=float)
    return MatrixTriple(A, B, np.array(C, dtype=float))


def explicit_cases():
    return sorted(_EXPLICIT)


def _low_rank(d, target):
    """Sign matrix ``A`` of rank ``target`` from columns of ``J - 2*1``."""
    M = np.ones((d, d)) - 2 * np.eye(d)
    A = M[:, [min(k, target - 1) for k in range(d)]]
    D = np.diag(np.diagonal(A))
    return MatrixTriple(A, D, D.copy())


def orthogonal_with_zero_diagonal(d, m, rng, attempts=100, floor=1e-3):
    """Real orthogonal ``B`` with ``B_ii = 0`` exactly for ``i < m``.

    All other entries are kept at least ``floor`` in modulus. Solved by
    least squares over ``B = Q0 expm(K)`` (``K`` skew) from a Haar start.
    """
    iu = np.triu_indices(d, 1)
    offmask = ~np.eye(d, dtype=bool)
    for _ in range(attempts):
        Q0 = haar_unitary(d, rng, real=True)
        if m == 0:
            B = Q0
        else:
            def point(x):
                K = np.zeros((d, d))
                K[iu] = x
                return Q0 @ expm(K - K.T)

            res = least_squares(
                lambda x: np.diagonal(point(x))[:m],
                np.zeros(len(iu[0])),
                xtol=1e-15, ftol=1e-15, gtol=1e-15,
            )
            B = point(res.x)
            if np.max(np.abs(np.diagonal(B)[:m])) > 1e-13:
                continue
        if np.min(np.abs(B[offmask])) < floor:
            continue
        if m < d and np.min(np.abs(np.diagonal(B)[m:])) < floor:
            continue
        B = B.copy()
        B[np.arange(m), np.arange(m)] = 0.0
        return B
    raise RuntimeError(f"no orthogonal {d}x{d} matrix with {m} diagonal zeros found")


def _high_rank(d, target, rng):
    """Ranks ``d^2-d .. d^2``: dense orthogonal ``B`` with ``d^2-target``
    diagonal zeros, ``A = diag B``, off-diagonal ``C`` all ones."""
    B = orthogonal_with_zero_diagonal(d, d * d - target, rng)
    D = np.diag(np.diagonal(B))
    C = np.ones((d, d)) - np.eye(d) + D
    return MatrixTriple(D, B, C)


def _zero_pairs_for_equal_rows(d, p, rng):
    """``p`` symmetric zero positions compatible with rows 0 and 1 being equal."""
    singles = [(a, b) for a in range(2, d) for b in range(a + 1, d)]
    doubles = list(range(2, d))
    rng.shuffle(singles)
    rng.shuffle(doubles)
    q = max(0, -(-(p - len(singles)) // 2))
    n_single = p - 2 * q
    if q > len(doubles) or n_single < 0:
        return None
    pairs = singles[:n_single]
    for j in doubles[:q]:
        pairs += [(0, j), (1, j)]
    return pairs


def _middle_rank(d, target, rng, attempts=2000):
    """Ranks ``d+1 .. d^2-d-1`` with ``B`` diagonal.

    ``p`` pairs ``i<j`` carry the 2x2 block in ``C`` (``A_ij = A_ji = 0``),
    the rest in ``A``; the Schmidt rank is ``rank A + 2p``. ``rank A`` is
    steered to ``d-1`` (two equal rows) or ``d``.
    """
    p = (target - d + 1) // 2
    r = target - 2 * p
    for _ in range(attempts):
        if r == d - 1:
            pairs = _zero_pairs_for_equal_rows(d, p, rng)
            if pairs is None:
                raise RuntimeError(f"rank {target} not reachable by the equal-rows recipe at d={d}")
        else:
            all_pairs = pair_order(d)
            idx = rng.choice(len(all_pairs), size=p, replace=False)
            pairs = [all_pairs[k] for k in idx]
        A = rng.choice(np.array([-1.0, 1.0]), size=(d, d))
        C = np.zeros((d, d))
        for i, j in pairs:
            A[i, j] = A[j, i] = 0.0
            C[i, j], C[j, i] = rng.choice(np.array([-1.0, 1.0]), size=2)
        if r == d - 1:
            A[1] = A[0]
        np.fill_diagonal(C, np.diagonal(A))
        if numerical_rank(A) != r:
            continue
        return MatrixTriple(A, np.diag(np.diagonal(A)), C)
    raise RuntimeError(f"no sign pattern of rank {r} found for target {target} at d={d}")


def make_rank(d, target, seed=0, explicit=True):
    """Real orthogonal LDOI triple with operator Schmidt rank ``target``.

    Ranks ``<= d`` use a sign matrix ``A`` with ``B = C = diag A``; ranks
    ``>= d^2-d`` use an orthogonal ``B`` with prescribed diagonal zeros;
    the band in between keeps ``B`` diagonal and trades ``rank A`` against
    the number of nonzero off-diagonal ``C`` entries. The explicit triples
    are used where available (always for d = 3, where the generic recipes
    do not reach every rank). Every result is checked for orthogonality and
    rank before it is returned.
    """
    if d < 3:
        raise ValueError("make_rank needs d >= 3 (rank 3 is impossible at d = 2)")
    if not 1 <= target <= d * d:
        raise ValueError(f"target rank must lie in 1..{d * d}")
    rng = np.random.default_rng(seed)
    use_table = explicit or d == 3
    if use_table and (d, target) in _EXPLICIT:
        t = explicit_triple(d, target)
    elif target <= d:
        t = _low_rank(d, target)
    elif target >= d * d - d:
        t = _high_rank(d, target, rng)
    else:
        t = _middle_rank(d, target, rng)

    rep = check_unitary(t, field="real")
    if not rep.is_unitary:
        raise AssertionError(f"construction for rank {target} at d={d} is not orthogonal")
    got, oracle = schmidt_rank(t), dense_schmidt_rank(t)
    if got != target or oracle != target:
        raise AssertionError(
            f"construction for rank {target} at d={d} has rank {got} (oracle {oracle})"
        )
    return t


def orthogonality_defect(t):
    return float(np.linalg.norm(embed(t).T @ embed(t) - np.eye(t.dim ** 2)))


__all__ = [
    "SchmidtSpectrum",
    "schmidt_rank",
    "dense_schmidt_rank",
    "schmidt_coefficients",
    "is_product",
    "make_rank",
    "explicit_triple",
    "explicit_cases",
    "orthogonal_with_zero_diagonal",
    "orthogonality_defect",
    "EPS_U",
]
