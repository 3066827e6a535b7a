"""Small numerical helpers shared across the package."""

import numpy as np

RANK_RTOL = 1e-12


def rank_threshold(scale, size):
    """Cutoff below which a singular value is treated as zero.

    ``scale`` is the largest singular value of the *whole* operator the
    matrix belongs to, ``size`` its side length.
    """
    return size * scale * RANK_RTOL


def numerical_rank(M, scale=None, size=None):
    """Count singular values of ``M`` above :func:`rank_threshold`.

    Passing an explicit ``scale``/``size`` lets sub-blocks of a larger
    operator be ranked with the threshold of the full operator, so block
    ranks add up to the dense rank.
    """
    M = np.asarray(M)
    if M.size == 0:
        return 0
    s = np.linalg.svd(M, compute_uv=False)
    if scale is None:
        scale = s[0] if s.size else 0.0
    if size is None:
        size = max(M.shape)
    if scale == 0.0:
        return 0
    return int(np.count_nonzero(s > rank_threshold(scale, size)))


def haar_unitary(n, rng, real=False):
    """Haar-distributed element of U(n) (or O(n) when ``real``).

    QR of a Gaussian matrix, with the phases of ``diag(R)`` folded back
    into ``Q`` so the distribution is exactly Haar.
    """
    if real:
        Z = rng.standard_normal((n, n))
    else:
        Z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    Q, R = np.linalg.qr(Z)
    diag = np.diagonal(R)
    phases = diag / np.abs(diag)
    return Q * phases[np.newaxis, :]


def haar_state(n, rng):
    """Uniformly random unit vector in C^n."""
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


def random_phases(n, rng, real=False):
    if real:
        return rng.choice(np.array([-1.0, 1.0]), size=n)
    return np.exp(2j * np.pi * rng.random(n))


def unitarity_defect(U):
    """Frobenius norm of ``U^dagger U - 1``."""
    U = np.asarray(U)
    return float(np.linalg.norm(U.conj().T @ U - np.eye(U.shape[0])))
