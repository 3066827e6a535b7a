"""Hadamardness of sign matrices and the exhaustive dephased search.

``h(C) = Tr[(C C^dagger)^2] = sum_ij |<C_i, C_j>|^2`` over rows ``C_i``. For
a d x d sign matrix ``h(C) >= d^3``, with equality exactly for Hadamard
matrices. For ``+-1`` rows stored as bitmasks (bit set = -1) the inner
product is ``d - 2 popcount(r_i ^ r_j)``, so ``h`` is computed in exact
integer arithmetic.

The scan over all ``2^((d-1)^2)`` dephased matrices runs in a compiled
kernel when it is built, otherwise in a vectorised numpy fallback; both
expose ``scan(d, start, stop)``.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _fallback

try:
    from . import _kernel
except ImportError:  # extension not built
    _kernel = None

MAX_EXHAUSTIVE_DIM = 6

BACKENDS = {"python": _fallback}
if _kernel is not None:
    BACKENDS["compiled"] = _kernel

_forced = os.environ.get("LDOI_HADAMARDNESS_BACKEND")
if _forced:
    if _forced not in BACKENDS:
        raise ImportError(f"LDOI_HADAMARDNESS_BACKEND={_forced!r} is not available")
    DEFAULT_BACKEND = _forced
else:
    DEFAULT_BACKEND = "compiled" if _kernel is not None else "python"


class SignMatrix:
    """d x d matrix over ``{+1, -1}`` stored as one bitmask per row.

    Column 0 is the most significant bit of each row; a set bit means -1.
    """

    __slots__ = ("dim", "rows")

    def __init__(self, dim, rows):
        self.dim = int(dim)
        self.rows = tuple(int(r) for r in rows)
        if len(self.rows) != self.dim or any(r < 0 or r >> self.dim for r in self.rows):
            raise ValueError("rows must be d bitmasks of width d")

    @classmethod
    def from_array(cls, M):
        M = np.asarray(M)
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise ValueError("sign matrix must be square")
        if not np.all(np.isin(M, (1, -1))):
            raise ValueError("sign matrix entries must be +1 or -1")
        d = M.shape[0]
        rows = [sum(1 << (d - 1 - c) for c in range(d) if M[r, c] < 0) for r in range(d)]
        return cls(d, rows)

    @classmethod
    def from_index(cls, d, n):
        """Dephased matrix number ``n`` in enumeration order."""
        w = d - 1
        mask = (1 << w) - 1
        rows = [0] + [(n >> ((d - 1 - i) * w)) & mask for i in range(1, d)]
        return cls(d, rows)

    @classmethod
    def from_text(cls, text):
        """Parse a grid of ``+``/``-`` characters (or ``1``/``-1`` tokens)."""
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if all(set(ln) <= set("+-") for ln in lines):
            M = [[1 if ch == "+" else -1 for ch in ln] for ln in lines]
        else:
            M = [[int(tok) for tok in ln.replace(",", " ").split()] for ln in lines]
        return cls.from_array(np.array(M))

    def to_array(self):
        d = self.dim
        return np.array(
            [[-1 if (r >> (d - 1 - c)) & 1 else 1 for c in range(d)] for r in self.rows]
        )

    def to_text(self):
        return "\n".join("".join("+" if x > 0 else "-" for x in row) for row in self.to_array())

    @property
    def is_dephased(self):
        return all(r & (1 << (self.dim - 1)) == 0 for r in self.rows) and self.rows[0] == 0

    def dephase(self):
        """Flip row and column signs so the first row and column are +1."""
        M = self.to_array()
        M = M * M[:, :1]
        M = M * M[:1, :]
        return SignMatrix.from_array(M)

    def gram(self):
        d = self.dim
        return np.array(
            [[d - 2 * bin(a ^ b).count("1") for b in self.rows] for a in self.rows]
        )

    def __eq__(self, other):
        return isinstance(other, SignMatrix) and (self.dim, self.rows) == (other.dim, other.rows)

    def __hash__(self):
        return hash((self.dim, self.rows))

    def __repr__(self):
        return f"SignMatrix({self.to_array().tolist()})"


def h_measure(C):
    """``Tr[(C C^dagger)^2]``; an exact ``int`` for sign matrices."""
    if isinstance(C, SignMatrix):
        return _h_sign(C)
    M = np.asarray(C)
    if M.ndim == 2 and M.shape[0] == M.shape[1] and np.isrealobj(M) and np.all(np.isin(M, (1, -1))):
        return _h_sign(SignMatrix.from_array(M))
    M = M.astype(complex)
    G = M @ M.conj().T
    return float(np.sum(np.abs(G) ** 2))


def _h_sign(C):
    d = C.dim
    total = 0
    for a in C.rows:
        for b in C.rows:
            ip = d - 2 * bin(a ^ b).count("1")
            total += ip * ip
    return total


@dataclass
class SearchResult:
    dim: int
    min_value: int
    argmin_count: int
    first_argmin: SignMatrix
    first_index: int
    elapsed: float
    backend: str = ""
    workers: int = 1

    def to_dict(self):
        return {
            "dim": self.dim,
            "min_value": self.min_value,
            "argmin_count": self.argmin_count,
            "first_argmin": self.first_argmin.to_array().tolist(),
            "first_index": self.first_index,
            "elapsed": self.elapsed,
            "backend": self.backend,
            "workers": self.workers,
        }


class SearchRangeError(ValueError):
    pass


def _check_dim(d):
    if d < 2:
        raise SearchRangeError("exhaustive search needs d >= 2")
    if d > MAX_EXHAUSTIVE_DIM:
        raise SearchRangeError(
            f"d = {d} means 2^{(d - 1) ** 2} dephased candidates, beyond the exhaustive "
            f"range d <= {MAX_EXHAUSTIVE_DIM}; a heuristic search would be needed"
        )


def merge(a, b):
    """Combine two partial ``(min, count, first_index)`` results."""
    if a[0] < 0:
        return b
    if b[0] < 0:
        return a
    if a[0] < b[0]:
        return a
    if b[0] < a[0]:
        return b
    return a[0], a[1] + b[1], min(a[2], b[2])


def partition(total, parts):
    """Split ``range(total)`` into ``parts`` contiguous index ranges."""
    parts = max(1, min(parts, total))
    bounds = [total * k // parts for k in range(parts + 1)]
    return [(bounds[k], bounds[k + 1]) for k in range(parts)]


def exhaustive_min(d, workers=1, backend=None, chunks=None):
    """Exact minimum of ``h`` over all dephased d x d sign matrices.

    Free entries (rows and columns 1..d-1) are read row-major as the bits
    of an index, most significant first, so increasing index is
    lexicographic order with ``+1`` before ``-1``. The index range is cut
    into contiguous chunks scanned in parallel and merged by
    (min, count, smallest index); the result does not depend on
    ``workers``.
    """
    _check_dim(d)
    backend = backend or DEFAULT_BACKEND
    if backend not in BACKENDS:
        raise ValueError(f"backend {backend!r} not available (have {sorted(BACKENDS)})")
    scan = BACKENDS[backend].scan
    total = 1 << ((d - 1) ** 2)
    workers = max(1, int(workers))
    ranges = partition(total, chunks or 4 * workers)

    t0 = time.perf_counter()
    result = (-1, 0, 0)
    if workers == 1:
        for lo, hi in ranges:
            result = merge(result, scan(d, lo, hi))
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(lambda r: scan(d, r[0], r[1]), ranges):
                result = merge(result, part)
    elapsed = time.perf_counter() - t0

    best, count, first = (int(x) for x in result)
    return SearchResult(
        dim=d,
        min_value=best,
        argmin_count=count,
        first_argmin=SignMatrix.from_index(d, first),
        first_index=first,
        elapsed=elapsed,
        backend=backend,
        workers=workers,
    )


def odd_dim_bound(d):
    return d ** 3 + d * (d - 1)


def odd_d_check(d, **kwargs):
    """Whether the exhaustive minimum at odd ``d`` equals ``d^3 + d(d-1)``."""
    if d % 2 == 0:
        raise ValueError("odd_d_check needs odd d")
    _check_dim(d)
    return exhaustive_min(d, **kwargs).min_value == odd_dim_bound(d)


__all__ = [
    "SignMatrix",
    "SearchResult",
    "SearchRangeError",
    "h_measure",
    "exhaustive_min",
    "odd_d_check",
    "odd_dim_bound",
    "merge",
    "partition",
    "BACKENDS",
    "DEFAULT_BACKEND",
    "MAX_EXHAUSTIVE_DIM",
]
