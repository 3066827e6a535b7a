"""Vectorised numpy scan, used when the compiled kernel is unavailable."""

import numpy as np

MAX_DIM = 8
CHUNK = 1 << 18

if hasattr(np, "bitwise_count"):
    def _popcount(x):
        return np.bitwise_count(x).astype(np.int64)
else:  # numpy < 2.0
    _TABLE = np.array([bin(i).count("1") for i in range(256)], dtype=np.int64)

    def _popcount(x):
        out = np.zeros(x.shape, dtype=np.int64)
        for _ in range(8):
            out += _TABLE[x & np.uint64(0xFF)]
            x = x >> np.uint64(8)
        return out


def scan(d, start, stop):
    """Same contract as the compiled ``scan``."""
    if d < 2 or d > MAX_DIM:
        raise ValueError("kernel supports 2 <= d <= 8")
    w = d - 1
    mask = np.uint64((1 << w) - 1)
    best, count, first = -1, 0, 0
    for lo in range(start, stop, CHUNK):
        hi = min(lo + CHUNK, stop)
        n = np.arange(lo, hi, dtype=np.uint64)
        rows = [np.zeros_like(n)]
        rows += [(n >> np.uint64((d - 1 - i) * w)) & mask for i in range(1, d)]
        h = np.full(n.shape, d ** 3, dtype=np.int64)
        for i in range(d):
            for j in range(i + 1, d):
                ip = d - 2 * _popcount(rows[i] ^ rows[j])
                h += 2 * ip * ip
        k = int(np.argmin(h))
        m = int(h[k])
        if best < 0 or m < best:
            best, count, first = m, int(np.count_nonzero(h == m)), lo + k
        elif m == best:
            count += int(np.count_nonzero(h == m))
    return best, count, first
