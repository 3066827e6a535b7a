# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled scan over dephased sign matrices."""

from libc.stdint cimport int64_t, uint64_t

MAX_DIM = 8


def scan(int d, uint64_t start, uint64_t stop):
    """Minimum of h over candidate indices ``start <= n < stop``.

    Returns ``(min_value, argmin_count, first_argmin_index)``; ``min_value``
    is -1 for an empty range.
    """
    if d < 2 or d > MAX_DIM:
        raise ValueError("kernel supports 2 <= d <= 8")
    cdef int w = d - 1
    cdef uint64_t mask = (1ULL << w) - 1
    cdef uint64_t rows[8]
    cdef int sq[128]  # (d - 2 popcount(x))^2 for x < 2^w
    cdef int i, j, pc
    cdef uint64_t x, r, r_lo, r_hi, prefix_n, n
    cdef int64_t h, h_prefix
    cdef int64_t base = <int64_t>d * d * d
    cdef int64_t best = -1
    cdef uint64_t count = 0
    cdef uint64_t first = 0

    for x in range(mask + 1):
        pc = 0
        r = x
        while r:
            pc += r & 1
            r >>= 1
        sq[x] = (d - 2 * pc) * (d - 2 * pc)

    rows[0] = 0
    with nogil:
        n = start
        while n < stop:
            # rows 0..d-2 are fixed while the last row sweeps its values
            prefix_n = n >> w
            for i in range(1, d - 1):
                rows[i] = (n >> ((d - 1 - i) * w)) & mask
            h_prefix = base
            for i in range(d - 1):
                for j in range(i + 1, d - 1):
                    h_prefix += 2 * sq[rows[i] ^ rows[j]]
            r_lo = n & mask
            r_hi = mask + 1
            if ((prefix_n + 1) << w) > stop:
                r_hi = stop - (prefix_n << w)
            for r in range(r_lo, r_hi):
                h = h_prefix
                for i in range(d - 1):
                    h += 2 * sq[rows[i] ^ r]
                if best < 0 or h < best:
                    best = h
                    count = 1
                    first = (prefix_n << w) | r
                elif h == best:
                    count += 1
            n = (prefix_n + 1) << w
    return best, count, first
