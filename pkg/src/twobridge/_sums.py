"""Chunked evaluation of the sign sequence (-1)^floor(q k / p)."""

import numpy as np

from .config import CHUNK

_INT64_SAFE = 1 << 62


def sign_chunks(p, q, start, stop, chunk=CHUNK):
    """
    Yield ``(k0, signs)`` where ``signs[j] = (-1)^floor(q (k0+j) / p)``
    for k in [start, stop).  Floors are mathematical floors, so negative q
    is handled correctly.  Falls back to Python integers once q*k could
    leave the int64 range.
    """
    fast = abs(q) * max(abs(start), abs(stop)) < _INT64_SAFE and p < _INT64_SAFE
    for k0 in range(start, stop, chunk):
        k1 = min(k0 + chunk, stop)
        if fast:
            k = np.arange(k0, k1, dtype=np.int64)
            parity = np.floor_divide(q * k, p) & 1
        else:
            parity = np.array([(q * k // p) & 1 for k in range(k0, k1)], dtype=np.int64)
        yield k0, 1 - 2 * parity


def sign_sum(p, q, start, stop):
    """Sum of (-1)^floor(q k / p) over start <= k < stop, as a Python int."""
    return sum(int(s.sum()) for _, s in sign_chunks(p, q, start, stop))
