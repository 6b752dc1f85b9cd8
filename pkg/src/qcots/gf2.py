"""Bit-packed GF(2) matrices: rows of little-endian uint64 words."""

from __future__ import annotations

import numpy as np


def pack_rows(bits: np.ndarray) -> np.ndarray:
    """Pack a 2-d 0/1 array row-wise; column c lands in word c//64, bit c%64."""
    bits = np.asarray(bits, dtype=np.uint8)
    rows, cols = bits.shape
    nwords = (cols + 63) // 64
    packed = np.zeros((rows, nwords * 8), dtype=np.uint8)
    packed[:, : (cols + 7) // 8] = np.packbits(bits, axis=1, bitorder="little")
    return packed.view("<u8")


def unpack_rows(words: np.ndarray, cols: int) -> np.ndarray:
    as_bytes = np.ascontiguousarray(words).astype("<u8", copy=False).view(np.uint8)
    return np.unpackbits(as_bytes, axis=-1, bitorder="little", count=cols)


def popcount_rows(words: np.ndarray) -> np.ndarray:
    return np.bitwise_count(words).sum(axis=-1, dtype=np.int64)


def gauss_jordan_prefix(m: np.ndarray, npivots: int) -> bool:
    """Reduce ``m`` in place so its first ``npivots`` columns are the identity.

    Rows are swapped as needed. Returns False, leaving ``m`` partially
    reduced, as soon as one of those columns has no pivot (the leading
    square block is singular).
    """
    one = np.uint64(1)
    for c in range(npivots):
        w, bit = c >> 6, np.uint64(c & 63)
        col = (m[:, w] >> bit) & one
        below = np.flatnonzero(col[c:])
        if below.size == 0:
            return False
        piv = c + int(below[0])
        if piv != c:
            m[[c, piv]] = m[[piv, c]]
            col[c], col[piv] = col[piv], col[c]
        col[c] = 0
        hits = np.flatnonzero(col)
        if hits.size:
            # pivot row is zero left of column c, so only words >= w change
            m[hits, w:] ^= m[c, w:]
    return True


def rank(bits: np.ndarray) -> int:
    """Rank of a 0/1 matrix over GF(2)."""
    m = pack_rows(bits).copy()
    rows, cols = np.asarray(bits).shape
    one = np.uint64(1)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        col = (m[:, c >> 6] >> np.uint64(c & 63)) & one
        below = np.flatnonzero(col[r:])
        if below.size == 0:
            continue
        piv = r + int(below[0])
        m[[r, piv]] = m[[piv, r]]
        col[r], col[piv] = col[piv], col[r]
        col[r] = 0
        hits = np.flatnonzero(col)
        m[hits] ^= m[r]
        r += 1
    return r
