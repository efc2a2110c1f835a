"""Dense linear algebra over prime fields GF(p), p <= 13.

Matrices are small numpy int64 arrays with entries reduced mod p.  Row
reduction is plain Gauss-Jordan; fields this small need no pivoting
strategy beyond "first nonzero".
"""

from __future__ import annotations

import numpy as np

from .core import RankTable, bits_of
from .errors import InvalidInput

SUPPORTED_PRIMES = (2, 3, 5, 7, 11, 13)


def validate_prime(p: int) -> int:
    if p not in SUPPORTED_PRIMES:
        raise InvalidInput(f"field order must be a prime <= 13, got {p}")
    return p


def as_field_matrix(a, p: int) -> np.ndarray:
    validate_prime(p)
    arr = np.atleast_2d(np.asarray(a, dtype=np.int64)) % p
    if arr.ndim != 2:
        raise InvalidInput(f"expected a matrix, got ndim {arr.ndim}")
    return arr


def inverse_mod(x: int, p: int) -> int:
    return pow(int(x) % p, p - 2, p)


def rref(a, p: int) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row echelon form and the tuple of pivot columns."""
    m = as_field_matrix(a, p).copy()
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        hits = np.nonzero(m[r:, c])[0]
        if len(hits) == 0:
            continue
        lead = r + int(hits[0])
        if lead != r:
            m[[r, lead]] = m[[lead, r]]
        m[r] = m[r] * inverse_mod(m[r, c], p) % p
        others = np.nonzero(m[:, c])[0]
        for i in others:
            if i != r:
                m[i] = (m[i] - m[i, c] * m[r]) % p
        pivots.append(c)
        r += 1
    return m, tuple(pivots)


def rank(a, p: int) -> int:
    return len(rref(a, p)[1])


def row_space_key(a, p: int) -> bytes:
    """Canonical bytes for the row space: RREF with zero rows dropped."""
    m, pivots = rref(a, p)
    k = len(pivots)
    body = m[:k]
    return bytes([p, k, m.shape[1]]) + body.astype(np.uint8).tobytes()


def span_size(a, p: int) -> int:
    """|row space|, by explicit closure; an independent check on rank."""
    m = as_field_matrix(a, p)
    seen = {bytes(np.zeros(m.shape[1], dtype=np.int64) % p)}
    frontier = [np.zeros(m.shape[1], dtype=np.int64)]
    while frontier:
        v = frontier.pop()
        for row in m:
            for scale in range(1, p):
                w = (v + scale * row) % p
                key = w.tobytes()
                if key not in seen:
                    seen.add(key)
                    frontier.append(w)
    return len(seen)


def vector_matroid(a, p: int) -> RankTable:
    """Matroid of the columns of a over GF(p)."""
    m = as_field_matrix(a, p)
    ncols = m.shape[1]
    ranks = np.zeros(1 << ncols, dtype=np.uint8)
    for mask in range(1, 1 << ncols):
        ranks[mask] = rank(m[:, bits_of(mask)], p)
    return RankTable(ncols, ranks)
