"""Exact rank and row-profile computations over F_p and Q.

Rows are integer numpy arrays.  Over F_p everything is reduced into
``[0, p)`` and eliminated with int64 arithmetic (p is small enough that
products never overflow).  Over Q, rank is first bounded below by the rank
modulo a large prime and above by the number of distinct nonzero columns
and rows; only when these disagree does a fraction-free elimination on
Python integers run.
"""

from __future__ import annotations

import logging

import numpy as np

log = logging.getLogger(__name__)

# 2**25 - 39, prime; p**2 * 256 still fits in int64
LARGE_PRIME = 33554393


def _as_int64_mod(M, p: int) -> np.ndarray:
    if M.dtype == object:
        return np.array([[int(x) % p for x in row] for row in M], dtype=np.int64).reshape(M.shape)
    return np.mod(M, p).astype(np.int64, copy=False)


def rref_mod_p(M: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p and the pivot columns."""
    A = _as_int64_mod(np.atleast_2d(M), p).copy()
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            A[[r, k]] = A[[k, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = A[r] * inv % p
        col = A[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            A[hit] = (A[hit] - np.outer(col[hit], A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank_mod_p(M: np.ndarray, p: int) -> int:
    M = np.atleast_2d(M)
    if M.size == 0:
        return 0
    M = dedupe_columns(_as_int64_mod(M, p))
    if M.shape[0] > M.shape[1]:
        M = M.T
    return len(rref_mod_p(M, p)[1])


def row_profile_mod_p(M: np.ndarray, p: int) -> list[int]:
    """Indices of the rows that are independent of all earlier rows."""
    M = np.atleast_2d(M)
    if M.size == 0:
        return []
    M = dedupe_columns(_as_int64_mod(M, p))
    # pivot columns of the transpose are the first-come independent rows
    return rref_mod_p(M.T, p)[1]


def dedupe_columns(M: np.ndarray) -> np.ndarray:
    """Drop zero and repeated columns; rank and row dependencies are unchanged."""
    if M.shape[1] == 0:
        return M
    keep = np.any(M != 0, axis=0)
    M = M[:, keep]
    if M.shape[1] == 0:
        return M
    if M.dtype == object:
        seen = {}
        for j in range(M.shape[1]):
            seen.setdefault(tuple(M[:, j]), j)
        return M[:, sorted(seen.values())]
    return np.unique(M, axis=1)


def _integer_rows(M: np.ndarray) -> np.ndarray:
    if M.dtype != object:
        return M
    from fractions import Fraction
    from math import lcm

    out = np.empty(M.shape, dtype=object)
    for i, row in enumerate(M):
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = lcm(den, x.denominator)
        out[i] = [int(x * den) for x in row]
    return out


def bareiss_pivots(M: np.ndarray) -> list[int]:
    """Pivot columns of a fraction-free elimination on Python integers."""
    A = np.array(M, dtype=object)
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    prev = 1
    for c in range(cols):
        if r == rows:
            break
        nz = [i for i in range(r, rows) if A[i, c] != 0]
        if not nz:
            continue
        k = nz[0]
        if k != r:
            A[[r, k]] = A[[k, r]]
        piv = A[r, c]
        below = A[r + 1:, c].copy()
        A[r + 1:, c + 1:] = (A[r + 1:, c + 1:] * piv - np.outer(below, A[r, c + 1:])) // prev
        A[r + 1:, c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return pivots


def bareiss_rank(M: np.ndarray) -> int:
    return len(bareiss_pivots(M))


def _rational_upper_bound(M: np.ndarray) -> int:
    D = dedupe_columns(M)
    if D.shape[1] == 0:
        return 0
    return min(D.shape[1], dedupe_columns(D.T).shape[1])


def rank(M: np.ndarray, characteristic: int) -> int:
    M = np.atleast_2d(M)
    if M.size == 0:
        return 0
    if characteristic:
        return rank_mod_p(M, characteristic)
    M = _integer_rows(M)
    low = rank_mod_p(M, LARGE_PRIME)
    high = _rational_upper_bound(M)
    if low == high:
        return low
    log.info("rational rank not pinned by bounds (%d < %d); running exact elimination", low, high)
    D = dedupe_columns(M)
    return bareiss_rank(D.T if D.shape[0] > D.shape[1] else D)


def row_profile(M: np.ndarray, characteristic: int) -> list[int]:
    """First-come independent rows over F_p or Q."""
    M = np.atleast_2d(M)
    if M.size == 0:
        return []
    if characteristic:
        return row_profile_mod_p(M, characteristic)
    M = _integer_rows(M)
    chosen = row_profile_mod_p(M, LARGE_PRIME)
    if len(chosen) == _rational_upper_bound(M):
        return chosen
    log.info("rational row profile not pinned by bounds; running exact elimination")
    return bareiss_pivots(dedupe_columns(M).T)


def in_span(basis: np.ndarray, v: np.ndarray, characteristic: int) -> bool:
    v = np.atleast_2d(v)
    if not np.any(v != 0):
        return True
    basis = np.atleast_2d(basis)
    if basis.size == 0:
        return False
    both = np.vstack([basis.astype(object) if v.dtype == object else basis, v])
    return rank(both, characteristic) == rank(basis, characteristic)
