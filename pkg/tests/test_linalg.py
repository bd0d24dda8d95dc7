import random
from fractions import Fraction

import numpy as np
import pytest

from gdterwilliger import linalg


def _rank_fraction(rows):
    """Plain Gauss-Jordan over Fraction, as an independent reference."""
    A = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    cols = len(A[0]) if A else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        for i in range(len(A)):
            if i != rank and A[i][c] != 0:
                f = A[i][c] / A[rank][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[rank])]
        rank += 1
    return rank


def _rank_mod_reference(rows, p):
    A = [[x % p for x in r] for r in rows]
    rank = 0
    for c in range(len(A[0])):
        piv = next((i for i in range(rank, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][c], -1, p)
        A[rank] = [a * inv % p for a in A[rank]]
        for i in range(len(A)):
            if i != rank and A[i][c]:
                f = A[i][c]
                A[i] = [(a - f * b) % p for a, b in zip(A[i], A[rank])]
        rank += 1
    return rank


@pytest.mark.parametrize("seed", range(20))
def test_rank_against_reference(seed):
    rng = random.Random(seed)
    r, c = rng.randint(1, 9), rng.randint(1, 9)
    base = [[rng.randint(-3, 3) for _ in range(c)] for _ in range(min(r, 3))]
    rows = base + [[sum(rng.randint(-2, 2) * b[j] for b in base) for j in range(c)] for _ in range(r - len(base))]
    M = np.array(rows, dtype=np.int64)
    assert linalg.rank(M, 0) == _rank_fraction(rows)
    for p in (2, 3, 5, 7):
        assert linalg.rank(M, p) == _rank_mod_reference(rows, p)


def test_characteristic_sensitive_rank():
    M = np.array([[1, 1], [1, -1]], dtype=np.int64)
    assert linalg.rank(M, 0) == 2
    assert linalg.rank(M, 3) == 2
    assert linalg.rank(M, 2) == 1


def test_bareiss_fallback_path():
    # modular rank at the large prime is deficient, so exact elimination runs
    p = linalg.LARGE_PRIME
    M = np.array([[1, 1, 0], [1, 1 + p, 0], [0, 0, 1], [0, 0, 1]], dtype=np.int64)
    assert linalg.rank_mod_p(M, p) == 2
    assert linalg.rank(M, 0) == 3
    assert linalg.row_profile(M, 0) == [0, 1, 2]


def test_object_and_fraction_rows():
    M = np.array([[Fraction(1, 2), Fraction(1, 3)], [3, 2]], dtype=object)
    assert linalg.rank(M, 0) == 1
    big = np.array([[2**80, 1], [2**81, 2]], dtype=object)
    assert linalg.rank(big, 0) == 1
    assert linalg.bareiss_rank(big) == 1


def test_row_profile_and_span():
    M = np.array([[1, 0, 0], [2, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 3]], dtype=np.int64)
    assert linalg.row_profile(M, 0) == [0, 2, 4]
    assert linalg.row_profile(M, 3) == [0, 2]
    assert linalg.in_span(M[:1], np.array([5, 0, 0]), 0)
    assert not linalg.in_span(M[:1], np.array([0, 1, 0]), 0)
    assert linalg.in_span(M[:1], np.array([0, 0, 0]), 5)


def test_rref_mod_p():
    R, piv = linalg.rref_mod_p(np.array([[2, 4, 1], [1, 2, 0]]), 5)
    assert piv == [0, 2]
    assert R.tolist() == [[1, 2, 0], [0, 0, 1]]


def test_empty_inputs():
    assert linalg.rank(np.zeros((0, 4), dtype=np.int64), 0) == 0
    assert linalg.rank(np.zeros((3, 4), dtype=np.int64), 2) == 0
    assert linalg.row_profile(np.zeros((2, 2), dtype=np.int64), 0) == []
