"""
Exact linear algebra for basis verification and change of basis.

No floating point: ranks over ℚ use fraction-free (Bareiss) elimination on
Python integers, ranks over GF(2) use XOR elimination on int bitsets.
"""

from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np


def _integer_rows(matrix) -> np.ndarray:
    """Object array of Python ints, each row scaled to clear denominators."""
    rows = np.asarray(matrix, dtype=object)
    if rows.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {rows.shape}")
    out = np.empty(rows.shape, dtype=object)
    for r, row in enumerate(rows):
        fracs = [Fraction(x) if not isinstance(x, (int, np.integer)) else Fraction(int(x)) for x in row]
        scale = lcm(1, *(f.denominator for f in fracs))
        out[r] = [int(f * scale) for f in fracs]
    return out


def rank_rational(matrix) -> int:
    """Rank over ℚ by fraction-free echelon elimination.

    Parameters
    ----------
    matrix : array-like
        2-d matrix of integers or fractions.

    Returns
    -------
    int
        Exact rank.
    """
    a = _integer_rows(matrix)
    n_rows, n_cols = a.shape
    rank = 0
    prev = 1
    for col in range(n_cols):
        if rank == n_rows:
            break
        nonzero = [r for r in range(rank, n_rows) if a[r, col] != 0]
        if not nonzero:
            continue
        pivot_row = nonzero[0]
        if pivot_row != rank:
            a[[rank, pivot_row]] = a[[pivot_row, rank]]
        pivot = a[rank, col]
        below = a[rank + 1:]
        if len(below):
            factors = below[:, col].copy()
            # exact by Sylvester's identity
            a[rank + 1:] = (pivot * below - np.outer(factors, a[rank])) // prev
        prev = pivot
        rank += 1
    return rank


def rank_gf2(matrix) -> int:
    """Rank over GF(2); entries are reduced mod 2 first."""
    rows = np.asarray(matrix, dtype=object)
    if rows.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {rows.shape}")
    work = []
    for row in rows:
        bits = 0
        for c, x in enumerate(row):
            if int(x) % 2:
                bits |= 1 << c
        work.append(bits)
    rank = 0
    for col in range(rows.shape[1]):
        pivot = next((r for r in range(rank, len(work)) if (work[r] >> col) & 1), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        for r in range(len(work)):
            if r != rank and (work[r] >> col) & 1:
                work[r] ^= work[rank]
        rank += 1
        if rank == len(work):
            break
    return rank


def unitriangular_inverse(matrix, order: Sequence[int]) -> np.ndarray:
    """Exact inverse of a matrix that is upper unitriangular after reordering.

    Parameters
    ----------
    matrix : array-like
        Square integer matrix ``U`` such that ``U[order][:, order]`` is upper
        triangular with unit diagonal.
    order : sequence of int
        The linear extension making ``U`` triangular.

    Returns
    -------
    np.ndarray
        Integer inverse in the original row/column indexing (int64).
    """
    u = np.asarray(matrix, dtype=object)
    size = u.shape[0]
    if u.shape != (size, size) or sorted(order) != list(range(size)):
        raise ValueError("matrix must be square and order a permutation of its indices")
    t = u[np.ix_(order, order)]
    for i in range(size):
        if t[i, i] != 1 or any(t[i, j] != 0 for j in range(i)):
            raise ValueError("matrix is not unitriangular in the given order")
    inv = np.zeros((size, size), dtype=object)
    for j in range(size):
        inv[j, j] = 1
        for i in range(j - 1, -1, -1):
            inv[i, j] = -sum(t[i, k] * inv[k, j] for k in range(i + 1, j + 1) if t[i, k])
    out = np.zeros((size, size), dtype=object)
    out[np.ix_(order, order)] = inv
    return out.astype(np.int64)
