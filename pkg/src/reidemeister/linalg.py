"""Exact linear algebra: fraction-free elimination over the integers and
elimination over the prime field F_p."""
from __future__ import annotations

from typing import Sequence

import numpy as np

from . import _kernels


def bareiss_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q of an integer matrix, by fraction-free (Bareiss) elimination.

    Every intermediate entry is a minor of the input, so all divisions are exact.
    """
    m = [[int(x) for x in r] for r in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    prev = 1
    rank = 0
    for c in range(ncols):
        if rank == nrows:
            break
        piv = next((r for r in range(rank, nrows) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][c]
        top = m[rank]
        for i in range(rank + 1, nrows):
            row = m[i]
            a = row[c]
            for j in range(c + 1, ncols):
                row[j] = (p * row[j] - a * top[j]) // prev
            row[c] = 0
        prev = p
        rank += 1
    return rank


def bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix."""
    m = [[int(x) for x in r] for r in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        p = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (p * m[i][j] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = p
    return sign * m[n - 1][n - 1]


# ------------------------------------------------------------------ mod p

def matmul_mod(a, b, p: int) -> np.ndarray:
    """``a @ b mod p`` without int64 overflow."""
    a = np.asarray(a)
    b = np.asarray(b)
    if p < 2**24 and a.shape[-1] < 2**14:
        return (a.astype(np.int64) @ b.astype(np.int64)) % p
    out = (a.astype(object) @ b.astype(object)) % p
    return out.astype(np.int64)


def rref_mod(mat, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Reduced row echelon form over F_p and the pivot columns."""
    m = np.ascontiguousarray(np.asarray(mat, dtype=np.int64))
    if m.size == 0:
        return m.copy(), np.zeros(0, dtype=np.int64)
    return _kernels.rref_mod(m, p)


def nullspace_mod(mat, p: int) -> np.ndarray:
    """Basis (as rows) of ``{v : mat @ v = 0}`` over F_p."""
    m = np.asarray(mat, dtype=np.int64)
    ncols = m.shape[1]
    r, pivots = rref_mod(m, p)
    free = [c for c in range(ncols) if c not in set(pivots.tolist())]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, pc in enumerate(pivots.tolist()):
            basis[i, pc] = (-r[row, f]) % p
    return basis


def charpoly_mod(mat, p: int) -> list[int]:
    """Characteristic polynomial ``det(x I - A)`` over F_p, coefficients low to high.

    Reduces to upper Hessenberg form by similarity and then runs the usual
    three-term recurrence on the leading principal minors.
    """
    a = [[int(x) % p for x in row] for row in np.asarray(mat)]
    n = len(a)
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if a[i][m - 1]), None)
        if piv is None:
            continue
        if piv != m:
            a[piv], a[m] = a[m], a[piv]
            for row in a:
                row[piv], row[m] = row[m], row[piv]
        inv = pow(a[m][m - 1], -1, p)
        for i in range(m + 1, n):
            u = a[i][m - 1] * inv % p
            if u == 0:
                continue
            for j in range(n):
                a[i][j] = (a[i][j] - u * a[m][j]) % p
            for row in a:
                row[m] = (row[m] + u * row[i]) % p
    # polys[k] = charpoly of the leading k x k block, coefficients low to high
    polys: list[list[int]] = [[1]]
    for m in range(1, n + 1):
        new = [0] + polys[m - 1]
        for c, v in enumerate(polys[m - 1]):
            new[c] = (new[c] - a[m - 1][m - 1] * v) % p
        t = 1
        for i in range(1, m):
            t = t * a[m - i][m - i - 1] % p
            coef = t * a[m - i - 1][m - 1] % p
            for c, v in enumerate(polys[m - i - 1]):
                new[c] = (new[c] - coef * v) % p
        polys.append(new)
    return polys[n]


def roots_mod(coeffs: Sequence[int], p: int) -> list[int]:
    """All roots in F_p of a polynomial (coefficients low to high), ascending."""
    xs = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in reversed(list(coeffs)):
        acc = (acc * xs + int(c)) % p
    return np.flatnonzero(acc == 0).tolist()
