"""Dense row reduction over F_p on int64 numpy arrays.

Row updates touch only rows with a nonzero entry in the pivot column and only
columns to the right of it, which keeps the sparse systems coming from
signed-permutation actions cheap.
"""
from __future__ import annotations

import numpy as np


def _inverse_table(p: int) -> np.ndarray:
    return np.array([0] + [pow(x, p - 2, p) for x in range(1, p)], dtype=np.int64)


def rref(mat, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p with zero rows dropped, and its pivot columns."""
    a = np.array(mat, dtype=np.int64, copy=True)
    if a.ndim != 2:
        raise ValueError("expected a 2-d array")
    a %= p
    rows, cols = a.shape
    inv = _inverse_table(p)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k], c:] = a[[k, r], c:]
        lead = a[r, c]
        if lead != 1:
            a[r, c:] = (a[r, c:] * inv[lead]) % p
        others = np.flatnonzero(a[:, c])
        others = others[others != r]
        if others.size:
            a[others, c:] = (a[others, c:] - np.outer(a[others, c], a[r, c:])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(mat, p: int) -> int:
    mat = np.asarray(mat)
    if mat.size == 0:
        return 0
    return len(rref(mat, p)[1])


def nullspace(mat, p: int) -> np.ndarray:
    """Right nullspace of mat, returned as the rows of a matrix in reduced echelon form."""
    mat = np.asarray(mat, dtype=np.int64)
    cols = mat.shape[1]
    if mat.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    r, piv = rref(mat, p)
    free = [c for c in range(cols) if c not in set(piv)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for idx, f in enumerate(free):
        basis[idx, f] = 1
        basis[idx, piv] = (-r[:, f]) % p
    if not free:
        return basis
    return rref(basis, p)[0]


def reduce_against(vectors, echelon: np.ndarray, pivots: list[int], p: int) -> np.ndarray:
    """Residues of vectors modulo the row space of an RREF matrix (zero iff in the span)."""
    v = np.array(vectors, dtype=np.int64, copy=True) % p
    if v.ndim == 1:
        v = v[None, :]
    if len(pivots):
        v = (v - v[:, pivots] @ echelon) % p
    return v


def solve(a, b, p: int) -> tuple[np.ndarray | None, bool]:
    """One solution x of a @ x = b mod p (None if inconsistent) and whether it is unique."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    rows, cols = a.shape
    aug = np.hstack([a, b])
    r, piv = rref(aug, p)
    if cols in piv:
        return None, False
    x = np.zeros(cols, dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = r[i, cols]
    return x, len(piv) == cols
