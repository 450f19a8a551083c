"""Small exact linear algebra kernels.

Two flavours are needed:

* matrices over the prime field F_p, held as numpy int64 arrays; used for the
  stabilizer and idealizer solution systems and for Frobenius matrices;
* tiny matrices whose entries are field elements of an extension field
  (anything exposing +, -, *, inverse and is_zero); used for Moore systems,
  rank computations over F_q and 2x2 eigen work.

Everything here is plain Gaussian elimination; the systems never exceed a few
hundred rows at desk scale.
"""

from __future__ import annotations

import numpy as np


def _inv_mod(a, p):
    return pow(int(a), p - 2, p)


def rref_mod(A, p):
    """Reduced row echelon form of an integer matrix mod p.

    Returns (R, pivots) where R is a new int64 array and pivots the list of
    pivot column indices.
    """
    R = np.array(A, dtype=np.int64) % p
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = (R[r] * _inv_mod(R[r, c], p)) % p
        mask = np.nonzero(R[:, c])[0]
        for j in mask:
            if j != r:
                R[j] = (R[j] - R[j, c] * R[r]) % p
        pivots.append(c)
        r += 1
    return R, pivots


def kernel_mod(A, p):
    """Basis of the right kernel {v : Av = 0 mod p} as rows of an array."""
    A = np.atleast_2d(np.array(A, dtype=np.int64)) % p
    cols = A.shape[1]
    R, pivots = rref_mod(A, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, c in enumerate(free):
        basis[k, c] = 1
        for r, pc in enumerate(pivots):
            basis[k, pc] = (-R[r, c]) % p
    return basis


def solve_mod(A, b, p):
    """One solution of Ax = b mod p, or None if inconsistent."""
    A = np.atleast_2d(np.array(A, dtype=np.int64)) % p
    b = np.array(b, dtype=np.int64) % p
    aug = np.hstack([A, b.reshape(-1, 1)])
    R, pivots = rref_mod(aug, p)
    cols = A.shape[1]
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for r, c in enumerate(pivots):
        x[c] = R[r, cols]
    return x


def inv_mod_matrix(A, p):
    """Inverse of a square matrix mod p, or None if singular."""
    A = np.array(A, dtype=np.int64) % p
    m = A.shape[0]
    aug = np.hstack([A, np.eye(m, dtype=np.int64)])
    R, pivots = rref_mod(aug, p)
    if pivots != list(range(m)):
        return None
    return R[:, m:]


def rank_mod(A, p):
    _, pivots = rref_mod(A, p)
    return len(pivots)


# ---------------------------------------------------------------------------
# Generic elimination over field-element objects.


def fe_rref(rows):
    """In-place style RREF over a list of lists of field elements.

    Returns (new_rows, pivots). Entries must support arithmetic operators,
    inverse() and is_zero().
    """
    R = [list(row) for row in rows]
    if not R:
        return R, []
    nrows, ncols = len(R), len(R[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        sel = None
        for i in range(r, nrows):
            if not R[i][c].is_zero():
                sel = i
                break
        if sel is None:
            continue
        R[r], R[sel] = R[sel], R[r]
        inv = R[r][c].inverse()
        R[r] = [x * inv for x in R[r]]
        for i in range(nrows):
            if i != r and not R[i][c].is_zero():
                f = R[i][c]
                R[i] = [x - f * y for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    return R, pivots


def fe_rank(rows):
    return len(fe_rref(rows)[1])


def fe_solve(A, b):
    """Solve Ax = b over field elements; returns a solution list or None."""
    aug = [list(row) + [v] for row, v in zip(A, b)]
    R, pivots = fe_rref(aug)
    ncols = len(A[0])
    if ncols in pivots:
        return None
    zero = b[0] - b[0]
    x = [zero] * ncols
    for r, c in enumerate(pivots):
        x[c] = R[r][ncols]
    return x


def fe_inverse(A):
    """Inverse of a square field-element matrix, or None if singular."""
    m = len(A)
    one = None
    for row in A:
        for v in row:
            if not v.is_zero():
                one = v * v.inverse()
                break
        if one is not None:
            break
    if one is None:
        return None
    zero = A[0][0] - A[0][0]
    aug = [list(A[i]) + [one if i == j else zero for j in range(m)] for i in range(m)]
    R, pivots = fe_rref(aug)
    if pivots != list(range(m)):
        return None
    return [row[m:] for row in R]


def fe_kernel(A):
    """Basis of the right kernel over field elements (list of vectors)."""
    R, pivots = fe_rref(A)
    ncols = len(A[0])
    zero = A[0][0] - A[0][0]
    one = None
    for row in A:
        for v in row:
            if not v.is_zero():
                one = v * v.inverse()
                break
        if one is not None:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for c in free:
        vec = [zero] * ncols
        vec[c] = one if one is not None else zero
        for r, pc in enumerate(pivots):
            vec[pc] = zero - R[r][c]
        basis.append(vec)
    return basis
