"""Exact linear algebra over a :class:`~algext.field.Field`.

Matrices are numpy arrays (integer arrays for finite fields, object arrays
otherwise).  Row reduction uses the leftmost pivot in each row, which makes
the reduced echelon form a canonical description of a row space.
"""
from __future__ import annotations

import itertools

import numpy as np

from .field import Field, PrimeField


def _rref_mod_p(A, p: int):
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = A[r] * pow(int(A[r, c]), p - 2, p) % p
        col = A[:, c].copy()
        col[r] = 0
        A = (A - np.outer(col, A[r])) % p
        pivots.append(c)
        r += 1
    return A, pivots


def rref(F: Field, M):
    """Reduced row echelon form and the pivot columns."""
    A = np.array(M, dtype=F.dtype, copy=True)
    if A.ndim != 2:
        raise ValueError("rref expects a matrix")
    if isinstance(F, PrimeField):
        return _rref_mod_p(A.astype(np.int64), F.p)
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = None
        for i in range(r, rows):
            if not F.is_zero(A[i, c]):
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = F.mul(A[r], F.inv(A[r, c]))
        col = A[:, c].copy()
        col[r] = F.zero
        A = F.sub(A, F.mul(col[:, None], A[r][None, :]))
        pivots.append(c)
        r += 1
    return A, pivots


def rank(F: Field, M) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(F, M)[1])


def row_basis(F: Field, vectors, n: int):
    """Canonical (reduced echelon) basis of the span of ``vectors`` in F^n."""
    vectors = list(vectors)
    if not vectors:
        return F.zeros((0, n))
    R, piv = rref(F, np.array(vectors, dtype=F.dtype).reshape(len(vectors), n))
    return R[: len(piv)]


def nullspace(F: Field, M):
    """Basis (as rows) of {x : M x = 0}."""
    M = np.asarray(M)
    rows, cols = M.shape
    if rows == 0:
        return F.eye(cols)
    R, piv = rref(F, M)
    free = [c for c in range(cols) if c not in piv]
    basis = F.zeros((len(free), cols))
    for k, fcol in enumerate(free):
        basis[k, fcol] = F.one
        for i, pcol in enumerate(piv):
            basis[k, pcol] = F.neg(R[i, fcol])
    return basis


def solve_affine(F: Field, M, b):
    """Solutions of M x = b as (particular, kernel rows), or None if inconsistent."""
    M = np.asarray(M)
    rows, cols = M.shape
    b = np.asarray(b).reshape(rows, 1)
    aug = np.concatenate([M, b], axis=1) if rows else F.zeros((0, cols + 1))
    if rows == 0:
        return F.zeros(cols), F.eye(cols)
    R, piv = rref(F, aug)
    if cols in piv:
        return None
    x = F.zeros(cols)
    for i, pcol in enumerate(piv):
        x[pcol] = R[i, cols]
    return x, nullspace(F, M)


def inverse(F: Field, M):
    """Inverse matrix, or None when singular."""
    M = np.asarray(M)
    n = M.shape[0]
    if M.shape != (n, n):
        return None
    if n == 0:
        return F.zeros((0, 0))
    R, piv = rref(F, np.concatenate([M, F.eye(n)], axis=1))
    if piv[:n] != list(range(n)) or len(piv) < n or any(p >= n for p in piv[:n]):
        return None
    return R[:, n:]


def matmul(F: Field, A, B):
    return F.einsum("ij,jk->ik", A, B)


def matvec(F: Field, A, v):
    return F.einsum("ij,j->i", A, v)


def coordinates(F: Field, basis_rows, v):
    """Coefficients c with sum c_i basis_i = v, or None if v is outside the span."""
    basis_rows = np.asarray(basis_rows)
    k = basis_rows.shape[0]
    if k == 0:
        return F.zeros(0) if F.allzero(v) else None
    sol = solve_affine(F, basis_rows.T, v)
    if sol is None:
        return None
    return sol[0]


def coordinates_many(F: Field, basis_rows, vectors):
    """Coordinates of every row of ``vectors`` in the (independent) basis_rows, or None
    if some vector lies outside their span."""
    basis_rows, vectors = np.asarray(basis_rows), np.asarray(vectors)
    k, n = basis_rows.shape
    if vectors.shape[0] == 0:
        return F.zeros((0, k))
    if k == 0:
        return F.zeros((vectors.shape[0], 0)) if F.allzero(vectors) else None
    R, piv = rref(F, np.concatenate([basis_rows.T, vectors.T], axis=1))
    if piv[:k] != list(range(k)) or len(piv) > k:
        return None
    return R[:k, k:].T


def in_span(F: Field, basis_rows, v) -> bool:
    return coordinates(F, basis_rows, v) is not None


def complement_indices(F: Field, basis_rows, n: int) -> list[int]:
    """Standard basis indices completing ``basis_rows`` to a basis of F^n."""
    basis_rows = np.asarray(basis_rows)
    if basis_rows.shape[0] == 0:
        return list(range(n))
    _, piv = rref(F, basis_rows)
    return [c for c in range(n) if c not in piv]


def all_vectors(F: Field, n: int):
    """Every vector of F^n as rows of an array, lexicographic with the first coordinate slowest."""
    q = F.order
    if n == 0:
        return F.zeros((1, 0))
    idx = np.arange(q ** n)
    powers = q ** np.arange(n - 1, -1, -1)
    return ((idx[:, None] // powers[None, :]) % q).astype(np.int64)


def span_elements(F: Field, basis_rows):
    """All vectors in the span of basis_rows (finite fields)."""
    basis_rows = np.asarray(basis_rows)
    k = basis_rows.shape[0]
    coeffs = all_vectors(F, k)
    if k == 0:
        return F.zeros((1, basis_rows.shape[1]))
    return F.einsum("Ni,ij->Nj", coeffs, basis_rows)


def invertible_matrices(F: Field, n: int):
    """Iterate over GL(n, F) column by column (finite fields)."""
    vecs = all_vectors(F, n)

    def extend(cols):
        if len(cols) == n:
            yield np.array(cols, dtype=F.dtype).T.reshape(n, n)
            return
        for v in vecs:
            if rank(F, np.array(cols + [v])) == len(cols) + 1:
                yield from extend(cols + [v])

    if n == 0:
        yield F.zeros((0, 0))
        return
    yield from extend([])


def subspaces(F: Field, n: int, k: int):
    """Iterate over k-dimensional subspaces of F^n as reduced echelon k x n matrices."""
    if k == 0:
        yield F.zeros((0, n))
        return
    elems = F.elements()
    for piv in itertools.combinations(range(n), k):
        free = [(i, c) for i in range(k) for c in range(n) if c > piv[i] and c not in piv]
        for vals in itertools.product(elems, repeat=len(free)):
            M = F.zeros((k, n))
            for i, p in enumerate(piv):
                M[i, p] = F.one
            for (i, c), v in zip(free, vals):
                M[i, c] = v
            yield M


def linearize(F: Field, residual, nvars: int):
    """Coefficient matrix and constant of an affine map residual: F^nvars -> F^N.

    Returns (M, c) with residual(x) = M x + c, found by probing unit vectors.
    """
    zero = F.zeros(nvars)
    c = np.asarray(residual(zero)).ravel()
    cols = []
    for i in range(nvars):
        e = F.zeros(nvars)
        e[i] = F.one
        cols.append(F.sub(np.asarray(residual(e)).ravel(), c))
    M = np.array(cols, dtype=F.dtype).T.reshape(len(c), nvars) if nvars else F.zeros((len(c), 0))
    return M, c


def affine_solutions(F: Field, residual, nvars: int):
    """All x in F^nvars with residual(x) = 0 for an affine residual (finite fields)."""
    M, c = linearize(F, residual, nvars)
    sol = solve_affine(F, M, F.neg(c))
    if sol is None:
        return []
    x0, kernel = sol
    if kernel.shape[0] == 0:
        return [x0]
    combos = span_elements(F, kernel)
    return [F.add(x0, v) for v in combos]
