"""Dense linear algebra over a finite field.

Two layers live here.  The scalar layer works on small Python lists and
returns exact reduced row echelon forms, null spaces and inverses.  The
batch layer works on stacks of numpy matrices and only computes ranks and
products; it is what the exhaustive scans use.

Every function takes the field explicitly (a :class:`~rankmetric.field.FieldSpec`).
Matrices are integer arrays whose entries are canonical field values.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Iterable, Sequence

import numpy as np

if TYPE_CHECKING:
    from .field import FieldSpec

__all__ = [
    "as_matrix",
    "rref",
    "rref_rows",
    "rank",
    "nullspace",
    "inverse",
    "matmul",
    "batch_rank",
    "batch_matmul",
]


def as_matrix(M, field: "FieldSpec") -> np.ndarray:
    """Coerce ``M`` to a 2-D int64 array and range-check its entries."""
    A = np.array(M, dtype=np.int64)
    if A.ndim == 1:
        A = A.reshape(1, -1) if A.size else A.reshape(0, 0)
    if A.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {A.shape}")
    if A.size and (A.min() < 0 or A.max() >= field.order):
        raise ValueError(f"matrix entries must lie in [0, {field.order})")
    return A


def rref_rows(rows: Iterable[Sequence[int]], field: "FieldSpec") -> tuple[list[list[int]], list[int]]:
    """Row-reduce ``rows``; return the nonzero RREF rows and the pivot columns."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    p = field.p
    prime = field.e == 1
    mul, sub, inv = field.mul, field.sub, field.inv
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        s = inv(rows[r][c])
        if s != 1:
            if prime:
                rows[r] = [(s * x) % p for x in rows[r]]
            else:
                rows[r] = [mul(s, x) for x in rows[r]]
        pr = rows[r]
        for i in range(nrows):
            f = rows[i][c]
            if i != r and f:
                if prime:
                    rows[i] = [(a - f * b) % p for a, b in zip(rows[i], pr)]
                else:
                    rows[i] = [sub(a, mul(f, b)) for a, b in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows[:r], pivots


def rref(M, field: "FieldSpec") -> np.ndarray:
    """Reduced row echelon form of ``M``, padded with zero rows to its shape."""
    A = as_matrix(M, field)
    rows, _ = rref_rows(A.tolist(), field)
    out = np.zeros_like(A)
    if rows:
        out[: len(rows)] = rows
    return out


def rank(M, field: "FieldSpec") -> int:
    A = as_matrix(M, field)
    if A.size == 0:
        return 0
    return len(rref_rows(A.tolist(), field)[1])


def nullspace(M, field: "FieldSpec") -> list[list[int]]:
    """Basis (in RREF) of the right kernel ``{x : M x = 0}``."""
    A = as_matrix(M, field)
    ncols = A.shape[1]
    rows, pivots = rref_rows(A.tolist(), field)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for row, pc in zip(rows, pivots):
            x[pc] = field.neg(row[f])
        basis.append(x)
    return rref_rows(basis, field)[0]


def inverse(M, field: "FieldSpec") -> np.ndarray:
    """Inverse of a square matrix; raises ``ValueError`` when singular."""
    A = as_matrix(M, field)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("inverse needs a square matrix")
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(A.tolist())]
    rows, pivots = rref_rows(aug, field)
    if pivots[:n] != list(range(n)) or len(rows) < n:
        raise ValueError("matrix is singular")
    return np.array([row[n:] for row in rows], dtype=np.int64)


def matmul(A, B, field: "FieldSpec") -> np.ndarray:
    return batch_matmul(np.asarray(A, dtype=np.int64), np.asarray(B, dtype=np.int64), field)


def batch_matmul(A: np.ndarray, B: np.ndarray, field: "FieldSpec") -> np.ndarray:
    """Broadcasting matrix product over the field (last two axes)."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if field.e == 1:
        return np.matmul(A, B) % field.p
    inner = A.shape[-1]
    shape = np.broadcast_shapes(A.shape[:-2], B.shape[:-2]) + (A.shape[-2], B.shape[-1])
    out = np.zeros(shape, dtype=np.int64)
    for t in range(inner):
        out = field.np_add(out, field.np_mul(A[..., :, t : t + 1], B[..., t : t + 1, :]))
    return out


def batch_rank(A, field: "FieldSpec") -> np.ndarray:
    """Ranks of a stack of matrices with shape ``(N, R, C)``.

    Gaussian elimination runs in lockstep over the stack; each matrix picks
    its own pivot rows, which are then retired instead of swapped.
    """
    A = np.array(A, dtype=np.int64)
    if A.ndim != 3:
        raise ValueError(f"expected a stack of matrices, got shape {A.shape}")
    N, R, C = A.shape
    ranks = np.zeros(N, dtype=np.int64)
    if N == 0 or R == 0 or C == 0:
        return ranks
    if C > R:
        A = np.ascontiguousarray(A.transpose(0, 2, 1))
        R, C = C, R
    prime = field.e == 1
    p = field.p
    if prime:
        inv_table = np.array([0] + [pow(v, -1, p) for v in range(1, p)], dtype=np.int64)
    used = np.zeros((N, R), dtype=bool)
    idx = np.arange(N)
    for c in range(C):
        col = A[:, :, c]
        cand = (col != 0) & ~used
        has = cand.any(axis=1)
        if not has.any():
            continue
        piv = cand.argmax(axis=1)
        prow = A[idx, piv]
        pval = np.where(has, prow[:, c], 1)
        if prime:
            scale = inv_table[pval]
            prow = (prow * scale[:, None]) % p
        else:
            prow = field.np_mul(prow, field.np_inv(pval)[:, None])
        factor = np.where(~used & has[:, None], col, 0)
        factor[idx, piv] = 0
        if prime:
            A = (A - factor[:, :, None] * prow[:, None, :]) % p
        else:
            A = field.np_sub(A, field.np_mul(factor[:, :, None], prow[:, None, :]))
        used[idx[has], piv[has]] = True
        ranks += has
    return ranks
