"""Vector rank-metric codes: F_{q^m}-linear subspaces of F_{q^m}^n."""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

import numpy as np

from . import linalg
from .errors import FieldMismatchError, GuardExceeded
from .field import ExtensionBasis, Tower
from .matrix_code import DEFAULT_CODEWORD_GUARD, MatrixCode

__all__ = [
    "VectorCode",
    "rank_weight",
    "vdual",
    "gamma_expand",
    "gabidulin",
    "vtransform",
    "vmin_distance",
]


class VectorCode:
    """Row space over F_{q^m} of k generators of length n (kept in RREF)."""

    def __init__(self, tower: Tower, n: int, generators: Sequence[Sequence[int]] = ()):
        self.tower = tower
        self.n = int(n)
        ext = tower.ext
        rows = [[int(x) for x in g] for g in generators]
        for r in rows:
            if len(r) != self.n:
                raise ValueError(f"generator of length {len(r)}, expected {self.n}")
            if any(not 0 <= x < ext.order for x in r):
                raise ValueError(f"entries must lie in [0, {ext.order})")
        basis, _ = linalg.rref_rows(rows, ext)
        self.basis: tuple[tuple[int, ...], ...] = tuple(tuple(r) for r in basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, VectorCode):
            return NotImplemented
        return self.tower == other.tower and self.n == other.n and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.tower, self.n, self.basis))

    def __repr__(self) -> str:
        return f"VectorCode(n={self.n}, k={self.dim} over GF({self.tower.ext.order})/GF({self.tower.q}))"

    def codewords(self, guard: int | None = DEFAULT_CODEWORD_GUARD) -> np.ndarray:
        """All (q^m)^k codewords as an integer array of shape (N, n)."""
        ext = self.tower.ext
        total = ext.order**self.dim
        if guard is not None and total > guard:
            raise GuardExceeded("vector codewords", total, guard)
        words = np.zeros((1, self.n), dtype=np.int64)
        for b in self.basis:
            scalars = np.arange(ext.order, dtype=np.int64)
            multiples = ext.np_mul(scalars[:, None], np.array(b, dtype=np.int64)[None, :])
            words = ext.np_add(words[:, None, :], multiples[None, :, :]).reshape(-1, self.n)
        return words


@lru_cache(maxsize=16)
def _coordinate_table(tower: Tower) -> np.ndarray:
    """Row x holds the F_q-coordinates of x in the polynomial basis."""
    basis = tower.polynomial_basis()
    return np.array([basis.coordinates(x) for x in range(tower.ext.order)], dtype=np.int64)


def rank_weight(v: Sequence[int], tower: Tower) -> int:
    """F_q-dimension of the span of the entries of v."""
    coords = _coordinate_table(tower)[np.asarray(v, dtype=np.int64)]
    return linalg.rank(coords, tower.base) if coords.size else 0


def vmin_distance(C: VectorCode, guard: int | None = DEFAULT_CODEWORD_GUARD) -> int:
    """Minimum rank weight over the nonzero codewords (exhaustive)."""
    if C.dim == 0:
        raise ValueError("minimum distance undefined for the zero code")
    words = C.codewords(guard)
    words = words[words.any(axis=1)]
    mats = _coordinate_table(C.tower)[words]
    return int(linalg.batch_rank(mats, C.tower.base).min())


def vdual(C: VectorCode) -> VectorCode:
    """Orthogonal complement under the standard inner product of F_{q^m}^n."""
    if C.dim == 0:
        return VectorCode(C.tower, C.n, np.eye(C.n, dtype=np.int64).tolist())
    return VectorCode(C.tower, C.n, linalg.nullspace(list(C.basis), C.tower.ext))


def gamma_expand(C: VectorCode, basis: ExtensionBasis) -> MatrixCode:
    """Γ(C): the F_q-span of Γ(γ_j b_i) over basis elements γ_j and generators b_i."""
    if basis.tower != C.tower:
        raise FieldMismatchError("expansion basis belongs to a different tower")
    ext = C.tower.ext
    mats = []
    for b in C.basis:
        for g in basis.elements:
            mats.append(basis.expand([ext.mul(g, x) for x in b]).reshape(-1))
    m = C.tower.m
    gen = np.array(mats, dtype=np.int64).reshape(len(mats), C.n * m)
    return MatrixCode(C.tower.base, C.n, m, gen)


def gabidulin(tower: Tower, n: int, k: int, points: Sequence[int] | None = None) -> VectorCode:
    """Gabidulin code: evaluations of Σ_{i<k} a_i x^{q^i} at g_1..g_n.

    ``points`` default to the polynomial basis 1, x, ..., x^{n-1}.
    """
    m = tower.m
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    if n > m:
        raise ValueError(f"need n <= m, got n={n}, m={m}")
    ext = tower.ext
    if points is None:
        points = tower.polynomial_basis().elements[:n]
    points = [int(g) for g in points]
    if len(points) != n:
        raise ValueError(f"need {n} evaluation points")
    if rank_weight(points, tower) != n:
        raise ValueError("evaluation points must be F_q-linearly independent")
    q = tower.q
    rows = [[ext.pow(g, q**i) for g in points] for i in range(k)]
    return VectorCode(tower, n, rows)


def vtransform(C: VectorCode, alpha: int, B) -> VectorCode:
    """α C B with α ∈ F_{q^m}^* and B ∈ GL_n(F_q)."""
    ext = C.tower.ext
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    B = linalg.as_matrix(B, C.tower.base)
    if B.shape != (C.n, C.n) or linalg.rank(B, C.tower.base) < C.n:
        raise ValueError("B must be an invertible n x n matrix over F_q")
    Bext = np.vectorize(C.tower.embed)(B) if B.size else B
    rows = []
    for v in C.basis:
        w = linalg.matmul(np.array([v], dtype=np.int64), Bext, ext)[0]
        rows.append([ext.mul(alpha, int(x)) for x in w])
    return VectorCode(C.tower, C.n, rows)
