"""Canonical subspaces of F_q^k and the full subspace lattice.

A subspace is stored as its reduced row echelon basis; the serialized
basis doubles as a byte key, so equal subspaces have equal keys and the
lattice can be tabulated by key.
"""

from __future__ import annotations

from functools import cached_property, lru_cache
from itertools import combinations, product
from typing import Iterator, Sequence

import numpy as np

from . import linalg
from .errors import AmbientMismatchError, FieldMismatchError, GuardExceeded
from .field import FieldSpec

__all__ = [
    "Subspace",
    "span",
    "column_space",
    "row_space",
    "subspace_sum",
    "intersect",
    "orth",
    "gaussian_binomial",
    "count_subspaces",
    "iter_subspaces",
    "rref_blocks",
    "image",
    "enumerate_subspaces",
    "Lattice",
    "get_lattice",
    "DEFAULT_LATTICE_GUARD",
]

DEFAULT_LATTICE_GUARD = 200_000


class Subspace:
    """A subspace of F_q^k held as an RREF basis (no zero rows)."""

    __slots__ = ("field", "ambient_dim", "basis", "_key")

    def __init__(self, field: FieldSpec, ambient_dim: int, basis: Sequence[Sequence[int]] = (), *, canonical: bool = False):
        self.field = field
        self.ambient_dim = int(ambient_dim)
        rows = [tuple(int(x) for x in r) for r in basis]
        if any(len(r) != self.ambient_dim for r in rows):
            raise AmbientMismatchError(f"basis rows must have length {self.ambient_dim}")
        if not canonical:
            rows = [tuple(r) for r in linalg.rref_rows(rows, field)[0]]
        self.basis: tuple[tuple[int, ...], ...] = tuple(rows)
        self._key = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def key(self) -> bytes:
        """Deterministic byte key; lexicographic on (ambient, dim, entries)."""
        if self._key is None:
            flat = [self.ambient_dim, self.dim] + [x for r in self.basis for x in r]
            self._key = b"".join(v.to_bytes(2, "big") for v in flat)
        return self._key

    @property
    def sort_key(self) -> tuple[int, bytes]:
        return (self.dim, self.key)

    def matrix(self) -> np.ndarray:
        return np.array(self.basis, dtype=np.int64).reshape(self.dim, self.ambient_dim)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.field == other.field and self.key == other.key

    def __hash__(self) -> int:
        return hash((self.field, self.key))

    def __repr__(self) -> str:
        if not self.basis:
            return f"Subspace(0 in F_{self.field.order}^{self.ambient_dim})"
        return f"Subspace(<{', '.join(str(r) for r in self.basis)}>)"

    def __le__(self, other: "Subspace") -> bool:
        return contains(other, self)

    def contains_vector(self, v: Sequence[int]) -> bool:
        return linalg.rank(list(self.basis) + [list(v)], self.field) == self.dim if self.dim else not any(v)

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.basis]


def _check_pair(A: Subspace, B: Subspace) -> None:
    if A.field != B.field:
        raise FieldMismatchError(f"{A.field!r} vs {B.field!r}")
    if A.ambient_dim != B.ambient_dim:
        raise AmbientMismatchError(f"ambient dimensions {A.ambient_dim} and {B.ambient_dim} differ")


def span(field: FieldSpec, ambient_dim: int, vectors: Sequence[Sequence[int]]) -> Subspace:
    return Subspace(field, ambient_dim, vectors)


def full_space(field: FieldSpec, k: int) -> Subspace:
    return Subspace(field, k, [[int(i == j) for j in range(k)] for i in range(k)], canonical=True)


def zero_space(field: FieldSpec, k: int) -> Subspace:
    return Subspace(field, k, (), canonical=True)


def column_space(M, field: FieldSpec) -> Subspace:
    A = linalg.as_matrix(M, field)
    return Subspace(field, A.shape[0], A.T.tolist())


def row_space(M, field: FieldSpec) -> Subspace:
    A = linalg.as_matrix(M, field)
    return Subspace(field, A.shape[1], A.tolist())


def subspace_sum(A: Subspace, B: Subspace) -> Subspace:
    _check_pair(A, B)
    return Subspace(A.field, A.ambient_dim, A.basis + B.basis)


def orth(A: Subspace) -> Subspace:
    """Orthogonal complement under the standard dot product."""
    if A.dim == 0:
        return full_space(A.field, A.ambient_dim)
    return Subspace(A.field, A.ambient_dim, linalg.nullspace(A.matrix(), A.field), canonical=True)


def intersect(A: Subspace, B: Subspace) -> Subspace:
    _check_pair(A, B)
    return orth(subspace_sum(orth(A), orth(B)))


def contains(big: Subspace, small: Subspace) -> bool:
    _check_pair(big, small)
    return subspace_sum(big, small).dim == big.dim


def image(A: Subspace, phi) -> Subspace:
    """phi(A) for a k x k matrix acting on column vectors."""
    if A.dim == 0:
        return A
    rows = linalg.matmul(A.matrix(), np.asarray(phi, dtype=np.int64).T, A.field)
    return Subspace(A.field, A.ambient_dim, rows.tolist())


def gaussian_binomial(k: int, d: int, q: int) -> int:
    """Number of d-dimensional subspaces of F_q^k."""
    if d < 0 or d > k:
        return 0
    num = den = 1
    for i in range(d):
        num *= q ** (k - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def count_subspaces(q: int, k: int, dim: int | None = None) -> int:
    if dim is not None:
        return gaussian_binomial(k, dim, q)
    return sum(gaussian_binomial(k, d, q) for d in range(k + 1))


def rref_blocks(field: FieldSpec, k: int, dim: int) -> Iterator[np.ndarray]:
    """RREF bases of all ``dim``-dimensional subspaces, one array (N, dim, k) per pivot pattern."""
    q = field.order
    for pivots in combinations(range(k), dim):
        pivot_set = set(pivots)
        free = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, k) if c not in pivot_set]
        vals = np.array(list(product(range(q), repeat=len(free))), dtype=np.int64).reshape(q ** len(free), len(free))
        block = np.zeros((len(vals), dim, k), dtype=np.int64)
        for r, pc in enumerate(pivots):
            block[:, r, pc] = 1
        for t, (r, c) in enumerate(free):
            block[:, r, c] = vals[:, t]
        yield block


def iter_subspaces(field: FieldSpec, k: int, dim: int) -> Iterator[Subspace]:
    """All ``dim``-dimensional subspaces in increasing key order."""
    q = field.order
    for pivots in combinations(range(k), dim):
        pivot_set = set(pivots)
        free = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, k) if c not in pivot_set]
        for values in product(range(q), repeat=len(free)):
            rows = [[0] * k for _ in range(dim)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), v in zip(free, values):
                rows[r][c] = v
            yield Subspace(field, k, rows, canonical=True)


def enumerate_subspaces(field: FieldSpec, k: int, dim: int | None = None, guard: int | None = DEFAULT_LATTICE_GUARD) -> list[Subspace]:
    """Every subspace of F_q^k exactly once, ordered by (dimension, key)."""
    total = count_subspaces(field.order, k, dim)
    if guard is not None and total > guard:
        raise GuardExceeded(f"subspaces of F_{field.order}^{k}", total, guard)
    dims = range(k + 1) if dim is None else [dim]
    out = []
    for d in dims:
        out.extend(sorted(iter_subspaces(field, k, d), key=lambda S: S.key))
    return out


class Lattice:
    """The subspace lattice of F_q^k with join/meet/complement tables.

    Subspaces are indexed in (dimension, key) order.  ``join`` and ``meet``
    are N x N index tables; the meet is read off the join through
    complements, A ∩ B = (A^⊥ + B^⊥)^⊥.
    """

    def __init__(self, field: FieldSpec, k: int, guard: int | None = DEFAULT_LATTICE_GUARD):
        self.field = field
        self.k = k
        self.subspaces = enumerate_subspaces(field, k, guard=guard)
        self.index = {S.key: i for i, S in enumerate(self.subspaces)}
        self.dims = np.array([S.dim for S in self.subspaces], dtype=np.int64)

    def __len__(self) -> int:
        return len(self.subspaces)

    def lookup(self, S: Subspace) -> int:
        if S.field != self.field or S.ambient_dim != self.k:
            raise AmbientMismatchError(f"{S!r} is not a subspace of F_{self.field.order}^{self.k}")
        return self.index[S.key]

    @cached_property
    def orth(self) -> np.ndarray:
        return np.array([self.index[orth(S).key] for S in self.subspaces], dtype=np.int64)

    @cached_property
    def join(self) -> np.ndarray:
        N = len(self)
        J = np.zeros((N, N), dtype=np.int64)
        field = self.field
        subs = self.subspaces
        for i in range(N):
            J[i, i] = i
            bi = list(subs[i].basis)
            for j in range(i + 1, N):
                rows, _ = linalg.rref_rows(bi + list(subs[j].basis), field)
                key = Subspace(field, self.k, rows, canonical=True).key
                J[i, j] = J[j, i] = self.index[key]
        return J

    @cached_property
    def meet(self) -> np.ndarray:
        o = self.orth
        return o[self.join[np.ix_(o, o)]]

    @cached_property
    def leq(self) -> np.ndarray:
        """leq[i, j] is True when subspace i is contained in subspace j."""
        return self.join == np.arange(len(self))[None, :]

    @cached_property
    def by_dim(self) -> dict[int, tuple[np.ndarray, np.ndarray]]:
        """dim -> (lattice indices, stacked bases of shape (N_d, d, k))."""
        out = {}
        for d in range(self.k + 1):
            idx = np.flatnonzero(self.dims == d)
            bases = np.array([self.subspaces[i].basis for i in idx], dtype=np.int64).reshape(len(idx), d, self.k)
            out[d] = (idx, bases)
        return out


@lru_cache(maxsize=32)
def _cached_lattice(field: FieldSpec, k: int) -> Lattice:
    return Lattice(field, k, guard=None)


def get_lattice(field: FieldSpec, k: int, guard: int | None = DEFAULT_LATTICE_GUARD) -> Lattice:
    """Shared, memoised lattice of F_q^k (guard checked before building)."""
    total = count_subspaces(field.order, k)
    if guard is not None and total > guard:
        raise GuardExceeded(f"subspaces of F_{field.order}^{k}", total, guard)
    return _cached_lattice(field, k)
