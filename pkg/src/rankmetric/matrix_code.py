"""Matrix rank-metric codes: F_q-linear subspaces of n x m matrices.

A code is stored through its flattened generator matrix (rows are the
row-major vectorisations of basis matrices) in reduced row echelon form,
which makes equality of codes a byte comparison.
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Literal

import numpy as np

from . import linalg
from .errors import AmbientMismatchError, FieldMismatchError, GuardExceeded, OrientationError
from .field import FieldSpec
from .subspace import Subspace, column_space, gaussian_binomial, get_lattice, orth, zero_space

__all__ = [
    "MatrixCode",
    "EquivalenceWitness",
    "code_from_generators",
    "full_code",
    "zero_code",
    "mat_supported",
    "dual",
    "iter_codewords",
    "min_distance",
    "is_mrd",
    "maxrk",
    "is_optimal_anticode",
    "supported_subcode",
    "support",
    "transform",
    "transpose_code",
    "rank_distribution",
    "covering_radius",
    "general_linear_group",
    "gl_order",
    "is_equivalent",
    "DEFAULT_CODEWORD_GUARD",
    "DEFAULT_PAIR_GUARD",
    "DEFAULT_COVERING_GUARD",
]

Side = Literal["column", "row"]

DEFAULT_CODEWORD_GUARD = 1 << 22
DEFAULT_PAIR_GUARD = 10**7
DEFAULT_COVERING_GUARD = 1 << 20
_CHUNK = 1 << 16


def _side(side: str) -> str:
    s = {"c": "column", "col": "column", "column": "column", "r": "row", "row": "row"}.get(side)
    if s is None:
        raise ValueError(f"side must be 'column' or 'row', got {side!r}")
    return s


class MatrixCode:
    """An F_q-linear space of n x m matrices."""

    def __init__(self, field: FieldSpec, n: int, m: int, generator=None, *, canonical: bool = False):
        self.field = field
        self.n = int(n)
        self.m = int(m)
        if self.n < 1 or self.m < 1:
            raise ValueError("matrix shape must be positive")
        nm = self.n * self.m
        if generator is None:
            G = np.zeros((0, nm), dtype=np.int64)
        else:
            G = np.array(generator, dtype=np.int64).reshape(-1, nm)
        if not canonical:
            G = linalg.as_matrix(G, field) if G.size else G
            rows, _ = linalg.rref_rows(G.tolist(), field)
            G = np.array(rows, dtype=np.int64).reshape(len(rows), nm)
        G.setflags(write=False)
        self.generator = G

    @property
    def dim(self) -> int:
        return self.generator.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n, self.m)

    def basis(self) -> np.ndarray:
        """Basis matrices, shape (dim, n, m)."""
        return self.generator.reshape(self.dim, self.n, self.m)

    @property
    def key(self) -> bytes:
        return np.array([self.n, self.m], dtype=">i8").tobytes() + self.generator.astype(">i2").tobytes()

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatrixCode):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self.key == other.key

    def __hash__(self) -> int:
        return hash((self.field, self.key))

    def __repr__(self) -> str:
        return f"MatrixCode({self.n}x{self.m} over GF({self.field.order}), dim={self.dim})"

    @cached_property
    def parity_check(self) -> np.ndarray:
        """Rows span the dual code (flattened); M is a codeword iff H vec(M) = 0."""
        nm = self.n * self.m
        if self.dim == 0:
            return np.eye(nm, dtype=np.int64)
        return np.array(linalg.nullspace(self.generator, self.field), dtype=np.int64).reshape(-1, nm)

    def syndromes(self, flat: np.ndarray) -> np.ndarray:
        return linalg.batch_matmul(np.asarray(flat, dtype=np.int64), self.parity_check.T, self.field)

    def contains(self, M) -> bool:
        v = np.asarray(M, dtype=np.int64).reshape(1, self.n * self.m)
        return not self.syndromes(v).any()

    def contains_code(self, other: "MatrixCode") -> bool:
        _check_same_space(self, other)
        return other.dim == 0 or not self.syndromes(other.generator).any()


def _check_same_space(C1: MatrixCode, C2: MatrixCode) -> None:
    if C1.field != C2.field:
        raise FieldMismatchError(f"{C1.field!r} vs {C2.field!r}")
    if C1.shape != C2.shape:
        raise AmbientMismatchError(f"shapes {C1.shape} and {C2.shape} differ")


def _require_orientation(C: MatrixCode) -> None:
    if C.n > C.m:
        raise OrientationError(f"operation needs n <= m, code is {C.n}x{C.m}; transpose it first")


def _require_nonzero(C: MatrixCode) -> None:
    if C.dim == 0:
        raise ValueError("minimum distance undefined for the zero code")


def code_from_generators(field: FieldSpec, n: int, m: int, mats: Iterable) -> MatrixCode:
    """Span of the given n x m matrices; dependent generators are dropped."""
    mats = [linalg.as_matrix(M, field) for M in mats]
    for M in mats:
        if M.shape != (n, m):
            raise AmbientMismatchError(f"generator of shape {M.shape}, expected {(n, m)}")
    if not mats:
        return MatrixCode(field, n, m)
    return MatrixCode(field, n, m, np.array([M.reshape(-1) for M in mats]))


def full_code(field: FieldSpec, n: int, m: int) -> MatrixCode:
    return MatrixCode(field, n, m, np.eye(n * m, dtype=np.int64), canonical=True)


def zero_code(field: FieldSpec, n: int, m: int) -> MatrixCode:
    return MatrixCode(field, n, m)


def mat_supported(field: FieldSpec, n: int, m: int, X: Subspace, side: Side = "column") -> MatrixCode:
    """Mat(X, c) = {M : colsp(M) ⊆ X} or Mat(X, r) = {M : rowsp(M) ⊆ X}."""
    side = _side(side)
    expect = n if side == "column" else m
    if X.ambient_dim != expect:
        raise AmbientMismatchError(f"{side} support must live in F_q^{expect}")
    gens = []
    for u in X.basis:
        for j in range(m if side == "column" else n):
            M = np.zeros((n, m), dtype=np.int64)
            if side == "column":
                M[:, j] = u
            else:
                M[j, :] = u
            gens.append(M.reshape(-1))
    return MatrixCode(field, n, m, np.array(gens, dtype=np.int64).reshape(len(gens), n * m))


def dual(C: MatrixCode) -> MatrixCode:
    """C^⊥ under the trace form Tr(M N^t) = Σ M_ij N_ij."""
    if C.dim == 0:
        return full_code(C.field, C.n, C.m)
    return MatrixCode(C.field, C.n, C.m, C.parity_check)


def _coefficients(field: FieldSpec, k: int, start: int, stop: int) -> np.ndarray:
    q = field.order
    idx = np.arange(start, stop, dtype=np.int64)
    return (idx[:, None] // (q ** np.arange(k - 1, -1, -1, dtype=np.int64))[None, :]) % q


def _combine(coeffs: np.ndarray, G: np.ndarray, field: FieldSpec) -> np.ndarray:
    if field.e == 1:
        return (coeffs @ G) % field.p
    out = np.zeros((coeffs.shape[0], G.shape[1]), dtype=np.int64)
    for i in range(G.shape[0]):
        out = field.np_add(out, field.np_mul(coeffs[:, i : i + 1], G[i][None, :]))
    return out


def _check_guard(what: str, count: int, guard: int | None) -> None:
    if guard is not None and count > guard:
        raise GuardExceeded(what, count, guard)


def iter_codewords(C: MatrixCode, guard: int | None = DEFAULT_CODEWORD_GUARD, chunk: int = _CHUNK) -> Iterator[np.ndarray]:
    """All q^k codewords (flattened), in chunks, in coefficient order."""
    total = C.field.order ** C.dim
    _check_guard("codewords", total, guard)
    for start in range(0, total, chunk):
        coeffs = _coefficients(C.field, C.dim, start, min(total, start + chunk))
        yield _combine(coeffs, C.generator, C.field)


def rank_distribution(C: MatrixCode, guard: int | None = DEFAULT_CODEWORD_GUARD) -> dict[int, int]:
    """Exact census rank -> number of codewords."""
    counts: Counter = Counter()
    for words in iter_codewords(C, guard):
        ranks = linalg.batch_rank(words.reshape(-1, C.n, C.m), C.field)
        counts.update(ranks.tolist())
    return dict(sorted(counts.items()))


def _low_rank_cost(C: MatrixCode, r_max: int) -> int:
    q = C.field.order
    return sum(gaussian_binomial(C.n, r, q) * q ** (r * C.m) for r in range(1, r_max + 1))


def _min_distance_low_rank(C: MatrixCode, r_max: int) -> int:
    """Scan every matrix of rank <= r for r = 1, 2, ... and test membership."""
    field = C.field
    lattice = get_lattice(field, C.n, guard=None)
    for r in range(1, r_max + 1):
        _, bases = lattice.by_dim[r]
        Ys = _coefficients(field, r * C.m, 0, field.order ** (r * C.m)).reshape(-1, r, C.m)
        for U in bases:
            mats = linalg.batch_matmul(U.T[None], Ys, field).reshape(len(Ys), -1)
            nonzero = mats.any(axis=1)
            member = ~C.syndromes(mats).any(axis=1)
            if (nonzero & member).any():
                return r
    raise AssertionError("Singleton bound guarantees a codeword of rank <= n - k/m + 1")


def min_distance(C: MatrixCode, guard: int | None = DEFAULT_CODEWORD_GUARD) -> int:
    """Minimum rank of a nonzero codeword, by exhaustive scan.

    Scans the q^k codewords, or, when that is larger, every matrix of rank
    at most the Singleton bound n - ceil(k/m) + 1 with a membership test.
    The guard applies to whichever scan is chosen.
    """
    _require_nonzero(C)
    if C.n > C.m:
        return min_distance(transpose_code(C), guard)
    scan = C.field.order ** C.dim
    r_max = C.n - math.ceil(C.dim / C.m) + 1
    low = _low_rank_cost(C, r_max)
    if scan <= low:
        _check_guard("codewords", scan, guard)
        best = C.n
        for words in iter_codewords(C, None):
            ranks = linalg.batch_rank(words.reshape(-1, C.n, C.m), C.field)
            ranks = ranks[ranks > 0]
            if ranks.size:
                best = min(best, int(ranks.min()))
        return best
    _check_guard("low-rank matrices", low, guard)
    return _min_distance_low_rank(C, r_max)


def maxrk(C: MatrixCode, guard: int | None = DEFAULT_CODEWORD_GUARD) -> int:
    _require_orientation(C)
    best = 0
    for words in iter_codewords(C, guard):
        best = max(best, int(linalg.batch_rank(words.reshape(-1, C.n, C.m), C.field).max()))
    return best


def is_mrd(C: MatrixCode, guard: int | None = DEFAULT_CODEWORD_GUARD) -> bool:
    """True iff dim C = m (n - d + 1)."""
    _require_orientation(C)
    _require_nonzero(C)
    return C.dim == C.m * (C.n - min_distance(C, guard) + 1)


def is_optimal_anticode(C: MatrixCode, guard: int | None = DEFAULT_CODEWORD_GUARD) -> bool:
    """True iff dim C = m * maxrk(C)."""
    _require_orientation(C)
    return C.dim == C.m * maxrk(C, guard)


def supported_subcode(C: MatrixCode, X: Subspace, side: Side = "column") -> MatrixCode:
    """C(X, c) = {M in C : colsp(M) ⊆ X} or C(X, r) = {M in C : rowsp(M) ⊆ X}."""
    side = _side(side)
    expect = C.n if side == "column" else C.m
    if X.ambient_dim != expect or X.field != C.field:
        raise AmbientMismatchError(f"{side} support must be a subspace of F_{C.field.order}^{expect}")
    if C.dim == 0:
        return C
    H = orth(X).matrix()
    if H.shape[0] == 0:
        return C
    B = C.basis()
    if side == "column":
        images = linalg.batch_matmul(H[None], B, C.field)
    else:
        images = linalg.batch_matmul(B, H.T[None], C.field)
    # coefficient vectors λ with Σ λ_i images_i = 0
    S = images.reshape(C.dim, -1)
    lam = linalg.nullspace(S.T, C.field)
    if not lam:
        return zero_code(C.field, C.n, C.m)
    gens = _combine(np.array(lam, dtype=np.int64), C.generator, C.field)
    return MatrixCode(C.field, C.n, C.m, gens)


def support(C: MatrixCode) -> Subspace:
    """Sum of the column spaces of all codewords."""
    if C.dim == 0:
        return zero_space(C.field, C.n)
    blocks = np.concatenate(list(C.basis()), axis=1)
    return column_space(blocks, C.field)


def transform(C: MatrixCode, A, B) -> MatrixCode:
    """A C B = {A M B : M in C} for invertible A (n x n) and B (m x m)."""
    A = linalg.as_matrix(A, C.field)
    B = linalg.as_matrix(B, C.field)
    if A.shape != (C.n, C.n) or B.shape != (C.m, C.m):
        raise AmbientMismatchError("A must be n x n and B must be m x m")
    if linalg.rank(A, C.field) < C.n or linalg.rank(B, C.field) < C.m:
        raise ValueError("A and B must be invertible")
    if C.dim == 0:
        return C
    images = linalg.batch_matmul(linalg.batch_matmul(A[None], C.basis(), C.field), B[None], C.field)
    return MatrixCode(C.field, C.n, C.m, images.reshape(C.dim, -1))


def transpose_code(C: MatrixCode) -> MatrixCode:
    """C^t = {M^t : M in C}; also used to reorient codes with n > m."""
    if C.dim == 0:
        return zero_code(C.field, C.m, C.n)
    return MatrixCode(C.field, C.m, C.n, C.basis().transpose(0, 2, 1).reshape(C.dim, -1))


def covering_radius(C: MatrixCode, guard: int | None = DEFAULT_COVERING_GUARD) -> int:
    """max over all matrices M of min over codewords c of rk(M - c).

    The distance to the code is constant on cosets, so every ambient matrix
    is bucketed by syndrome and the minimum rank per bucket is taken.
    """
    q = C.field.order
    nm = C.n * C.m
    total = q**nm
    _check_guard("ambient matrices", total, guard)
    H = C.parity_check
    r = H.shape[0]
    if r == 0:
        return 0
    weights = q ** np.arange(r, dtype=np.int64)
    best = np.full(q**r, C.n + C.m, dtype=np.int64)
    for start in range(0, total, _CHUNK):
        mats = _coefficients(C.field, nm, start, min(total, start + _CHUNK))
        ranks = linalg.batch_rank(mats.reshape(-1, C.n, C.m), C.field)
        syn = C.syndromes(mats) @ weights
        np.minimum.at(best, syn, ranks)
    return int(best.max())


def gl_order(q: int, n: int) -> int:
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out


def general_linear_group(field: FieldSpec, n: int, guard: int | None = DEFAULT_PAIR_GUARD) -> np.ndarray:
    """Every invertible n x n matrix, in lexicographic order of entries."""
    q = field.order
    _check_guard(f"GL_{n}(F_{q})", gl_order(q, n), guard)
    total = q ** (n * n)
    out = []
    for start in range(0, total, _CHUNK):
        mats = _coefficients(field, n * n, start, min(total, start + _CHUNK)).reshape(-1, n, n)
        out.append(mats[linalg.batch_rank(mats, field) == n])
    return np.concatenate(out)


@dataclass(frozen=True)
class EquivalenceWitness:
    """An isometry M -> A M B, or M -> A M^t B when ``transposed``."""

    A: np.ndarray
    B: np.ndarray
    transposed: bool = False

    def apply(self, C: MatrixCode) -> MatrixCode:
        src = transpose_code(C) if self.transposed else C
        return transform(src, self.A, self.B)

    def verify(self, C1: MatrixCode, C2: MatrixCode) -> bool:
        return self.apply(C1) == C2

    def to_json(self) -> dict:
        return {"A": self.A.tolist(), "B": self.B.tolist(), "transposed": self.transposed}


def _search_chunk(C1: MatrixCode, C2: MatrixCode, transposed: bool, As: np.ndarray, GLm: np.ndarray, offset: int):
    """First (a_index, b_index) in this chunk mapping C1 onto C2, or None."""
    field = C1.field
    src = transpose_code(C1) if transposed else C1
    basis = src.basis()
    H = C2.parity_check.T
    for a, A in enumerate(As):
        AM = linalg.batch_matmul(A[None], basis, field)
        images = linalg.batch_matmul(AM[None], GLm[:, None], field)
        syn = linalg.batch_matmul(images.reshape(len(GLm), C1.dim, -1), H[None], field)
        ok = ~syn.reshape(len(GLm), -1).any(axis=1)
        if ok.any():
            return offset + a, int(ok.argmax())
    return None


def is_equivalent(C1: MatrixCode, C2: MatrixCode, guard: int | None = DEFAULT_PAIR_GUARD,
                  codeword_guard: int | None = DEFAULT_CODEWORD_GUARD, threads: int = 1) -> EquivalenceWitness | None:
    """Exhaustive isometry search; a verified witness or ``None``.

    Candidates are tried untransposed first, then transposed (square case),
    each in lexicographic order of A and then B.  Dimension and rank
    distribution are compared first; they are isometry invariants.
    """
    _check_same_space(C1, C2)
    if C1.dim != C2.dim:
        return None
    q = C1.field.order
    if codeword_guard is None or q**C1.dim <= codeword_guard:
        if rank_distribution(C1, None) != rank_distribution(C2, None):
            return None
    n, m = C1.shape
    flips = (False, True) if n == m else (False,)
    pairs = gl_order(q, n) * gl_order(q, m) * len(flips)
    _check_guard("isometry pairs (A, B)", pairs, guard)
    if C1.dim == 0:
        return EquivalenceWitness(np.eye(n, dtype=np.int64), np.eye(m, dtype=np.int64))
    GLn = general_linear_group(C1.field, n, None)
    GLm = GLn if m == n else general_linear_group(C1.field, m, None)
    for flip in flips:
        found = None
        if threads > 1:
            step = math.ceil(len(GLn) / threads)
            jobs = [(C1, C2, flip, GLn[s : s + step], GLm, s) for s in range(0, len(GLn), step)]
            with ProcessPoolExecutor(max_workers=threads) as pool:
                hits = [h for h in pool.map(_search_chunk, *zip(*jobs)) if h is not None]
            found = min(hits) if hits else None
        else:
            found = _search_chunk(C1, C2, flip, GLn, GLm, 0)
        if found is not None:
            w = EquivalenceWitness(GLn[found[0]].copy(), GLm[found[1]].copy(), flip)
            if not w.verify(C1, C2):
                raise AssertionError("equivalence witness failed verification")
            return w
    return None
