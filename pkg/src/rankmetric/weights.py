"""Generalized rank weights a_i and support weights cs_i of matrix codes."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import GuardExceeded
from .field import FieldSpec
from .matrix_code import (
    MatrixCode,
    _require_orientation,
    mat_supported,
    support,
    transpose_code,
)
from .polymatroid import build_qpm
from .subspace import DEFAULT_LATTICE_GUARD, Subspace, gaussian_binomial, get_lattice, rref_blocks

__all__ = [
    "WeightProfile",
    "optimal_anticodes",
    "anticode_labels",
    "gen_weights_anticode",
    "gen_weights_qpm",
    "support_weights",
    "minimizing_anticodes",
    "DEFAULT_SUBCODE_GUARD",
]

DEFAULT_SUBCODE_GUARD = 200_000


@dataclass(frozen=True)
class WeightProfile:
    a: tuple[int, ...]
    cs: tuple[int, ...] | None = None
    source: str = "anticode"

    def to_json(self) -> dict:
        return {"a": list(self.a), "cs": None if self.cs is None else list(self.cs), "method": self.source}


def _require_nonzero(C: MatrixCode) -> None:
    if C.dim == 0:
        raise ValueError("minimum distance undefined for the zero code")


def optimal_anticodes(field: FieldSpec, n: int, m: int, guard: int | None = DEFAULT_LATTICE_GUARD) -> list[MatrixCode]:
    """Every optimal anticode in F_q^{n x m}, sorted by (dimension, key).

    These are the spaces Mat(J, column), plus Mat(K, row) when n = m.
    """
    if n > m:
        raise ValueError(f"need n <= m, got {n} x {m}")
    L = get_lattice(field, n, guard)
    sides = ("column", "row") if n == m else ("column",)
    found: dict[bytes, MatrixCode] = {}
    for side in sides:
        for S in L.subspaces:
            A = mat_supported(field, n, m, S, side)
            found.setdefault(A.key, A)
    return sorted(found.values(), key=lambda A: (A.dim, A.key))


def anticode_labels(A: MatrixCode) -> list[str]:
    """Human-readable descriptions Mat(X, c) / Mat(X, r) of an optimal anticode."""
    out = []
    X = support(A)
    if mat_supported(A.field, A.n, A.m, X, "column") == A:
        out.append(f"Mat({_fmt(X)}, c)")
    if A.n == A.m:
        Y = support(transpose_code(A))
        if mat_supported(A.field, A.n, A.m, Y, "row") == A:
            out.append(f"Mat({_fmt(Y)}, r)")
    return out


def _fmt(X: Subspace) -> str:
    return "<" + ", ".join("(" + ",".join(map(str, r)) + ")" for r in X.basis) + ">"


def _intersection_dims(C: MatrixCode, anticodes: list[MatrixCode]) -> np.ndarray:
    """dim(C ∩ A) = dim C + dim A - dim(C + A), ranked in batches of equal dim A."""
    out = np.zeros(len(anticodes), dtype=np.int64)
    G = C.generator
    groups: dict[int, list[int]] = {}
    for j, A in enumerate(anticodes):
        groups.setdefault(A.dim, []).append(j)
    for dA, idx in groups.items():
        if dA == 0:
            continue
        stacked = np.stack([np.vstack([G, anticodes[j].generator]) for j in idx])
        ranks = linalg.batch_rank(stacked, C.field)
        out[idx] = C.dim + dA - ranks
    return out


def _anticode_scan(C: MatrixCode, guard: int | None):
    _require_orientation(C)
    _require_nonzero(C)
    anticodes = optimal_anticodes(C.field, C.n, C.m, guard)
    return anticodes, _intersection_dims(C, anticodes)


def gen_weights_anticode(C: MatrixCode, guard: int | None = DEFAULT_LATTICE_GUARD) -> WeightProfile:
    """a_i = min{dim A : A optimal anticode, dim(C ∩ A) >= i} / m."""
    anticodes, inter = _anticode_scan(C, guard)
    dims = np.array([A.dim for A in anticodes], dtype=np.int64)
    a = []
    for i in range(1, C.dim + 1):
        best = int(dims[inter >= i].min())
        assert best % C.m == 0
        a.append(best // C.m)
    return WeightProfile(tuple(a), None, "anticode")


def minimizing_anticodes(C: MatrixCode, i: int, guard: int | None = DEFAULT_LATTICE_GUARD) -> list[MatrixCode]:
    """All optimal anticodes A of dimension m a_i with dim(C ∩ A) >= i."""
    if not 1 <= i <= C.dim:
        raise ValueError(f"i must lie in 1..{C.dim}, got {i}")
    anticodes, inter = _anticode_scan(C, guard)
    hits = [A for A, t in zip(anticodes, inter.tolist()) if t >= i]
    best = min(A.dim for A in hits)
    return [A for A in hits if A.dim == best]


def gen_weights_qpm(C: MatrixCode, guard: int | None = DEFAULT_LATTICE_GUARD) -> WeightProfile:
    """a_i from the rank functions alone.

    For m > n, a_i = min{n - dim J : dim C - m ρ_c(J) >= i}.  For n = m the
    same expression on the row side is computed too and the minimum taken.
    """
    _require_orientation(C)
    _require_nonzero(C)
    k = C.dim
    sides = [("column", C.m)] + ([("row", C.n)] if C.n == C.m else [])
    best = [None] * k
    for side, scale in sides:
        P = build_qpm(C, side, guard)
        ground = P.ground_dim
        for S, v in P.items():
            drop = k - int(scale * v)
            for i in range(1, drop + 1):
                val = ground - S.dim
                if best[i - 1] is None or val < best[i - 1]:
                    best[i - 1] = val
    return WeightProfile(tuple(best), None, "rank-function")


def _subcode_count(q: int, k: int) -> int:
    return sum(gaussian_binomial(k, i, q) for i in range(1, k + 1))


def _support_weights_exhaustive(C: MatrixCode) -> tuple[int, ...]:
    G = C.generator
    field = C.field
    n, m, k = C.n, C.m, C.dim
    out = []
    for i in range(1, k + 1):
        best = n
        for D in rref_blocks(field, k, i):
            words = linalg.batch_matmul(D, G[None], field).reshape(len(D), i, n, m)
            # column-space sum of the i codewords = column space of [M_1 | ... | M_i]
            side_by_side = words.transpose(0, 2, 1, 3).reshape(len(D), n, i * m)
            best = min(best, int(linalg.batch_rank(side_by_side, field).min()))
        out.append(best)
    return tuple(out)


def _support_weights_lattice(C: MatrixCode, guard: int | None) -> tuple[int, ...]:
    """cs_i = min{dim X : dim C(X, c) >= i}, with dim C(X, c) = k - m ρ_c(X^⊥)."""
    P = build_qpm(C, "column", guard)
    L = P.lattice
    k = C.dim
    best = [C.n] * k
    for j, S in enumerate(L.subspaces):
        sub_dim = k - int(C.m * P.values[L.orth[j]])
        for i in range(1, sub_dim + 1):
            best[i - 1] = min(best[i - 1], S.dim)
    return tuple(best)


def support_weights(C: MatrixCode, method: str = "auto", guard: int | None = DEFAULT_SUBCODE_GUARD) -> tuple[int, ...]:
    """cs_i = min{dim supp(D) : D ⊆ C, dim D = i} for i = 1..dim C.

    ``exhaustive`` enumerates subcodes through coefficient subspaces of
    F_q^k; ``lattice`` minimises over supports X with dim C(X, c) >= i
    instead; ``auto`` picks the exhaustive scan whenever it fits the guard.
    """
    _require_nonzero(C)
    count = _subcode_count(C.field.order, C.dim)
    if method == "auto":
        method = "exhaustive" if guard is None or count <= guard else "lattice"
    if method == "exhaustive":
        if guard is not None and count > guard:
            raise GuardExceeded("subcodes", count, guard)
        return _support_weights_exhaustive(C)
    if method == "lattice":
        _require_orientation(C)
        return _support_weights_lattice(C, DEFAULT_LATTICE_GUARD)
    raise ValueError(f"unknown method {method!r}")
