"""q-polymatroids as complete, exact rank tables over the subspace lattice.

Values are :class:`fractions.Fraction`.  A table is indexed by the lattice
order of :class:`~rankmetric.subspace.Lattice`, i.e. by (dimension, key).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

import numpy as np

from . import linalg
from .errors import AmbientMismatchError, FieldMismatchError, GuardExceeded
from .field import FieldSpec
from .matrix_code import (
    DEFAULT_PAIR_GUARD,
    MatrixCode,
    _require_orientation,
    _side,
    gl_order,
    supported_subcode,
)
from .subspace import DEFAULT_LATTICE_GUARD, Lattice, Subspace, get_lattice, orth

__all__ = [
    "QPolymatroid",
    "AxiomReport",
    "rho",
    "build_qpm",
    "check_axioms",
    "qpm_dual",
    "qpm_equal",
    "qpm_equivalent",
    "is_qmatroid",
    "uniform_mrd_table",
    "anticode_table",
    "qpm_min_distance",
    "qpm_is_mrd",
    "qpm_anticode_profile",
]


class QPolymatroid:
    """A pair (F_q^n, ρ) with ρ tabulated on every subspace.

    Construction does not check the axioms; use :func:`check_axioms`.
    """

    def __init__(self, field: FieldSpec, ground_dim: int, values, lattice: Lattice | None = None,
                 guard: int | None = DEFAULT_LATTICE_GUARD):
        self.field = field
        self.ground_dim = int(ground_dim)
        self.lattice = lattice if lattice is not None else get_lattice(field, self.ground_dim, guard)
        if isinstance(values, Mapping):
            table = {}
            for k, v in values.items():
                key = k.key if isinstance(k, Subspace) else bytes(k)
                table[key] = Fraction(v)
            missing = [S for S in self.lattice.subspaces if S.key not in table]
            if missing or len(table) != len(self.lattice):
                raise ValueError(f"rank table must cover exactly the {len(self.lattice)} subspaces of the ground space")
            values = [table[S.key] for S in self.lattice.subspaces]
        values = tuple(Fraction(v) for v in values)
        if len(values) != len(self.lattice):
            raise ValueError(f"expected {len(self.lattice)} values, got {len(values)}")
        self.values = values

    def __call__(self, X: Subspace) -> Fraction:
        return self.values[self.lattice.lookup(X)]

    rank = __call__

    @property
    def table(self) -> dict[bytes, Fraction]:
        return {S.key: v for S, v in zip(self.lattice.subspaces, self.values)}

    def items(self):
        return zip(self.lattice.subspaces, self.values)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QPolymatroid):
            return NotImplemented
        return qpm_equal(self, other)

    __hash__ = None

    def __repr__(self) -> str:
        return f"QPolymatroid(F_{self.field.order}^{self.ground_dim}, rho(full)={self.values[-1]})"

    def scaled(self, alpha) -> "QPolymatroid":
        alpha = Fraction(alpha)
        return QPolymatroid(self.field, self.ground_dim, [alpha * v for v in self.values], self.lattice)

    def _scaled_ints(self) -> tuple[np.ndarray, int]:
        L = math.lcm(*(v.denominator for v in self.values))
        return np.array([v.numerator * (L // v.denominator) for v in self.values], dtype=np.int64), L


def _same_ground(P1: QPolymatroid, P2: QPolymatroid) -> None:
    if P1.field != P2.field:
        raise FieldMismatchError(f"{P1.field!r} vs {P2.field!r}")
    if P1.ground_dim != P2.ground_dim:
        raise AmbientMismatchError(f"ground spaces F_q^{P1.ground_dim} and F_q^{P2.ground_dim} differ")


def rho(C: MatrixCode, X: Subspace, side: str = "column") -> Fraction:
    """ρ_c(C, J) = (dim C - dim C(J^⊥, c)) / m, or ρ_r(C, K) = (dim C - dim C(K^⊥, r)) / n."""
    _require_orientation(C)
    side = _side(side)
    sub = supported_subcode(C, orth(X), side)
    return Fraction(C.dim - sub.dim, C.m if side == "column" else C.n)


def build_qpm(C: MatrixCode, side: str = "column", guard: int | None = DEFAULT_LATTICE_GUARD) -> QPolymatroid:
    """The q-polymatroid P(C, side).

    m ρ_c(J) equals the rank of the k vectors vec(G_J M_i), where G_J is a
    basis of J and M_i runs over a basis of C; the row side is symmetric.
    All subspaces of one dimension are ranked in a single batch.
    """
    _require_orientation(C)
    side = _side(side)
    field = C.field
    ground = C.n if side == "column" else C.m
    denom = C.m if side == "column" else C.n
    lattice = get_lattice(field, ground, guard)
    values: list[Fraction] = [Fraction(0)] * len(lattice)
    if C.dim == 0:
        return QPolymatroid(field, ground, values, lattice)
    B = C.basis()
    for d, (idx, bases) in lattice.by_dim.items():
        if d == 0:
            continue
        if side == "column":
            prods = linalg.batch_matmul(bases[:, None], B[None], field)
        else:
            prods = linalg.batch_matmul(B[None], bases.transpose(0, 2, 1)[:, None], field)
        ranks = linalg.batch_rank(prods.reshape(len(idx), C.dim, -1), field)
        for i, r in zip(idx.tolist(), ranks.tolist()):
            values[i] = Fraction(r, denom)
    return QPolymatroid(field, ground, values, lattice)


@dataclass(frozen=True)
class AxiomReport:
    ok: bool
    axiom: str | None = None
    witness: tuple[Subspace, ...] = ()
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "axiom": self.axiom,
            "witness": [S.to_json() for S in self.witness],
            "detail": self.detail,
        }


def check_axioms(P: QPolymatroid) -> AxiomReport:
    """Exhaustive check of (P1) bounds, (P2) monotonicity, (P3) submodularity.

    Reports the first violation in lattice order together with the
    offending subspace or pair.
    """
    L = P.lattice
    v, scale = P._scaled_ints()
    dims = L.dims * scale
    subs = L.subspaces
    bad = np.flatnonzero((v < 0) | (v > dims))
    if bad.size:
        i = int(bad[0])
        return AxiomReport(False, "P1", (subs[i],), f"rho = {P.values[i]} outside [0, {subs[i].dim}]")
    viol = L.leq & (v[:, None] > v[None, :])
    if viol.any():
        i, j = (int(x) for x in np.argwhere(viol)[0])
        return AxiomReport(False, "P2", (subs[i], subs[j]),
                           f"A ⊆ B but rho(A) = {P.values[i]} > rho(B) = {P.values[j]}")
    lhs = v[L.join] + v[L.meet]
    viol = lhs > v[:, None] + v[None, :]
    if viol.any():
        i, j = (int(x) for x in np.argwhere(viol)[0])
        return AxiomReport(False, "P3", (subs[i], subs[j]),
                           "rho(A+B) + rho(A∩B) > rho(A) + rho(B)")
    return AxiomReport(True)


def qpm_dual(P: QPolymatroid) -> QPolymatroid:
    """ρ*(A) = dim A - ρ(F_q^n) + ρ(A^⊥)."""
    L = P.lattice
    total = P.values[-1]
    o = L.orth
    values = [S.dim - total + P.values[o[i]] for i, S in enumerate(L.subspaces)]
    return QPolymatroid(P.field, P.ground_dim, values, L)


def qpm_equal(P1: QPolymatroid, P2: QPolymatroid) -> bool:
    return P1.field == P2.field and P1.ground_dim == P2.ground_dim and P1.values == P2.values


def is_qmatroid(P: QPolymatroid) -> bool:
    return all(v.denominator == 1 for v in P.values)


def qpm_equivalent(P1: QPolymatroid, P2: QPolymatroid, guard: int | None = DEFAULT_PAIR_GUARD) -> np.ndarray | None:
    """Search GL_n for φ with ρ1(A) = ρ2(φ(A)) for every subspace A.

    Returns the matrix of φ (acting on column vectors) or ``None``.  The
    images φ(e_1), φ(e_2), ... are chosen in lexicographic order and a
    branch is cut as soon as some subspace of ⟨e_1, ..., e_j⟩ disagrees, so
    the first witness found is the lexicographically smallest one.
    """
    _same_ground(P1, P2)
    field, n = P1.field, P1.ground_dim
    q = field.order
    size = gl_order(q, n)
    if guard is not None and size > guard:
        raise GuardExceeded(f"GL_{n}(F_{q})", size, guard)
    L = P1.lattice
    profile = lambda P: sorted(zip(L.dims.tolist(), P.values))
    if profile(P1) != profile(P2) or P1.values[0] != P2.values[0]:
        return None

    # level j holds subspaces inside <e_1..e_{j+1}> with a nonzero (j+1)-th coordinate
    levels: list[list[int]] = [[] for _ in range(n)]
    for i, S in enumerate(L.subspaces):
        if S.dim:
            last = max(max(c for c, x in enumerate(row) if x) for row in S.basis)
            levels[last].append(i)
    vectors = [tuple(int(x) for x in v) for v in np.ndindex(*([q] * n)) if any(v)]
    images: list[tuple[int, ...]] = []
    spans: list[set] = [{(0,) * n}]

    def agrees(j: int) -> bool:
        V = np.array(images, dtype=np.int64)
        for i in levels[j]:
            R = L.subspaces[i].matrix()[:, : j + 1]
            img = Subspace(field, n, linalg.matmul(R, V, field).tolist())
            if P1.values[i] != P2.values[L.index[img.key]]:
                return False
        return True

    def extend(j: int) -> bool:
        if j == n:
            return True
        for v in vectors:
            if v in spans[-1]:
                continue
            images.append(v)
            spans.append({tuple(field.add(a, field.mul(c, b)) for a, b in zip(w, v))
                          for w in spans[-1] for c in range(q)})
            if agrees(j) and extend(j + 1):
                return True
            images.pop()
            spans.pop()
        return False

    if not extend(0):
        return None
    return np.array(images, dtype=np.int64).T


def uniform_mrd_table(field: FieldSpec, n: int, m: int, d: int) -> QPolymatroid:
    """ρ(J) = min(dim J, n - d + 1): the rank function of any MRD code."""
    if not 1 <= d <= n <= m:
        raise ValueError(f"need 1 <= d <= n <= m, got d={d}, n={n}, m={m}")
    L = get_lattice(field, n)
    r = n - d + 1
    return QPolymatroid(field, n, [min(S.dim, r) for S in L.subspaces], L)


def anticode_table(field: FieldSpec, n: int, t: int) -> QPolymatroid:
    """ρ(J) = dim(J + ⟨e_1, ..., e_{n-t}⟩) - (n - t)."""
    if not 0 <= t <= n:
        raise ValueError(f"need 0 <= t <= n, got t={t}")
    L = get_lattice(field, n)
    E = Subspace(field, n, [[int(i == j) for j in range(n)] for i in range(n - t)], canonical=True)
    e = L.index[E.key]
    join = L.join[:, e]
    return QPolymatroid(field, n, [int(L.dims[join[i]]) - (n - t) for i in range(len(L))], L)


def qpm_min_distance(P: QPolymatroid, code_dim: int, m: int) -> int:
    """d = n + 1 - min{s : ρ(J) = dim(C)/m for every J of dimension s}."""
    if code_dim <= 0:
        raise ValueError("minimum distance undefined for the zero code")
    target = Fraction(code_dim, m)
    dims = P.lattice.dims
    for s in range(P.ground_dim + 1):
        if all(v == target for v, d in zip(P.values, dims) if d == s):
            return P.ground_dim + 1 - s
    raise ValueError("table does not come from a code of the given dimension")


def qpm_is_mrd(P: QPolymatroid, code_dim: int, m: int) -> bool:
    """MRD iff ρ(J) = dim J for some J with dim J = n - d + 1."""
    d = qpm_min_distance(P, code_dim, m)
    s = P.ground_dim - d + 1
    return any(v == d_ for v, d_ in zip(P.values, P.lattice.dims.tolist()) if d_ == s)


def qpm_anticode_profile(P: QPolymatroid) -> int | None:
    """t when the value set is exactly {0, 1, ..., t} with ρ(F_q^n) = t."""
    t = P.values[-1]
    if t.denominator != 1:
        return None
    return int(t) if set(P.values) == set(range(int(t) + 1)) else None
