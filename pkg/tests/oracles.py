"""Independent brute-force oracles over prime fields.

Nothing here imports the package: codewords are enumerated as explicit
tuples and subspaces as explicit sets of vectors, so these functions serve
as a second route for checking the library's linear-algebra shortcuts.
"""

from __future__ import annotations

from itertools import product
from math import log


def rank(rows, p):
    rows = [list(r) for r in rows]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def span_set(vectors, p, length):
    """All F_p-linear combinations as a frozenset of tuples."""
    out = {tuple([0] * length)}
    for v in vectors:
        out = {tuple((a + c * b) % p for a, b in zip(w, v)) for w in out for c in range(p)}
    return frozenset(out)


def codewords(gens, p, n, m):
    """Every codeword as a tuple of n row tuples."""
    flat = [[x for row in g for x in row] for g in gens]
    words = span_set(flat, p, n * m)
    return [tuple(tuple(w[i * m:(i + 1) * m]) for i in range(n)) for w in words]


def mat_rank(M, p):
    return rank(M, p)


def columns(M):
    return [tuple(col) for col in zip(*M)]


def all_subspaces(p, k):
    """Every subspace of F_p^k as a frozenset of vectors (small k only)."""
    vecs = list(product(range(p), repeat=k))
    found = {frozenset([tuple([0] * k)])}
    frontier = set(found)
    while frontier:
        new = set()
        for S in frontier:
            for v in vecs:
                if v not in S:
                    T = frozenset(tuple((a + c * b) % p for a, b in zip(w, v)) for w in S for c in range(p))
                    if T not in found:
                        found.add(T)
                        new.add(T)
        frontier = new
    return found


def set_dim(S, p):
    return round(log(len(S), p))


def min_distance(gens, p, n, m):
    return min(mat_rank(M, p) for M in codewords(gens, p, n, m) if any(any(r) for r in M))


def maxrk(gens, p, n, m):
    return max(mat_rank(M, p) for M in codewords(gens, p, n, m))


def dot(u, v, p):
    return sum(a * b for a, b in zip(u, v)) % p


def orth_set(S, p, k):
    return frozenset(v for v in product(range(p), repeat=k) if all(dot(v, w, p) == 0 for w in S))


def rho_column(gens, p, n, m, J):
    """(dim C - dim{M : colsp(M) ⊆ J^⊥}) / m by counting codewords; returns (num, m)."""
    words = codewords(gens, p, n, m)
    Jp = orth_set(J, p, n)
    sub = sum(1 for M in words if all(c in Jp for c in columns(M)))
    return set_dim(words, p) - set_dim(range(sub), p), m


def generalized_weights(gens, p, n, m):
    """a_i straight from the definition, with anticodes as explicit sets."""
    words = codewords(gens, p, n, m)
    k = set_dim(words, p)
    subs = all_subspaces(p, n)
    candidates = []  # (dim A, dim(C ∩ A))
    for S in subs:
        d = set_dim(S, p)
        inter_c = sum(1 for M in words if all(c in S for c in columns(M)))
        candidates.append((m * d, set_dim(range(inter_c), p)))
        if n == m:
            inter_r = sum(1 for M in words if all(tuple(r) in S for r in M))
            candidates.append((m * d, set_dim(range(inter_r), p)))
    return [min(dA // m for dA, di in candidates if di >= i) for i in range(1, k + 1)]


def support_weights(gens, p, n, m):
    """cs_i by enumerating subcodes as spans of codeword tuples (tiny codes only)."""
    words = codewords(gens, p, n, m)
    k = set_dim(words, p)
    flat = {M: [x for r in M for x in r] for M in words}
    out = []
    for i in range(1, k + 1):
        best = n
        for tup in product(words, repeat=i):
            if rank([flat[M] for M in tup], p) != i:
                continue
            cols = [c for M in tup for c in columns(M)]
            best = min(best, rank(cols, p) if cols else 0)
        out.append(best)
    return out
