"""Finite fields F_{p^e}, towers F_q ⊂ F_{q^m}, traces and trace-dual bases.

Elements are canonical integers: the base-p digits of an element are the
coefficients (low degree first) of its polynomial representative modulo
the field's monic irreducible modulus.  So in F_4 = F_2[x]/(x^2+x+1) the
value 2 is ``x`` and 3 is ``x + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property, lru_cache
from itertools import product
from typing import Sequence

import numpy as np

from . import linalg
from .errors import FieldMismatchError

__all__ = [
    "FieldSpec",
    "FieldElement",
    "Tower",
    "ExtensionBasis",
    "field_create",
    "field_trace",
    "dual_basis",
    "default_modulus",
    "is_prime",
    "is_irreducible",
]

MAX_ORDER = 1 << 16
DEFAULT_MODULUS_PRIMES = (2, 3, 5)
DEFAULT_MODULUS_MAX_DEGREE = 6


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    i = 3
    while i * i <= p:
        if p % i == 0:
            return False
        i += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# Polynomials over F_p as coefficient lists, low degree first.

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _trim(list(a))
    b = _trim(list(b))
    inv_lead = pow(b[-1], -1, p)
    while len(a) >= len(b):
        f = (a[-1] * inv_lead) % p
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - f * c) % p
        _trim(a)
    return a


def _poly_mulmod(a: Sequence[int], b: Sequence[int], mod: Sequence[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_mod(out, mod, p)


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    e = len(modulus) - 1
    for deg in range(1, e // 2 + 1):
        for low in product(range(p), repeat=deg):
            if not _poly_mod(modulus, list(low) + [1], p):
                return False
    return True


def _x_order_is_full(modulus: Sequence[int], p: int) -> bool:
    e = len(modulus) - 1
    order = p**e - 1

    def xpow(k: int) -> list[int]:
        result, base = [1], [0, 1]
        while k:
            if k & 1:
                result = _poly_mulmod(result, base, modulus, p)
            base = _poly_mulmod(base, base, modulus, p)
            k >>= 1
        return result

    return all(xpow(order // r) != [1] for r in _prime_factors(order))


@lru_cache(maxsize=None)
def default_modulus(p: int, e: int) -> tuple[int, ...]:
    """Smallest primitive monic polynomial of degree ``e`` over F_p.

    "Smallest" compares the integer whose base-p digits are the coefficients,
    so F_4 gets x^2+x+1, F_8 gets x^3+x+1 and F_16 gets x^4+x+1.
    """
    if e == 1:
        return (0, 1)
    if p not in DEFAULT_MODULUS_PRIMES or e > DEFAULT_MODULUS_MAX_DEGREE:
        raise ValueError(f"no default modulus for F_{p}^{e}; pass one explicitly")
    for value in range(p**e, 2 * p**e):
        coeffs = [(value // p**i) % p for i in range(e + 1)]
        if coeffs[0] and is_irreducible(coeffs, p) and _x_order_is_full(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("unreachable: primitive polynomials always exist")


@dataclass(frozen=True)
class FieldSpec:
    """The field F_{p^e} = F_p[x]/(modulus).

    Prime fields always carry the modulus ``(0, 1)``; any other monic
    degree-one modulus gives the same arithmetic and is normalised away.
    """

    p: int
    e: int = 1
    modulus: tuple[int, ...] = ()

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if not isinstance(self.e, int) or self.e < 1:
            raise ValueError(f"extension degree must be >= 1, got {self.e}")
        if self.p**self.e > MAX_ORDER and self.e > 1:
            raise ValueError(f"field order {self.p}^{self.e} exceeds {MAX_ORDER}")
        mod = tuple(int(c) for c in self.modulus)
        if not mod:
            mod = default_modulus(self.p, self.e)
        if len(mod) != self.e + 1:
            raise ValueError(f"modulus must have degree {self.e}")
        if mod[-1] != 1:
            raise ValueError("modulus must be monic")
        if any(not 0 <= c < self.p for c in mod):
            raise ValueError(f"modulus coefficients must lie in [0, {self.p})")
        if self.e == 1:
            mod = (0, 1)
        elif not is_irreducible(mod, self.p):
            raise ValueError(f"modulus {list(mod)} is reducible over F_{self.p}")
        object.__setattr__(self, "modulus", mod)

    def __repr__(self) -> str:
        if self.e == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.e}, modulus={list(self.modulus)})"

    @property
    def order(self) -> int:
        return self.p**self.e

    def elements(self) -> range:
        return range(self.order)

    def digits(self, v: int) -> list[int]:
        return [(v // self.p**i) % self.p for i in range(self.e)]

    def from_digits(self, digits: Sequence[int]) -> int:
        return sum((int(d) % self.p) * self.p**i for i, d in enumerate(digits))

    @cached_property
    def _tables(self):
        """exp/log tables for a primitive element (extension fields only)."""
        q = self.order
        p = self.p
        mod = list(self.modulus)
        for g in range(p, q):
            gd = _trim(self.digits(g))
            exp = np.zeros(q - 1, dtype=np.int64)
            cur = [1]
            ok = True
            for i in range(q - 1):
                v = self.from_digits(cur)
                if i and v == 1:
                    ok = False
                    break
                exp[i] = v
                cur = _poly_mulmod(cur, gd, mod, p)
            if ok:
                log = np.zeros(q, dtype=np.int64)
                log[exp] = np.arange(q - 1)
                digit_table = np.array([self.digits(v) for v in range(q)], dtype=np.int64)
                return exp, log, digit_table
        raise AssertionError("finite field without primitive element")

    @cached_property
    def _exp_list(self) -> list[int]:
        return self._tables[0].tolist()

    @cached_property
    def _log_list(self) -> list[int]:
        return self._tables[1].tolist()

    @cached_property
    def _powers_of_p(self) -> np.ndarray:
        return self.p ** np.arange(self.e, dtype=np.int64)

    # scalar arithmetic on canonical integers

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self.from_digits([x + y for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self.from_digits([-x for x in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a - b) % self.p
        if self.p == 2:
            return a ^ b
        return self.from_digits([x - y for x, y in zip(self.digits(a), self.digits(b))])

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        log = self._log_list
        return self._exp_list[(log[a] + log[b]) % (self.order - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        if self.e == 1:
            return pow(a, -1, self.p)
        return self._exp_list[(-self._log_list[a]) % (self.order - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        if self.e == 1:
            return pow(a, k, self.p)
        if a == 0:
            return 1 if k == 0 else 0
        return self._exp_list[(self._log_list[a] * k) % (self.order - 1)]

    # vectorised arithmetic on integer arrays

    def np_add(self, A, B) -> np.ndarray:
        A, B = np.asarray(A, dtype=np.int64), np.asarray(B, dtype=np.int64)
        if self.e == 1:
            return (A + B) % self.p
        if self.p == 2:
            return A ^ B
        D = self._tables[2]
        return ((D[A] + D[B]) % self.p) @ self._powers_of_p

    def np_sub(self, A, B) -> np.ndarray:
        A, B = np.asarray(A, dtype=np.int64), np.asarray(B, dtype=np.int64)
        if self.e == 1:
            return (A - B) % self.p
        if self.p == 2:
            return A ^ B
        D = self._tables[2]
        return ((D[A] - D[B]) % self.p) @ self._powers_of_p

    def np_neg(self, A) -> np.ndarray:
        return self.np_sub(np.zeros_like(np.asarray(A, dtype=np.int64)), A)

    def np_mul(self, A, B) -> np.ndarray:
        A, B = np.asarray(A, dtype=np.int64), np.asarray(B, dtype=np.int64)
        if self.e == 1:
            return (A * B) % self.p
        exp, log, _ = self._tables
        out = exp[(log[A] + log[B]) % (self.order - 1)]
        return np.where((A == 0) | (B == 0), 0, out)

    def np_inv(self, A) -> np.ndarray:
        A = np.asarray(A, dtype=np.int64)
        if np.any(A == 0):
            raise ZeroDivisionError("0 has no inverse")
        if self.e == 1:
            return np.array([0] + [pow(v, -1, self.p) for v in range(1, self.p)], dtype=np.int64)[A]
        exp, log, _ = self._tables
        return exp[(-log[A]) % (self.order - 1)]

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(value, self)

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, doc: dict) -> "FieldSpec":
        return field_create(int(doc["p"]), int(doc.get("e", 1)), doc.get("modulus"))


def field_create(p: int, e: int = 1, modulus: Sequence[int] | None = None) -> FieldSpec:
    """Validated field F_{p^e}; ``modulus`` defaults to the built-in table."""
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if e < 1:
        raise ValueError(f"extension degree must be >= 1, got {e}")
    if modulus is None:
        modulus = default_modulus(p, e)
    return FieldSpec(p, e, tuple(modulus))


@dataclass(frozen=True)
class FieldElement:
    """An element of an explicit finite field, with operator overloading."""

    value: int
    field: FieldSpec = dc_field(repr=False)

    def __post_init__(self):
        if not 0 <= self.value < self.field.order:
            raise ValueError(f"{self.value} is not a canonical element of {self.field!r}")

    def _check(self, other: "FieldElement") -> None:
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatchError(f"{self.field!r} vs {other.field!r}")

    def __add__(self, other):
        self._check(other)
        return FieldElement(self.field.add(self.value, other.value), self.field)

    def __sub__(self, other):
        self._check(other)
        return FieldElement(self.field.sub(self.value, other.value), self.field)

    def __mul__(self, other):
        self._check(other)
        return FieldElement(self.field.mul(self.value, other.value), self.field)

    def __truediv__(self, other):
        self._check(other)
        return FieldElement(self.field.div(self.value, other.value), self.field)

    def __neg__(self):
        return FieldElement(self.field.neg(self.value), self.field)

    def __pow__(self, k: int):
        return FieldElement(self.field.pow(self.value, k), self.field)

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field.inv(self.value), self.field)

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value


@dataclass(frozen=True)
class Tower:
    """The extension F_q ⊂ F_{q^m} with a fixed embedding of F_q."""

    base: FieldSpec
    ext: FieldSpec

    def __post_init__(self):
        if self.base.p != self.ext.p:
            raise FieldMismatchError("tower fields have different characteristic")
        if self.ext.e % self.base.e:
            raise ValueError(f"F_{self.base.order} is not a subfield of F_{self.ext.order}")

    @property
    def q(self) -> int:
        return self.base.order

    @property
    def m(self) -> int:
        return self.ext.e // self.base.e

    @cached_property
    def _embedding(self) -> tuple[list[int], dict[int, int]]:
        base, ext = self.base, self.ext
        if base.e == 1:
            images = list(range(base.p))
        else:
            # smallest root of the base modulus inside the extension
            root = next(
                r for r in range(ext.order)
                if self._eval_in_ext(base.modulus, r) == 0
            )
            powers = [ext.pow(root, t) for t in range(base.e)]
            images = []
            for v in range(base.order):
                acc = 0
                for d, pw in zip(base.digits(v), powers):
                    for _ in range(d):
                        acc = ext.add(acc, pw)
                images.append(acc)
        return images, {img: v for v, img in enumerate(images)}

    def _eval_in_ext(self, coeffs: Sequence[int], x: int) -> int:
        acc = 0
        for c in reversed(coeffs):
            acc = self.ext.add(self.ext.mul(acc, x), int(c) % self.ext.p)
        return acc

    def embed(self, v: int) -> int:
        """Image of a base-field value in the extension."""
        return self._embedding[0][v]

    def restrict(self, x: int) -> int:
        """Base-field value of an extension element lying in F_q."""
        try:
            return self._embedding[1][x]
        except KeyError:
            raise ValueError(f"{x} does not lie in the subfield F_{self.q}") from None

    def trace(self, x: int) -> int:
        """Tr(x) = x + x^q + ... + x^{q^{m-1}}, returned as a base-field value."""
        acc, cur = 0, x
        for _ in range(self.m):
            acc = self.ext.add(acc, cur)
            cur = self.ext.pow(cur, self.q)
        return self.restrict(acc)

    def polynomial_basis(self) -> "ExtensionBasis":
        """{1, x, ..., x^{m-1}} where x generates the extension."""
        x = self.ext.p if self.ext.e > 1 else 1
        return ExtensionBasis(self, tuple(self.ext.pow(x, i) for i in range(self.m)))

    def to_json(self) -> dict:
        return {"base": self.base.to_json(), "extension": self.ext.to_json()}

    @classmethod
    def from_json(cls, doc: dict) -> "Tower":
        return cls(FieldSpec.from_json(doc["base"]), FieldSpec.from_json(doc["extension"]))


@dataclass(frozen=True)
class ExtensionBasis:
    """An F_q-basis γ_1..γ_m of F_{q^m}."""

    tower: Tower
    elements: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(int(g) for g in self.elements))
        if len(self.elements) != self.tower.m:
            raise ValueError(f"basis needs {self.tower.m} elements, got {len(self.elements)}")
        if any(not 0 <= g < self.tower.ext.order for g in self.elements):
            raise ValueError("basis element outside the extension field")
        self._solver  # raises on dependent elements

    @cached_property
    def _solver(self) -> np.ndarray:
        # Column (j, t) holds the F_p digits of beta^t * gamma_j, beta generating F_q.
        tower = self.tower
        ext, base = tower.ext, tower.base
        Fp = FieldSpec(ext.p)
        beta = tower.embed(base.p) if base.e > 1 else 1
        cols = []
        for g in self.elements:
            for t in range(base.e):
                cols.append(ext.digits(ext.mul(ext.pow(beta, t), g)))
        M = np.array(cols, dtype=np.int64).T
        try:
            return linalg.inverse(M, Fp)
        except ValueError:
            raise ValueError(f"{list(self.elements)} is not an F_q-basis") from None

    def coordinates(self, x: int) -> tuple[int, ...]:
        """Coefficients c_j in F_q with x = Σ c_j γ_j."""
        tower = self.tower
        sol = (self._solver @ np.array(tower.ext.digits(x), dtype=np.int64)) % tower.ext.p
        e = tower.base.e
        return tuple(tower.base.from_digits(sol[j * e:(j + 1) * e]) for j in range(tower.m))

    def combine(self, coords: Sequence[int]) -> int:
        ext = self.tower.ext
        acc = 0
        for c, g in zip(coords, self.elements):
            acc = ext.add(acc, ext.mul(self.tower.embed(int(c)), g))
        return acc

    def expand(self, vector: Sequence[int]) -> np.ndarray:
        """The n x m matrix Γ(v) with v_i = Σ_j Γ(v)_ij γ_j."""
        return np.array([self.coordinates(int(v)) for v in vector], dtype=np.int64).reshape(len(vector), self.tower.m)


def _check_in(x: FieldElement, field: FieldSpec) -> None:
    if x.field != field:
        raise FieldMismatchError(f"{x.field!r} is not {field!r}")


def field_trace(x: FieldElement, tower: Tower) -> FieldElement:
    _check_in(x, tower.ext)
    return FieldElement(tower.trace(x.value), tower.base)


def dual_basis(basis: ExtensionBasis) -> ExtensionBasis:
    """The trace-dual basis: Tr(γ_i γ*_j) = δ_ij."""
    tower = basis.tower
    ext = tower.ext
    g = basis.elements
    gram = [[tower.trace(ext.mul(a, b)) for b in g] for a in g]
    Y = linalg.inverse(gram, tower.base)
    # γ*_j = Σ_l Y[l, j] γ_l
    dual = tuple(basis.combine(Y[:, j].tolist()) for j in range(tower.m))
    return ExtensionBasis(tower, dual)
