"""Reading and writing code files and rank-table files (JSON documents).

Serialisation is canonical: generators are replaced by the reduced echelon
basis, tables are sorted by subspace key, and keys are emitted in a fixed
order, so equal objects always produce identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import IO, Union

import numpy as np

from .errors import InputError
from .field import FieldSpec, Tower
from .matrix_code import MatrixCode, transpose_code
from .polymatroid import QPolymatroid
from .subspace import Subspace, get_lattice
from .vector_code import VectorCode

__all__ = [
    "parse_code",
    "parse_code_file",
    "code_to_json",
    "dumps",
    "write_code",
    "parse_table",
    "read_table",
    "table_to_json",
    "write_table",
]

Source = Union[str, Path, IO[str]]


def dumps(doc: dict) -> str:
    """One top-level key per line; list-valued keys get one item per line."""
    lines = []
    for k, v in doc.items():
        if isinstance(v, list) and v:
            items = ",\n".join("  " + json.dumps(x, separators=(",", ":")) for x in v)
            body = "[\n" + items + "\n ]"
        else:
            body = json.dumps(v, separators=(", ", ": "))
        lines.append(f" {json.dumps(k)}: {body}")
    return "{\n" + ",\n".join(lines) + "\n}\n"


def _load(src: Source):
    try:
        if hasattr(src, "read"):
            return json.load(src)
        with open(src, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"not valid JSON: {exc}") from None


def _field(doc) -> FieldSpec:
    if not isinstance(doc, dict) or "p" not in doc:
        raise InputError(f"malformed field description {doc!r}; expected {{\"p\": ..., \"e\": ..., \"modulus\": [...]}}")
    try:
        return FieldSpec(int(doc["p"]), int(doc.get("e", 1)), tuple(doc.get("modulus") or ()))
    except (TypeError, ValueError) as exc:
        raise InputError(f"malformed field description: {exc}") from None


def _positive_int(doc: dict, name: str) -> int:
    v = doc.get(name)
    if not isinstance(v, int) or isinstance(v, bool) or v < 1:
        raise InputError(f"'{name}' must be a positive integer, got {v!r}")
    return v


def _check_entries(values, order: int, label: str) -> None:
    for idx, x in np.ndenumerate(values):
        if not 0 <= x < order:
            where = ", ".join(f"{n} {i + 1}" for n, i in zip(("row", "column"), idx))
            raise InputError(f"{label}, {where}: entry {x} out of range [0, {order})")


def parse_code(doc, notices: list[str] | None = None) -> MatrixCode | VectorCode:
    """Validate a code document.

    Matrix codes with n > m are transposed (a notice is recorded) so every
    stored matrix code satisfies n <= m.  Dependent generators are
    accepted with a notice.
    """
    notices = notices if notices is not None else []
    if not isinstance(doc, dict):
        raise InputError("code document must be a JSON object")
    kind = doc.get("kind", "matrix")
    gens = doc.get("generators", [])
    if not isinstance(gens, list):
        raise InputError("'generators' must be a list")
    if kind == "matrix":
        field = _field(doc.get("field"))
        n, m = _positive_int(doc, "n"), _positive_int(doc, "m")
        mats = []
        for g, M in enumerate(gens, 1):
            try:
                A = np.array(M, dtype=np.int64)
            except (TypeError, ValueError):
                raise InputError(f"generator {g} is not an integer matrix") from None
            if A.shape != (n, m):
                raise InputError(f"generator {g} has shape {A.shape}, expected ({n}, {m})")
            _check_entries(A, field.order, f"generator {g}")
            mats.append(A.reshape(-1))
        C = MatrixCode(field, n, m, np.array(mats, dtype=np.int64).reshape(len(mats), n * m))
        if C.dim < len(mats):
            notices.append(f"generators are dependent: {len(mats)} given, dimension {C.dim}")
        if n > m:
            notices.append(f"transposed: {n}x{m} code stored as its {m}x{n} transpose")
            C = transpose_code(C)
        return C
    if kind == "vector":
        tdoc = doc.get("tower")
        if not isinstance(tdoc, dict) or "base" not in tdoc or "extension" not in tdoc:
            raise InputError("vector code needs 'tower': {\"base\": ..., \"extension\": ...}")
        try:
            tower = Tower(_field(tdoc["base"]), _field(tdoc["extension"]))
        except ValueError as exc:
            raise InputError(f"malformed tower: {exc}") from None
        n = _positive_int(doc, "n")
        rows = []
        for g, v in enumerate(gens, 1):
            try:
                A = np.array(v, dtype=np.int64)
            except (TypeError, ValueError):
                raise InputError(f"generator {g} is not an integer vector") from None
            if A.shape != (n,):
                raise InputError(f"generator {g} has length {A.shape}, expected {n}")
            _check_entries(A, tower.ext.order, f"generator {g}")
            rows.append(A.tolist())
        C = VectorCode(tower, n, rows)
        if C.dim < len(rows):
            notices.append(f"generators are dependent: {len(rows)} given, dimension {C.dim}")
        return C
    raise InputError(f"unknown code kind {kind!r}")


def parse_code_file(src: Source, notices: list[str] | None = None) -> MatrixCode | VectorCode:
    return parse_code(_load(src), notices)


def code_to_json(C: MatrixCode | VectorCode) -> dict:
    if isinstance(C, VectorCode):
        return {
            "kind": "vector",
            "tower": C.tower.to_json(),
            "n": C.n,
            "generators": [list(r) for r in C.basis],
        }
    return {
        "kind": "matrix",
        "field": C.field.to_json(),
        "n": C.n,
        "m": C.m,
        "generators": C.basis().tolist(),
    }


def write_code(C: MatrixCode | VectorCode, path: str | Path) -> None:
    Path(path).write_text(dumps(code_to_json(C)), encoding="utf-8")


def table_to_json(P: QPolymatroid) -> dict:
    entries = sorted(
        ([S.to_json(), v.numerator, v.denominator] for S, v in P.items()),
        key=lambda e: Subspace(P.field, P.ground_dim, e[0], canonical=True).key,
    )
    return {"field": P.field.to_json(), "ground_dim": P.ground_dim, "entries": entries}


def parse_table(doc) -> QPolymatroid:
    if not isinstance(doc, dict):
        raise InputError("table document must be a JSON object")
    field = _field(doc.get("field"))
    k = _positive_int(doc, "ground_dim")
    entries = doc.get("entries")
    if not isinstance(entries, list):
        raise InputError("'entries' must be a list")
    lattice = get_lattice(field, k)
    values: dict[bytes, Fraction] = {}
    for t, e in enumerate(entries, 1):
        try:
            rows, num, den = e
            S = Subspace(field, k, rows)
            v = Fraction(int(num), int(den))
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise InputError(f"entry {t}: {exc}") from None
        if any(not 0 <= x < field.order for r in rows for x in r):
            raise InputError(f"entry {t}: basis entry out of range [0, {field.order})")
        if S.key in values:
            raise InputError(f"entry {t}: subspace {S.to_json()} listed twice")
        values[S.key] = v
    if len(values) != len(lattice):
        raise InputError(f"table lists {len(values)} subspaces, F_{field.order}^{k} has {len(lattice)}")
    return QPolymatroid(field, k, values, lattice)


def read_table(src: Source) -> QPolymatroid:
    return parse_table(_load(src))


def write_table(P: QPolymatroid, path: str | Path) -> None:
    Path(path).write_text(dumps(table_to_json(P)), encoding="utf-8")
