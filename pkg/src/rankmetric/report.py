"""Aggregated code reports (the data behind ``rankmetric report``)."""

from __future__ import annotations

import json
from importlib import resources

from .io import table_to_json
from .matrix_code import (
    DEFAULT_CODEWORD_GUARD,
    MatrixCode,
    dual,
    is_optimal_anticode,
    maxrk,
    min_distance,
)
from .polymatroid import build_qpm, check_axioms, qpm_dual
from .subspace import DEFAULT_LATTICE_GUARD
from .weights import DEFAULT_SUBCODE_GUARD, gen_weights_anticode, gen_weights_qpm, support_weights

__all__ = ["run_report", "report_schema", "DUALITY_VERIFIED"]

DUALITY_VERIFIED = "verified"


def report_schema() -> dict:
    return json.loads(resources.files("rankmetric").joinpath("schemas/report.schema.json").read_text("utf-8"))


def run_report(C: MatrixCode, *, weights: bool = True, tables: bool = False, duality: bool = False,
               axioms: bool = False, notices: list[str] | None = None,
               codeword_guard: int | None = DEFAULT_CODEWORD_GUARD,
               lattice_guard: int | None = DEFAULT_LATTICE_GUARD,
               subcode_guard: int | None = DEFAULT_SUBCODE_GUARD) -> dict:
    """Every requested invariant of C as a JSON-ready dict.

    Raises ``ValueError`` when weights are requested for the zero code and
    :class:`~rankmetric.errors.GuardExceeded` when a scan is too large.
    """
    rep: dict = {
        "field": C.field.to_json(),
        "n": C.n,
        "m": C.m,
        "dim": C.dim,
        "singleton_bound": C.m * C.n if C.dim == 0 else None,
        "d": None,
        "mrd": False,
        "maxrk": maxrk(C, codeword_guard) if C.dim else 0,
        "optimal_anticode": is_optimal_anticode(C, codeword_guard) if C.dim else True,
        "notices": list(notices or []),
    }
    if C.dim:
        d = min_distance(C, codeword_guard)
        rep["d"] = d
        rep["singleton_bound"] = C.m * (C.n - d + 1)
        rep["mrd"] = C.dim == rep["singleton_bound"]
    if weights:
        if C.dim == 0:
            raise ValueError("minimum distance undefined for the zero code")
        a1 = gen_weights_anticode(C, lattice_guard)
        a2 = gen_weights_qpm(C, lattice_guard)
        cs = support_weights(C, guard=subcode_guard)
        rep["weights"] = {
            "anticode": list(a1.a),
            "rank_function": list(a2.a),
            "equal": a1.a == a2.a,
            "cs": list(cs),
        }
    sides = ("column", "row")
    if tables or duality or axioms:
        P = {s: build_qpm(C, s, lattice_guard) for s in sides}
        if tables:
            rep["tables"] = {s: table_to_json(P[s]) for s in sides}
        if axioms:
            rep["axioms"] = {s: check_axioms(P[s]).to_json() for s in sides}
        if duality:
            D = dual(C)
            rep["duality"] = {
                s: DUALITY_VERIFIED if qpm_dual(P[s]) == build_qpm(D, s, lattice_guard) else "FAILED"
                for s in sides
            }
    return rep
