"""Command-line interface: ``rankmetric <subcommand> ...``.

Exit codes: 0 success, 1 input error, 2 a size guard refused the work.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import io
from .errors import GuardExceeded
from .field import ExtensionBasis, FieldSpec, Tower, dual_basis
from .matrix_code import (
    DEFAULT_CODEWORD_GUARD,
    DEFAULT_COVERING_GUARD,
    DEFAULT_PAIR_GUARD,
    MatrixCode,
    covering_radius,
    dual,
    is_equivalent,
)
from .polymatroid import build_qpm, check_axioms, qpm_dual, qpm_equivalent
from .report import run_report
from .subspace import DEFAULT_LATTICE_GUARD
from .vector_code import VectorCode, gabidulin, gamma_expand
from .weights import gen_weights_anticode, gen_weights_qpm, support_weights


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fmt_value(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _fmt_rows(rows) -> str:
    if not rows:
        return "0"
    return "<" + ", ".join("(" + ",".join(str(x) for x in r) + ")" for r in rows) + ">"


def _fmt_matrix(M) -> str:
    return "[" + "; ".join(" ".join(str(int(x)) for x in row) for row in M) + "]"


class Context:
    def __init__(self, args):
        self.json = args.json
        force = args.force
        g = args.guard
        self.codeword_guard = None if force else (g or DEFAULT_CODEWORD_GUARD)
        self.lattice_guard = None if force else (g or DEFAULT_LATTICE_GUARD)
        self.pair_guard = None if force else (g or DEFAULT_PAIR_GUARD)
        self.covering_guard = None if force else (g or DEFAULT_COVERING_GUARD)
        self.threads = args.threads
        self.notices: list[str] = []
        self.out: list[str] = []

    def say(self, line: str = "") -> None:
        self.out.append(line)

    def matrix_code(self, path) -> MatrixCode:
        C = io.parse_code_file(path, self.notices)
        if isinstance(C, VectorCode):
            self.notices.append("vector code expanded in the polynomial basis")
            C = gamma_expand(C, C.tower.polynomial_basis())
        return C


def cmd_report(ctx: Context, args) -> dict:
    C = ctx.matrix_code(args.file)
    rep = run_report(C, weights=not args.no_weights, tables=args.tables, duality=args.duality,
                     axioms=args.axioms, notices=ctx.notices, codeword_guard=ctx.codeword_guard,
                     lattice_guard=ctx.lattice_guard)
    ctx.say(f"code: {C.n}x{C.m} over {C.field!r}")
    ctx.say(f"dim: {rep['dim']}")
    ctx.say(f"d: {rep['d'] if rep['d'] is not None else 'undefined'}")
    ctx.say(f"MRD: {str(rep['mrd']).lower()}")
    ctx.say(f"maxrk: {rep['maxrk']}")
    ctx.say(f"optimal anticode: {str(rep['optimal_anticode']).lower()}")
    if "weights" in rep:
        w = rep["weights"]
        ctx.say(f"a: ({', '.join(map(str, w['anticode']))})")
        ctx.say(f"cs: ({', '.join(map(str, w['cs']))})")
        ctx.say(f"a via anticodes = a via rank functions: {str(w['equal']).lower()}")
    for side, t in rep.get("tables", {}).items():
        ctx.say(f"table {side}:")
        for rows, num, den in t["entries"]:
            ctx.say(f"  {_fmt_rows(rows)}: {_fmt_value(Fraction(num, den))}")
    for side, a in rep.get("axioms", {}).items():
        ctx.say(f"axioms {side}: {'ok' if a['ok'] else a['axiom'] + ' violated'}")
    for side, status in rep.get("duality", {}).items():
        s = side[0]
        ctx.say(f"P(C,{s})* = P(C^⊥,{s}): {status}")
    return rep


def cmd_dual(ctx: Context, args) -> dict:
    C = ctx.matrix_code(args.file)
    D = dual(C)
    io.write_code(D, args.output)
    ctx.say(f"dual: {D.n}x{D.m}, dim {D.dim} -> {args.output}")
    return {"dim": D.dim, "output": str(args.output)}


def cmd_weights(ctx: Context, args) -> dict:
    C = ctx.matrix_code(args.file)
    doc: dict = {}
    if args.method in ("anticode", "both"):
        doc["anticode"] = gen_weights_anticode(C, ctx.lattice_guard).to_json()
    if args.method in ("rank-function", "both"):
        doc["rank-function"] = gen_weights_qpm(C, ctx.lattice_guard).to_json()
    cs = list(support_weights(C))
    for k, prof in doc.items():
        prof["cs"] = cs
        ctx.say(f"a ({k}): ({', '.join(map(str, prof['a']))})")
    ctx.say(f"cs: ({', '.join(map(str, cs))})")
    if args.method == "both":
        doc["equal"] = doc["anticode"]["a"] == doc["rank-function"]["a"]
        ctx.say(f"methods agree: {str(doc['equal']).lower()}")
    return doc


def cmd_qpm(ctx: Context, args) -> dict:
    C = ctx.matrix_code(args.file)
    P = build_qpm(C, args.side, ctx.lattice_guard)
    doc = io.table_to_json(P)
    if args.dump:
        io.write_table(P, args.dump)
    for rows, num, den in doc["entries"]:
        ctx.say(f"{_fmt_rows(rows)}: {_fmt_value(Fraction(num, den))}")
    return doc


def _axiom_lines(ctx: Context, rep) -> None:
    if rep.ok:
        ctx.say("q-polymatroid: all axioms hold")
    else:
        ctx.say(f"{rep.axiom} violated: {rep.detail}")
        for name, S in zip("AB", rep.witness):
            ctx.say(f"  {name} = {_fmt_rows(S.basis)}")


def cmd_qpm_check(ctx: Context, args) -> dict:
    rep = check_axioms(io.read_table(args.table))
    _axiom_lines(ctx, rep)
    return rep.to_json()


def cmd_qpm_dual(ctx: Context, args) -> dict:
    P = io.read_table(args.table)
    rep = check_axioms(P)
    if not rep.ok:
        raise ValueError(f"input table is not a q-polymatroid ({rep.axiom} violated)")
    D = qpm_dual(P)
    io.write_table(D, args.output)
    ctx.say(f"dual table -> {args.output}")
    return {"output": str(args.output)}


def cmd_equiv(ctx: Context, args) -> dict:
    C1, C2 = ctx.matrix_code(args.file1), ctx.matrix_code(args.file2)
    guard = args.sub_guard if args.sub_guard is not None else ctx.pair_guard
    w = is_equivalent(C1, C2, guard=guard, codeword_guard=ctx.codeword_guard, threads=ctx.threads)
    if w is None:
        ctx.say("not equivalent")
        return {"equivalent": False}
    ctx.say("equivalent" + (" (after transposition)" if w.transposed else ""))
    ctx.say(f"A = {_fmt_matrix(w.A)}")
    ctx.say(f"B = {_fmt_matrix(w.B)}")
    return {"equivalent": True, "witness": w.to_json()}


def cmd_pm_equiv(ctx: Context, args) -> dict:
    P1, P2 = io.read_table(args.table1), io.read_table(args.table2)
    guard = args.sub_guard if args.sub_guard is not None else ctx.pair_guard
    phi = qpm_equivalent(P1, P2, guard)
    if phi is None:
        ctx.say("not equivalent")
        return {"equivalent": False}
    ctx.say("equivalent")
    ctx.say(f"phi = {_fmt_matrix(phi)}")
    return {"equivalent": True, "witness": phi.tolist()}


def _parse_basis(spec: str, tower: Tower) -> ExtensionBasis:
    """``poly``, ``dual:poly``, or comma-separated extension elements (``dual:`` prefix allowed)."""
    take_dual = spec.startswith("dual:")
    body = spec[5:] if take_dual else spec
    if body == "poly":
        basis = tower.polynomial_basis()
    else:
        try:
            elements = tuple(int(x) for x in body.split(","))
        except ValueError:
            raise ValueError(f"bad basis spec {spec!r}") from None
        basis = ExtensionBasis(tower, elements)
    return dual_basis(basis) if take_dual else basis


def cmd_expand(ctx: Context, args) -> dict:
    V = io.parse_code_file(args.file, ctx.notices)
    if not isinstance(V, VectorCode):
        raise ValueError("expand needs a vector code file")
    basis = _parse_basis(args.basis, V.tower)
    C = gamma_expand(V, basis)
    io.write_code(C, args.output)
    ctx.say(f"expanded with basis {list(basis.elements)}: {C.n}x{C.m}, dim {C.dim} -> {args.output}")
    return {"basis": list(basis.elements), "dim": C.dim, "output": str(args.output)}


def cmd_gabidulin(ctx: Context, args) -> dict:
    try:
        p, e = (int(x) for x in args.q.split(","))
    except ValueError:
        raise ValueError(f"--q expects P,E (e.g. 2,1), got {args.q!r}") from None
    m = args.m if args.m is not None else args.n
    tower = Tower(FieldSpec(p, e), FieldSpec(p, e * m))
    G = gabidulin(tower, args.n, args.k)
    doc = io.code_to_json(G)
    if args.output:
        io.write_code(G, args.output)
        ctx.say(f"Gabidulin [{args.n}, {args.k}] over GF({tower.ext.order})/GF({tower.q}) -> {args.output}")
    else:
        ctx.say(io.dumps(doc).rstrip())
    return doc


def cmd_covering_radius(ctx: Context, args) -> dict:
    C = ctx.matrix_code(args.file)
    r = covering_radius(C, ctx.covering_guard)
    ctx.say(f"covering radius: {r}")
    return {"covering_radius": r}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rankmetric", description="Rank-metric codes, generalized weights and q-polymatroids.")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--guard", type=int, default=None, help="override every size guard")
    p.add_argument("--force", action="store_true", help="disable size guards")
    p.add_argument("--threads", type=int, default=1, help="worker processes for equivalence search")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("report", help="summary of a code")
    s.add_argument("file")
    s.add_argument("--no-weights", action="store_true")
    s.add_argument("--tables", action="store_true")
    s.add_argument("--duality", action="store_true")
    s.add_argument("--axioms", action="store_true")
    s.set_defaults(func=cmd_report)

    s = sub.add_parser("dual", help="write the dual code")
    s.add_argument("file")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_dual)

    s = sub.add_parser("weights", help="generalized and support weights")
    s.add_argument("file")
    s.add_argument("--method", choices=["anticode", "rank-function", "both"], default="both")
    s.set_defaults(func=cmd_weights)

    s = sub.add_parser("qpm", help="rank table of the associated q-polymatroid")
    s.add_argument("file")
    s.add_argument("--side", choices=["col", "row"], default="col")
    s.add_argument("--dump", metavar="TABLE_OUT")
    s.set_defaults(func=cmd_qpm)

    s = sub.add_parser("qpm-check", help="check the q-polymatroid axioms of a table")
    s.add_argument("table")
    s.set_defaults(func=cmd_qpm_check)

    s = sub.add_parser("qpm-dual", help="write the dual table")
    s.add_argument("table")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_qpm_dual)

    s = sub.add_parser("equiv", help="search for an isometry between two codes")
    s.add_argument("file1")
    s.add_argument("file2")
    s.add_argument("--guard", dest="sub_guard", type=int, default=None)
    s.set_defaults(func=cmd_equiv)

    s = sub.add_parser("pm-equiv", help="search for an equivalence between two tables")
    s.add_argument("table1")
    s.add_argument("table2")
    s.add_argument("--guard", dest="sub_guard", type=int, default=None)
    s.set_defaults(func=cmd_pm_equiv)

    s = sub.add_parser("expand", help="expand a vector code into a matrix code")
    s.add_argument("file")
    s.add_argument("--basis", default="poly", help="poly, dual:poly, or comma-separated elements")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("gabidulin", help="construct a Gabidulin code")
    s.add_argument("--q", required=True, metavar="P,E")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--m", type=int, default=None, help="extension degree (default n)")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gabidulin)

    s = sub.add_parser("covering-radius", help="covering radius of a code")
    s.add_argument("file")
    s.set_defaults(func=cmd_covering_radius)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"rankmetric: error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 1
    ctx = Context(args)
    try:
        doc = args.func(ctx, args)
    except GuardExceeded as exc:
        print(f"rankmetric: refused: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, KeyError) as exc:
        print(f"rankmetric: error: {exc}", file=sys.stderr)
        return 1
    if args.json:
        if isinstance(doc, dict) and ctx.notices and "notices" not in doc:
            doc = {**doc, "notices": ctx.notices}
        sys.stdout.write(json.dumps(doc, indent=1, ensure_ascii=False) + "\n")
    else:
        for note in ctx.notices:
            print(f"notice: {note}")
        for line in ctx.out:
            print(line)
    return 0
