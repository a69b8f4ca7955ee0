from __future__ import annotations

import io as _io
import json
from contextlib import redirect_stderr, redirect_stdout

import jsonschema
import pytest

from conftest import FIXTURES
from rankmetric import build_qpm, dual, gen_weights_anticode, io, min_distance, zero_code, field_create
from rankmetric.cli import main
from rankmetric.errors import InputError
from rankmetric.report import report_schema, run_report

CANONICAL = ["ex2.json", "exnot.json", "exnot_t.json", "zero.json", "gab_4_2.json"]


def run(*argv):
    out, err = _io.StringIO(), _io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main([str(a) for a in argv])
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name", CANONICAL)
def test_code_roundtrip_byte_stable(name):
    path = FIXTURES / name
    assert io.dumps(io.code_to_json(io.parse_code_file(path))) == path.read_text()


def test_table_roundtrip_byte_stable():
    path = FIXTURES / "exnot_col.table.json"
    assert io.dumps(io.table_to_json(io.read_table(path))) == path.read_text()


def test_reparse_canonical(tmp_path):
    notices = []
    C = io.parse_code_file(FIXTURES / "tall_3x2.json", notices)
    assert (C.n, C.m) == (2, 3)
    assert any("transposed" in s for s in notices)
    assert any("dependent" in s for s in notices)
    io.write_code(C, tmp_path / "c.json")
    assert io.parse_code_file(tmp_path / "c.json") == C


def test_out_of_range_names_position():
    with pytest.raises(InputError, match="generator 1, row 2, column 2"):
        io.parse_code_file(FIXTURES / "out_of_range.json")


@pytest.mark.parametrize("doc,msg", [
    ({"kind": "matrix", "field": {"p": 4}, "n": 2, "m": 2, "generators": []}, "field"),
    ({"kind": "matrix", "field": {"p": 2}, "n": 0, "m": 2, "generators": []}, "'n'"),
    ({"kind": "matrix", "field": {"p": 2}, "n": 2, "m": 2, "generators": [[[1, 0]]]}, "shape"),
    ({"kind": "blob"}, "kind"),
])
def test_malformed_documents(doc, msg):
    with pytest.raises(InputError, match=msg):
        io.parse_code(doc)


def test_report_ex2():
    code, out, _ = run("report", FIXTURES / "ex2.json")
    assert code == 0
    assert "d: 1" in out and "a: (1, 2, 3)" in out and "MRD: false" in out


def test_report_exnot_duality():
    code, out, _ = run("report", FIXTURES / "exnot.json", "--duality")
    assert code == 0
    assert "P(C,c)* = P(C^⊥,c): verified" in out


def test_report_zero_code_weights_error():
    code, _, err = run("report", FIXTURES / "zero.json")
    assert code == 1 and "minimum distance undefined" in err
    assert run("report", FIXTURES / "zero.json", "--no-weights")[0] == 0


def test_report_json_schema_and_values():
    code, out, _ = run("--json", "report", FIXTURES / "ex2.json", "--tables", "--duality", "--axioms")
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, report_schema())
    C = io.parse_code_file(FIXTURES / "ex2.json")
    assert doc["d"] == min_distance(C)
    assert doc["weights"]["anticode"] == list(gen_weights_anticode(C).a)
    assert doc["tables"]["row"] == io.table_to_json(build_qpm(C, "row"))


@pytest.mark.parametrize("name", ["exnot.json", "tall_3x2.json", "gab_4_2.json"])
def test_report_schema_other_fixtures(name):
    code, out, _ = run("--json", "report", FIXTURES / name, "--axioms")
    assert code == 0
    jsonschema.validate(json.loads(out), report_schema())


def test_report_deterministic():
    a = run("--json", "report", FIXTURES / "exnot.json", "--tables")
    b = run("--json", "--threads", "2", "report", FIXTURES / "exnot.json", "--tables")
    assert a == b


def test_weights_both():
    code, out, _ = run("weights", FIXTURES / "ex2.json", "--method", "both")
    assert code == 0 and "methods agree: true" in out


def test_equiv_witness():
    code, out, _ = run("equiv", FIXTURES / "exnot.json", FIXTURES / "exnot_t.json")
    assert code == 0 and "A = [0 1; 1 0]" in out
    code, out, _ = run("--json", "--threads", "2", "equiv", FIXTURES / "exnot.json", FIXTURES / "exnot_t.json")
    assert json.loads(out)["witness"]["transposed"] is True


def test_qpm_check_corrupted():
    code, out, _ = run("qpm-check", FIXTURES / "corrupted.table.json")
    assert code == 0 and "P1 violated" in out and "A = <(0,1)>" in out
    code, out, _ = run("qpm-check", FIXTURES / "nonmonotone.table.json")
    assert "P2 violated" in out and "B = <(1,0), (0,1)>" in out


def test_qpm_dump_dual_and_pm_equiv(tmp_path):
    t = tmp_path / "t.json"
    assert run("qpm", FIXTURES / "exnot.json", "--side", "col", "--dump", t)[0] == 0
    d = tmp_path / "d.json"
    assert run("qpm-dual", t, "-o", d)[0] == 0
    C = io.parse_code_file(FIXTURES / "exnot.json")
    assert io.read_table(d) == build_qpm(dual(C))
    code, out, _ = run("pm-equiv", t, t)
    assert code == 0 and "phi = [0 1; 1 0]" in out  # swap is the first automorphism in search order
    assert run("qpm-dual", FIXTURES / "corrupted.table.json", "-o", d)[0] == 1


def test_dual_command(tmp_path):
    out = tmp_path / "d.json"
    assert run("dual", FIXTURES / "ex2.json", "-o", out)[0] == 0
    assert io.parse_code_file(out) == dual(io.parse_code_file(FIXTURES / "ex2.json"))


def test_gabidulin_expand_covering(tmp_path):
    g, x = tmp_path / "g.json", tmp_path / "x.json"
    assert run("gabidulin", "--q", "2,1", "--n", "4", "--k", "1", "-o", g)[0] == 0
    assert run("expand", g, "--basis", "poly", "-o", x)[0] == 0
    C = io.parse_code_file(x)
    assert C.dim == 4 and min_distance(C) == 4
    code, out, _ = run("covering-radius", x)
    assert code == 0 and "covering radius: 3" in out
    assert run("expand", g, "--basis", "dual:1,2,4,8", "-o", x)[0] == 0
    assert run("expand", g, "--basis", "1,1,4,8", "-o", x)[0] == 1


def test_exit_codes():
    assert run("bogus")[0] == 1
    assert run("report", FIXTURES / "missing.json")[0] == 1
    assert run("report", FIXTURES / "out_of_range.json")[0] == 1
    code, _, err = run("--guard", "10", "equiv", FIXTURES / "ex2.json", FIXTURES / "ex2.json")
    assert code == 2 and "56448" in err
    code, _, err = run("equiv", FIXTURES / "ex2.json", FIXTURES / "ex2.json", "--guard", "5")
    assert code == 2
    assert run("--force", "equiv", FIXTURES / "exnot.json", FIXTURES / "exnot_t.json")[0] == 0


def test_run_report_library_call():
    rep = run_report(io.parse_code_file(FIXTURES / "exnot.json"), duality=True)
    assert rep["duality"] == {"column": "verified", "row": "verified"}
    assert rep["weights"]["cs"] == [1, 2]
    with pytest.raises(ValueError, match="minimum distance undefined"):
        run_report(zero_code(field_create(2), 2, 2))
