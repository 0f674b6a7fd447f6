from __future__ import annotations

import json
from importlib import resources

import jsonschema
import pytest

from rmatrix.cli import (
    EXIT_EMPTY,
    EXIT_EXCLUDED,
    EXIT_INPUT,
    EXIT_MISMATCH,
    EXIT_OK,
    build_report,
    main,
    report_from_json,
    report_to_json,
    table_rows,
)
from rmatrix.rootdata import parse_type

SCHEMA = json.loads(resources.files("rmatrix").joinpath("solutions.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_a1_json(capsys):
    code, out, _ = run(capsys, "solve", "--type", "A", "--rank", "1", "--ell", "4", "--format", "json")
    assert code == EXIT_OK
    d = json.loads(out)
    jsonschema.validate(d, SCHEMA)
    assert d["count"] == 2 == len(d["solutions"])
    assert d["starred"] and all(s["starred"] for s in d["solutions"])
    assert [s["dk"] for s in d["solutions"]] == [[2, 2], [2, 1]]


@pytest.mark.parametrize("name,ell", [("A1", 5), ("D6", 8), ("D5", 6), ("E6", 9), ("B2", 7), ("E8", 3)])
def test_json_roundtrip_and_schema(name, ell):
    r = build_report(parse_type(name), ell, verify="f")
    d = report_to_json(r)
    jsonschema.validate(d, SCHEMA)
    assert report_from_json(json.loads(json.dumps(d))) == r
    assert r.count == len(r.solutions)


def test_verification_status_values():
    r = build_report(parse_type("A1"), 4, verify="full")
    assert {s.verification for s in r.solutions} == {"passed"}
    r = build_report(parse_type("E6"), 5, verify="f")
    assert all(s.verification.startswith("skipped") for s in r.solutions)


def test_solve_counts(capsys):
    code, out, _ = run(capsys, "solve", "--type", "D", "--rank", "6", "--ell", "8")
    assert code == EXIT_OK
    assert out.splitlines()[2].strip().startswith("16*")


def test_exit_codes(capsys):
    code, _, err = run(capsys, "solve", "--type", "G", "--rank", "2", "--ell", "6")
    assert code == EXIT_EXCLUDED and "A2" in err
    code, _, _ = run(capsys, "solve", "--type", "A", "--rank", "1", "--ell", "5", "--kernel", "lusztig")
    assert code == EXIT_EMPTY
    code, _, _ = run(capsys, "solve", "--type", "A", "--rank", "1", "--ell", "2")
    assert code == EXIT_INPUT
    code, _, _ = run(capsys, "solve", "--type", "B", "--rank", "1", "--ell", "5")
    assert code == EXIT_INPUT
    code, _, _ = run(capsys, "solve", "--type", "A")
    assert code == EXIT_INPUT


def test_verify_command(capsys):
    code, out, _ = run(capsys, "verify", "--type", "A", "--rank", "1", "--ell", "4", "--full")
    assert code == EXIT_OK
    assert out.count("intertwining=pass") == 2
    code, _, err = run(capsys, "verify", "--type", "B", "--rank", "2", "--ell", "5", "--full")
    assert code == EXIT_INPUT and "check_f_equations" in err
    code, out, _ = run(capsys, "verify", "--type", "B", "--rank", "2", "--ell", "5")
    assert code == EXIT_OK and out.count("f-equations passed") == 2


def test_table_filtering_and_summary(capsys):
    code, out, err = run(capsys, "table", "--ell-set", "3", "--max-rank", "2")
    assert code == EXIT_OK
    assert all("ell=3" in line for line in out.splitlines() if line.startswith(("PASS", "WARN", "FAIL")))
    assert "0 FAIL" in err
    code, out, err = run(capsys, "table", "--types", "E6", "--ell-set", "7")
    assert code == EXIT_MISMATCH
    assert out.startswith("FAIL")


def test_table_is_deterministic_across_jobs():
    strip = lambda rows: [{k: v for k, v in r.items() if k != "seconds"} for r in rows]
    a = table_rows(("A2", "B2", "D4"), (5, 6), jobs=1)
    b = table_rows(("A2", "B2", "D4"), (5, 6), jobs=2)
    assert strip(a) == strip(b)


def test_open_question_rows_show_both_readings(capsys):
    code, out, _ = run(capsys, "table", "--types", "D6", "--ell-set", "5")
    assert code == EXIT_OK
    assert out.startswith("WARN")
    assert "computed:" in out and "table:" in out and "matches the other reading" in out
