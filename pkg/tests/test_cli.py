import json

import pytest

from twoclosure.cli import main, parse_group_document
from twoclosure.errors import PreconditionError


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def write_spec(tmp_path, document):
    path = tmp_path / "group.json"
    path.write_text(json.dumps(document))
    return str(path)


def test_parse_group_document_examples():
    group, echo = parse_group_document(
        json.dumps({"degree": 6, "generators": ["(1,2)(3,4)", "(3,4)(5,6)"]})
    )
    assert group.order == 4 and echo["degree"] == 6

    group, _ = parse_group_document(json.dumps({"degree": 4, "generators": []}))
    assert group.order == 1

    with pytest.raises(PreconditionError, match="generator 1, column 6"):
        parse_group_document(json.dumps({"degree": 4, "generators": ["(1,2,5)"]}))
    with pytest.raises(PreconditionError, match="degree"):
        parse_group_document(json.dumps({"degree": -2, "generators": []}))
    with pytest.raises(PreconditionError, match="JSON"):
        parse_group_document("{nope")


def test_closure_command(tmp_path, capsys):
    path = write_spec(tmp_path, {"degree": 6, "generators": ["(1,2)(3,4)", "(3,4)(5,6)"]})
    code, report = run_cli(capsys, "closure", "-i", path)
    assert code == 0
    results = report["results"]
    assert results["order"] == 4
    assert results["rank"] == 12
    assert results["closure_order"] == 8
    assert results["closed"] is False
    assert results["witness"] is not None


def test_closure_report_is_deterministic(tmp_path, capsys):
    path = write_spec(tmp_path, {"degree": 6, "generators": ["(1,2)(3,4)", "(3,4)(5,6)"]})
    _, first = run_cli(capsys, "closure", "-i", path)
    _, second = run_cli(capsys, "closure", "-i", path)
    del first["timing"], second["timing"]
    assert json.dumps(first, sort_keys=True) == json.dumps(second, sort_keys=True)


def test_round_trip_of_printed_witness(tmp_path, capsys):
    from twoclosure.perm import parse_cycles

    path = write_spec(tmp_path, {"degree": 6, "generators": ["(1,2)(3,4)", "(3,4)(5,6)"]})
    _, report = run_cli(capsys, "closure", "-i", path)
    for text in report["results"]["closure_generators"]:
        assert parse_cycles(text, 6).cycle_string() == text


def test_classify_family(capsys):
    code, report = run_cli(capsys, "classify", "--family", "Q8xC2")
    assert code == 0
    results = report["results"]
    assert results["verdict"] == "NotTwoClosedGroup"
    assert results["justified_by"] == "certificate"
    assert results["certificate"]["construction"] == "center"
    assert results["certificate"]["degree"] == 24
    assert results["certificate"]["valid"] is True

    code, report = run_cli(capsys, "classify", "--family", "Q16xC3")
    assert code == 0
    assert report["results"]["verdict"] == "TwoClosedGroup"
    assert report["results"]["justified_by"] == "classification-theorem"


def test_witness_command(capsys):
    code, report = run_cli(capsys, "witness", "--family", "D8")
    assert code == 0
    assert report["results"]["certificate"]["construction"] == "two-group"

    code, report = run_cli(capsys, "witness", "--family", "Q8")
    assert code == 2
    assert report["error"]["kind"] == "precondition"


def test_verify_command(capsys):
    code, report = run_cli(capsys, "verify", "--suite", "axioms", "--max-degree", "5", "--seed", "7")
    assert code == 0
    assert report["results"]["all_passed"] is True
    assert all(check["passed"] for check in report["results"]["checks"])


def test_exit_codes(tmp_path, capsys):
    code, _ = run_cli(capsys, "nonsense")
    assert code == 1
    code, report = run_cli(capsys, "classify", "--family", "Z99")
    assert code == 2
    path = write_spec(tmp_path, {"degree": 4, "generators": ["(1,2,5)"]})
    code, report = run_cli(capsys, "closure", "-i", path)
    assert code == 2
    assert "column" in report["error"]["message"]
    code, _ = run_cli(capsys, "closure", "-i", str(tmp_path / "missing.json"))
    assert code == 2


def test_catalog_list(capsys):
    code, report = run_cli(capsys, "catalog", "--list")
    assert code == 0
    assert "Q16xC3" in report["results"]["examples"]
