import json

import pytest
from click.testing import CliRunner

from mck.cli import main


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args):
        return runner.invoke(main, list(args))

    return invoke


def test_catalan_table(run):
    out = run("table", "catalan", "--size", "4", "--width", "5")
    assert out.exit_code == 0
    assert out.output.splitlines() == [
        "1  1  2  5  14",
        "1  2  5  14  42",
        "1  3  9  28  90",
        "1  4  14  48  165",
    ]


def test_pascal_table_csv(run):
    out = run("table", "pascal", "--size", "2", "--width", "5", "--format", "csv")
    assert out.output.splitlines() == ["1,2,6,20,70", "1,3,10,35,126"]


def test_kostka_table_json(run):
    out = run("table", "kostka-c", "--size", "2", "--width", "4", "--format", "json")
    doc = json.loads(out.output)
    values = [e["value"] for e in doc["entries"] if e["row"] == 0]
    assert values == ["1", "t^2", "t^4 + t^8", "t^6 + t^10 + t^12 + t^14 + t^18"]
    assert doc["orientation"] == "upper-even"


def test_kostka_table_has_no_csv(run):
    out = run("table", "kostka-d", "--size", "2", "--format", "csv")
    assert out.exit_code != 0


def test_matrix_pretty_and_json(run):
    out = run("matrix", "C", "--size", "3", "--spec", "schur-c")
    assert "[0,2] 1" in out.output.splitlines()
    doc = json.loads(run("matrix", "B", "--size", "3", "--format", "json").output)
    assert doc["kind"] == "B" and doc["orientation"] == "lower-even"


def test_matrix_rejects_bad_spec(run):
    assert run("matrix", "C", "--spec", "bogus").exit_code == 2


def test_size_bound(run):
    assert run("matrix", "C", "--size", "99").exit_code == 2


def test_poly_via_C(run):
    out = run("poly", "--route", "via-C", "--spec", "schur-c", "--n", "3", "--r", "2")
    assert out.output.strip() == "1 * m[1,1] + 2 * m[]"


def test_poly_oracle_needs_params(run):
    assert run("poly", "--route", "oracle", "--n", "1", "--r", "1").exit_code != 0
    out = run("poly", "--route", "oracle", "--n", "1", "--r", "1", "--params", "1/2,1/3,2/5,3/7,5/11,7/13")
    assert out.output.strip() == "1 * m[1] + -145/102 * m[]"


def test_poly_json_terms(run):
    out = run("poly", "--route", "schur", "--family", "D", "--n", "2", "--r", "2", "--format", "json")
    doc = json.loads(out.output)
    assert {t["partition"] for t in doc["terms"]} == {"[1,1]", "[]"}


def test_poly_bad_params(run):
    assert run("poly", "--route", "fourfold", "--n", "1", "--r", "1", "--params", "1,2").exit_code == 2


def test_verify_inverse(run):
    out = run("verify", "inverse", "--size", "12")
    assert out.exit_code == 0
    assert "0 failed" in out.output


def test_verify_oracle_is_deterministic(run):
    first = run("verify", "oracle", "--n", "2", "--trials", "5", "--seed", "7")
    second = run("verify", "oracle", "--n", "2", "--trials", "5", "--seed", "7")
    assert first.exit_code == 0
    assert first.output == second.output


def test_verify_json(run):
    doc = json.loads(run("verify", "kostka", "--size", "6", "--format", "json").output)
    assert doc and all(item["verdict"] == "PASS" for item in doc)


def test_verify_conjecture_header_and_warning():
    out = CliRunner().invoke(main, ["verify", "conjecture", "--trials", "1", "--window", "-1", "--order", "1"])
    assert out.exit_code == 0
    assert out.output.startswith("# type C_n operator")
    assert "INCONCLUSIVE" in out.output
    assert "warning: inconclusive" in out.stderr
