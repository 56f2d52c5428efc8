"""Command-line interface: subcommands, formats, exit codes, determinism."""

import csv
import io
import json
import os
import subprocess
import sys

from click.testing import CliRunner

from arczeta.cli import main


def run(*args, env=None):
    return CliRunner().invoke(main, args, env=env, catch_exceptions=False)


# -- zeta ------------------------------------------------------------------------


def test_zeta_text():
    r = run("zeta", "A(2) (+) Q(1,1)", "--N", "4")
    assert r.exit_code == 0
    assert "germ: A(2) (+) Q(1,1)" in r.output
    assert "d=3" in r.output
    assert "2*u^7 - u^6" in r.output
    assert "2*u^9 - u^8 - u^7" in r.output


def test_zeta_json():
    r = run("zeta", "E8 (+) Q(0,0)", "--N", "5", "--format", "json")
    assert r.exit_code == 0
    data = json.loads(r.output)
    assert data["germ"] == "E8 (+) Q(0,0)"
    rows = {row["n"]: row for row in data["rows"]}
    assert rows[5]["plus"] == "u^8"
    assert rows[5]["minus"] == "u^8"
    assert rows[5]["naive"] == "u^9 - u^8"
    assert rows[4]["naive"] == "0"


def test_zeta_csv():
    r = run("zeta", "A(2) (+) Q(1,1)", "--N", "3", "--format", "csv")
    assert r.exit_code == 0
    rows = list(csv.reader(io.StringIO(r.output)))
    assert rows[0] == ["germ", "d", "n", "channel", "value", "provenance"]
    assert len(rows) == 1 + 2 * 3


def test_zeta_source_and_trace():
    r = run("zeta", "A(2) (+) Q(1,1)", "--N", "4", "--source", "oracle", "--trace")
    assert r.exit_code == 0
    assert "# trace n=2/plus (ok," in r.output
    assert "[leaf]" in r.output or "[split]" in r.output
    # formula-only tables have nothing to trace
    r = run("zeta", "A(2) (+) Q(1,1)", "--N", "3", "--source", "formulas", "--trace")
    assert r.exit_code == 0
    assert "# trace" not in r.output


def test_zeta_parse_error_is_exit_2():
    r = run("zeta", "A(3) (+) Q(1,1)")
    assert r.exit_code == 2
    assert "ambiguous" in r.output
    r = run("zeta", "A(2) + Q(1,1)")
    assert r.exit_code == 2
    assert "position" in r.output


def test_zeta_bad_n():
    r = run("zeta", "A(2) (+) Q(1,1)", "--N", "1")
    assert r.exit_code == 2


def test_zeta_out_file(tmp_path):
    target = tmp_path / "table.json"
    r = run(
        "zeta", "A(2) (+) Q(1,1)", "--N", "3", "--format", "json", "--out", str(target)
    )
    assert r.exit_code == 0
    data = json.loads(target.read_text())
    assert data["N"] == 3


def test_zeta_deterministic():
    a = run("zeta", "D(4,+,-) (+) Q(1,1)", "--N", "6", "--format", "json").output
    b = run("zeta", "D(4,+,-) (+) Q(1,1)", "--N", "6", "--format", "json").output
    assert a == b


def test_zeta_budget_env_marks_unavailable():
    # fresh process: the in-process value cache would otherwise mask the budget
    proc = subprocess.run(
        [sys.executable, "-m", "arczeta.cli", "zeta", "A(2) (+) Q(1,1)", "--N", "4",
         "--source", "oracle"],
        env={**os.environ, "ARCZETA_STRATUM_BUDGET": "1"},
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "<unavailable>" in proc.stdout
    assert "u^5 - u^4" in proc.stdout  # n=2 fits even in a single-stratum budget


# -- distinguish -------------------------------------------------------------------


def test_distinguish_separated_exit_0():
    r = run("distinguish", "A(2) (+) Q(1,1)", "A(3,+) (+) Q(1,1)", "--N", "6")
    assert r.exit_code == 0
    assert "verdict: distinguished at n=3, plus" in r.output
    assert "value1: 2*u^7 - u^6" in r.output
    assert "value2: 2*u^7 - 2*u^6" in r.output


def test_distinguish_equivalent_pair_exit_0():
    r = run("distinguish", "D(4,+,+) (+) Q(0,0)", "D(4,-,-) (+) Q(0,0)", "--N", "6")
    assert r.exit_code == 0
    assert "verdict: indistinguishable <= 6" in r.output
    assert "analytically equivalent: yes" in r.output


def test_distinguish_json():
    r = run(
        "distinguish",
        "A(3,+) (+) Q(1,1)",
        "A(3,-) (+) Q(1,1)",
        "--N",
        "6",
        "--format",
        "json",
    )
    assert r.exit_code == 0
    data = json.loads(r.output)
    assert data["certificate"]["n"] == 4
    assert data["certificate"]["channel"] == "plus"
    assert data["analytic_equiv"] is False


def test_distinguish_dimension_mismatch_exit_2():
    r = run("distinguish", "A(2) (+) Q(1,1)", "A(2) (+) Q(2,1)")
    assert r.exit_code == 2
    assert "ambient dimensions" in r.output


def test_distinguish_csv():
    r = run(
        "distinguish",
        "A(2) (+) Q(1,1)",
        "A(3,+) (+) Q(1,1)",
        "--N",
        "6",
        "--format",
        "csv",
    )
    rows = list(csv.reader(io.StringIO(r.output)))
    assert rows[0] == ["germ1", "germ2", "verdict", "n", "channel", "value1", "value2"]
    assert rows[1][3] == "3"
    assert rows[1][4] == "plus"


# -- table ---------------------------------------------------------------------------


def test_table_d2():
    r = run("table", "--d", "2", "--kmax", "4", "--N", "6")
    assert r.exit_code == 0
    assert "failures: none" in r.output
    assert "classes:" in r.output


def test_table_csv():
    r = run("table", "--d", "2", "--kmax", "4", "--N", "6", "--format", "csv")
    assert r.exit_code == 0
    rows = list(csv.reader(io.StringIO(r.output)))
    assert rows[0] == ["germ1", "germ2", "relation", "n", "channel", "value1", "value2"]
    relations = {row[2] for row in rows[1:]}
    assert relations == {"equivalent", "distinct"}


def test_table_requires_d():
    r = run("table")
    assert r.exit_code == 2
    r = run("table", "--d", "1")
    assert r.exit_code == 2


# -- nonsimple -------------------------------------------------------------------------


def test_nonsimple_j20():
    r = run("nonsimple", "J(2,0) (+) Q(1,1)", "--N", "5")
    assert r.exit_code == 0
    assert "cube-jet cell n=4/plus" in r.output
    assert "[ok]" in r.output
    assert "failures: none" in r.output
    assert "vs E8 (+) Q(1,1): distinguished at n=5, plus" in r.output


def test_nonsimple_rejects_simple_germ():
    r = run("nonsimple", "E7 (+) Q(0,0)")
    assert r.exit_code == 2
    assert "not a J-family instance" in r.output


def test_nonsimple_csv():
    r = run("nonsimple", "J(2,1) (+) Q(0,0)", "--N", "5", "--format", "csv")
    assert r.exit_code == 0
    rows = list(csv.reader(io.StringIO(r.output)))
    assert rows[0] == ["instance", "versus", "verdict"]
    assert all(row[0] == "J(2,1; a0=1, s=1) (+) Q(0,0)" for row in rows[1:])


# -- verify -----------------------------------------------------------------------------


def test_verify_paper_suite_exit_0():
    r = run("verify", "--suite", "paper")
    assert r.exit_code == 0
    assert "[ok] quadric-catalog" in r.output
    assert "[flagged] variant-adjudication" in r.output
    assert "result: PASS" in r.output


def test_verify_json():
    r = run("verify", "--format", "json")
    assert r.exit_code == 0
    data = json.loads(r.output)
    assert data["ok"] is True
    names = [s["name"] for s in data["sections"]]
    assert "variant-adjudication" in names


def test_verify_rejects_unknown_suite():
    r = run("verify", "--suite", "folklore")
    assert r.exit_code == 2


# -- catalog ------------------------------------------------------------------------------


def test_catalog_text():
    r = run("catalog", "--max", "2")
    assert r.exit_code == 0
    assert "beta_Y" in r.output
    assert "2*u - 1" in r.output  # the (1,1) cone


def test_catalog_csv_grid_size():
    r = run("catalog", "--max", "3", "--format", "csv")
    rows = list(csv.reader(io.StringIO(r.output)))
    assert len(rows) == 1 + 4 * 4
    header = rows[0]
    assert header[:2] == ["p", "q"]
    by_sig = {(row[0], row[1]): row for row in rows[1:]}
    assert by_sig[("2", "1")][header.index("beta_Y")] == "u^2"
    assert by_sig[("2", "1")][header.index("fiber_plus")] == "u^2 + u"


def test_catalog_json():
    r = run("catalog", "--max", "1", "--format", "json")
    data = json.loads(r.output)
    assert len(data) == 4
    assert {row["beta_Y"] for row in data} == {"1", "2*u - 1"}


# -- group ----------------------------------------------------------------------------------


def test_help_lists_commands():
    r = run("--help")
    assert r.exit_code == 0
    for cmd in ("zeta", "distinguish", "table", "nonsimple", "verify", "catalog"):
        assert cmd in r.output
