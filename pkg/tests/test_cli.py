"""Command-line interface: exit codes, report contents, determinism."""
from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

import planecommittee.cli as cli
from planecommittee.cli import cli_main
from planecommittee.io import render_instance
from planecommittee.generators import gen_random


@pytest.fixture(scope="module")
def t1_file(tmp_path_factory, t1):
    path = tmp_path_factory.mktemp("cli") / "t1.json"
    path.write_text(render_instance(t1))
    return str(path)


@pytest.fixture(scope="module")
def p5_file(tmp_path_factory, p5):
    path = tmp_path_factory.mktemp("cli") / "p5.json"
    path.write_text(render_instance(p5))
    return str(path)


def run(capsys, *argv) -> tuple[int, str, str]:
    code = cli_main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# --- solve ---------------------------------------------------------------------

def test_solve_consistent(capsys, tmp_path):
    path = tmp_path / "cons.txt"
    path.write_text("1 0 > 0\n0 1 > 0\n")
    code, out, _ = run(capsys, "solve", "--input", str(path))
    assert code == 0
    doc = json.loads(out)
    assert doc["command"] == "solve"
    x, y = doc["extra"]["solution"]
    from fractions import Fraction
    assert Fraction(x) > 0 and Fraction(y) > 0


def test_solve_inconsistent_is_negative(capsys, t1_file):
    code, out, err = run(capsys, "solve", "--input", t1_file)
    assert code == 1
    assert out == ""
    assert err.startswith("error:")


# --- mcs -----------------------------------------------------------------------

def test_mcs_all_lists_every_marked_subsystem(capsys, t1_file):
    code, out, _ = run(capsys, "mcs", "all", "--input", t1_file)
    assert code == 0
    doc = json.loads(out)
    got = sorted(tuple(e["members"]) for e in doc["marked_mcs"])
    assert got == [(1, 2), (1, 3), (2, 3)]
    assert doc["extra"]["count"] == 3
    for entry in doc["marked_mcs"]:
        assert len(entry["determining_pair"]) == 2
        assert "solution" in entry


def test_mcs_marked_start_flag(capsys, t1_file):
    code, out, _ = run(capsys, "mcs", "marked", "--input", t1_file,
                       "--start", "2")
    assert code == 0
    doc = json.loads(out)
    assert 2 in doc["marked_mcs"][0]["members"]
    assert doc["extra"]["start"] == 2


def test_mcs_marked_bad_start(capsys, t1_file):
    code, _, err = run(capsys, "mcs", "marked", "--input", t1_file,
                       "--start", "7")
    assert code == 2
    assert "start" in err


def test_mcs_extend_from_seed(capsys, t1_file):
    code, out, _ = run(capsys, "mcs", "extend", "--input", t1_file,
                       "--subsystem", "2")
    assert code == 0
    doc = json.loads(out)
    members = doc["extra"]["mcs"]
    assert 2 in members and len(members) == 2
    assert doc["extra"]["subsystem"] == [2]


def test_mcs_extend_bad_seed(capsys, t1_file):
    code, _, _ = run(capsys, "mcs", "extend", "--input", t1_file,
                     "--subsystem", "1,9")
    assert code == 2
    code, _, _ = run(capsys, "mcs", "extend", "--input", t1_file,
                     "--subsystem", "1,x")
    assert code == 2


# --- committee -------------------------------------------------------------------

def test_committee_three_positive(capsys, t1_file):
    code, out, _ = run(capsys, "committee", "three", "--input", t1_file,
                       "--oracle-check")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["committee"]) == 3
    assert doc["votes"] == [2, 2, 2]
    assert doc["oracle"]["matches"] is True
    assert doc["oracle"]["min_committee_size"] == 3


def test_committee_three_negative_names_witness(capsys, p5_file):
    code, out, err = run(capsys, "committee", "three", "--input", p5_file)
    assert code == 1
    assert out == ""
    assert "no three-member committee exists" in err
    assert "consistent four-inequality subsystem" in err


def test_committee_build_verifies(capsys, tmp_path):
    sys_ = gen_random(5, "with-committee", seed=11)
    path = tmp_path / "wc.json"
    path.write_text(render_instance(sys_))
    code, out, _ = run(capsys, "committee", "build", "--input", str(path))
    assert code == 0
    doc = json.loads(out)
    total = len(doc["committee"])
    assert total % 2 == 1
    assert all(2 * v > total for v in doc["votes"])


def test_committee_polygon_reports_size_identity(capsys, tmp_path):
    sys_ = gen_random(6, "polygon", seed=5)
    path = tmp_path / "poly.json"
    path.write_text(render_instance(sys_))
    code, out, _ = run(capsys, "committee", "polygon", "--input", str(path))
    assert code == 0
    doc = json.loads(out)
    extra = doc["extra"]
    assert len(doc["committee"]) == (
        extra["qualified_pairs"] - extra["direction_subsystems"]
    )
    assert len(extra["polygon_vertices"]) >= 3
    assert len(extra["augmented"]["inequalities"]) >= 6


def test_committee_verify_runs_in_separate_process(t1_file, tmp_path):
    report = tmp_path / "report.json"
    build = subprocess.run(
        [sys.executable, "-m", "planecommittee.cli", "committee", "three",
         "--input", t1_file, "--out", str(report)],
        capture_output=True, text=True,
    )
    assert build.returncode == 0, build.stderr
    verify = subprocess.run(
        [sys.executable, "-m", "planecommittee.cli", "committee", "verify",
         "--input", t1_file, "--committee", str(report)],
        capture_output=True, text=True,
    )
    assert verify.returncode == 0, verify.stderr
    doc = json.loads(verify.stdout)
    assert doc["extra"]["verified"] is True
    assert doc["votes"] == [2, 2, 2]

    bad = tmp_path / "bad.json"
    bad.write_text('[["0", "0"]]')
    reject = subprocess.run(
        [sys.executable, "-m", "planecommittee.cli", "committee", "verify",
         "--input", t1_file, "--committee", str(bad)],
        capture_output=True, text=True,
    )
    assert reject.returncode == 1
    assert json.loads(reject.stdout)["extra"]["verified"] is False
    assert "does not verify" in reject.stderr


# --- oracle ----------------------------------------------------------------------

def test_oracle_cells_count(capsys, tmp_path):
    sys_ = gen_random(4, "generic", seed=3)
    path = tmp_path / "g4.json"
    path.write_text(render_instance(sys_))
    code, out, _ = run(capsys, "oracle", "cells", "--input", str(path))
    assert code == 0
    doc = json.loads(out)
    assert doc["extra"]["count"] == 1 + 4 + 6
    signs = [c["signs"] for c in doc["extra"]["cells"]]
    assert len(set(signs)) == len(signs)
    assert all(len(s) == 4 and set(s) <= {"+", "-"} for s in signs)


def test_oracle_mcs_matches_marked(capsys, t1_file):
    code, out, _ = run(capsys, "oracle", "mcs", "--input", t1_file)
    assert code == 0
    doc = json.loads(out)
    assert sorted(tuple(s) for s in doc["extra"]["mcs"]) == [
        (1, 2), (1, 3), (2, 3)
    ]


def test_oracle_min_committee(capsys, t1_file):
    code, out, _ = run(capsys, "oracle", "min-committee", "--input", t1_file)
    assert code == 0
    doc = json.loads(out)
    assert doc["extra"]["min_committee_size"] == 3
    assert len(doc["committee"]) == 3


def test_oracle_min_committee_q_max_too_small(capsys, p5_file):
    code, _, err = run(capsys, "oracle", "min-committee", "--input", p5_file,
                       "--q-max", "3")
    assert code == 1
    assert "--q-max" in err


def test_q_max_must_be_odd(capsys, t1_file):
    code, _, err = run(capsys, "oracle", "min-committee", "--input", t1_file,
                       "--q-max", "4")
    assert code == 2
    assert "odd" in err


# --- gen -------------------------------------------------------------------------

def test_gen_is_byte_deterministic(capsys):
    code1, out1, _ = run(capsys, "gen", "qgon", "--q", "5", "--seed", "3")
    code2, out2, _ = run(capsys, "gen", "qgon", "--q", "5", "--seed", "3")
    assert code1 == code2 == 0
    assert out1 == out2
    doc = json.loads(out1)
    assert len(doc["inequalities"]) == 5
    assert doc["metadata"]["seed"] == 3


def test_gen_text_output_reparses(capsys):
    code, out, _ = run(capsys, "gen", "random", "--m", "4",
                       "--profile", "generic", "--format", "text")
    assert code == 0
    from planecommittee.io import parse_instance
    assert parse_instance(out).system == gen_random(4, "generic", seed=0)


def test_gen_example2_metadata(capsys):
    code, out, _ = run(capsys, "gen", "example2", "--q", "5")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["inequalities"]) == 5
    assert doc["metadata"]["generator"] == "example2"


def test_gen_rejects_even_q(capsys):
    code, _, err = run(capsys, "gen", "qgon", "--q", "4")
    assert code == 2
    assert "odd" in err


# --- plot ------------------------------------------------------------------------

def test_plot_lines_only(capsys, t1_file):
    code, out, _ = run(capsys, "plot", "--input", t1_file)
    assert code == 0
    assert out.startswith("<svg ")
    assert out.count("<line ") == 3
    assert "<circle" not in out


def test_plot_with_origin_and_report(capsys, t1_file, tmp_path):
    report = tmp_path / "rep.json"
    assert cli_main(["committee", "three", "--input", t1_file,
                     "--out", str(report)]) == 0
    capsys.readouterr()
    code, out, _ = run(capsys, "plot", "--input", t1_file,
                       "--origin", "0,1/7", "--report", str(report))
    assert code == 0
    assert out.count("<circle ") == 3  # polar points of the violated borders
    assert out.count("#d4a017") == 3  # one star per committee member
    assert out.count('stroke="#cc0000"') == 1  # the red source point


def test_plot_deterministic(capsys, p5_file):
    _, out1, _ = run(capsys, "plot", "--input", p5_file)
    _, out2, _ = run(capsys, "plot", "--input", p5_file)
    assert out1 == out2


# --- plumbing ---------------------------------------------------------------------

def test_missing_input_file(capsys):
    code, _, err = run(capsys, "mcs", "all", "--input", "/nonexistent.json")
    assert code == 2
    assert "cannot read" in err


def test_malformed_instance(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"version": 1, "inequalities": [{"c": [0.5, 1], "b": 1}]}')
    code, _, err = run(capsys, "solve", "--input", str(path))
    assert code == 2
    assert "floating point" in err


def test_unknown_command(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys)[0] == 2


def test_internal_failure_exits_3(capsys, t1_file, monkeypatch):
    def boom(_):
        raise RuntimeError("deliberate")

    monkeypatch.setattr(cli, "solve_consistent", boom)
    code, _, err = run(capsys, "solve", "--input", t1_file)
    assert code == 3
    assert "internal invariant violation" in err
    assert "deliberate" in err


def test_stdin_input(capsys, monkeypatch, t1):
    monkeypatch.setattr(sys, "stdin", io.StringIO(render_instance(t1)))
    code, out, _ = run(capsys, "mcs", "all", "--input", "-")
    assert code == 0
    assert json.loads(out)["extra"]["count"] == 3


def test_out_flag_writes_file(capsys, t1_file, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "mcs", "all", "--input", t1_file,
                       "--out", str(target))
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["extra"]["count"] == 3


def test_timings_flag(capsys, t1_file):
    _, plain1, _ = run(capsys, "mcs", "all", "--input", t1_file)
    _, plain2, _ = run(capsys, "mcs", "all", "--input", t1_file)
    assert plain1 == plain2
    assert "timings" not in json.loads(plain1)
    _, timed, _ = run(capsys, "mcs", "all", "--input", t1_file, "--timings")
    doc = json.loads(timed)
    assert set(doc["timings"]) >= {"parse", "total"}


def test_text_report_format(capsys, t1_file):
    code, out, _ = run(capsys, "committee", "three", "--input", t1_file,
                       "--format", "text")
    assert code == 0
    assert "committee (3 members):" in out
    assert "inequality 1: 2/3" in out


def test_errors_respect_no_color(capsys, t1_file, monkeypatch):
    monkeypatch.setenv("NO_COLOR", "1")
    _, _, err = run(capsys, "solve", "--input", t1_file)
    assert err.startswith("error:")
    assert "\x1b[" not in err
