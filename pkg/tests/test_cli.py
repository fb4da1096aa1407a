"""The command-line front end: reports, exit codes, file formats."""

import json
import subprocess
import sys
from pathlib import Path

import pytest

from platcube.cli import main, run

REPO = Path(__file__).resolve().parent.parent

TREFOIL = ["--strands", "4", "--word", "s2 s2 s2"]


def invoke(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- report content ---------------------------------------------------


def test_trefoil_report():
    rep = run(strands=4, word="s2 s2 s2")
    assert rep["schema_version"] == 1
    assert rep["vertices"]["count"] == 8
    assert rep["vertices"]["total_dim"] == 30
    assert rep["e1"]["total"] == 30
    assert rep["e2"]["total"] == 6
    assert rep["stabilization"] == 2
    assert rep["e_infinity"] == {"determined": True, "total": 6, "per_weight": {"-3": 2, "-2": 0, "-1": 2, "0": 2}}
    assert rep["determinant"] == {"value": 3, "split": False, "expected_e2": 6, "e2_matches": True}
    assert rep["bounds"]["chain"] == [["E_inf", 6], ["E_2", 6], ["E_1", 30]]
    assert rep["bounds"]["first_page_bound"] == 30
    assert rep["twists"]["sequence"] == [[2, -1], [2, -1], [2, -1]]
    assert rep["twists"]["n_minus"] == 3
    assert rep["input"]["plat"] == {"cups": [[1, 2], [3, 4]], "caps": [[1, 2], [3, 4]]}
    assert rep["vertices"]["circle_counts"]["000"] == 2
    assert rep["vertices"]["weights"]["111"] == 0


def test_unknot_report():
    rep = run(strands=2, word="")
    assert rep["e1"]["total"] == 2
    assert rep["e2"]["total"] == 2
    assert rep["determinant"]["value"] == 1
    assert rep["stabilization"] == 1


def test_aux_unknot_doubles():
    rep = run(strands=4, word="s2 s2 s2", aux_unknot=True)
    assert rep["e2"]["total"] == 12
    assert rep["determinant"]["value"] == 3  # of the base word
    assert rep["determinant"]["expected_e2"] == 12
    assert rep["determinant"]["e2_matches"] is True


def test_mirror_flag():
    rep = run(strands=4, word="s2 s2 s2", use_mirror=True)
    assert rep["e2"]["total"] == 6
    assert rep["twists"]["n_minus"] == 0  # mirrored letters give positive twists


def test_split_word_report():
    rep = run(strands=4, word="")
    assert rep["determinant"] == {
        "value": 0,
        "split": True,
        "expected_e2": None,
        "e2_matches": None,
    }
    assert rep["e2"]["total"] == 4  # two free circles


def test_max_page_truncation():
    rep = run(strands=4, word="s2 s2 s2", max_page=1)
    assert [p["r"] for p in rep["pages"]] == [1]
    assert rep["stabilization"] == 2
    assert rep["e_infinity"]["determined"] is False
    assert rep["e_infinity"]["total"] is None


def test_report_fields_are_documented():
    schema = json.loads((REPO / "report_schema.json").read_text())
    rep = run(strands=4, word="s2 s2")
    assert set(rep) == set(schema["fields"])
    assert set(rep["determinant"]) == set(schema["fields"]["determinant"])
    assert set(rep["input"]) == set(schema["fields"]["input"])


# -- output channels --------------------------------------------------


def test_json_reproducible(capsys):
    code1, out1, err1 = invoke([*TREFOIL, "--json"], capsys)
    code2, out2, err2 = invoke([*TREFOIL, "--json"], capsys)
    assert code1 == code2 == 0
    assert out1 == out2  # byte-for-byte
    rep = json.loads(out1)
    assert rep["e2"]["total"] == 6
    # timing never contaminates the report stream
    assert "elapsed" not in out1 and "elapsed" in err1


def test_text_output(capsys):
    code, out, err = invoke(TREFOIL, capsys)
    assert code == 0
    assert "E_1: total 30" in out
    assert "E_2: total 6" in out
    assert "determinant: 3" in out
    assert "stabilization: E_2" in out


def test_selftest(capsys):
    code, out, err = invoke(["--selftest", "--seed", "1"], capsys)
    assert code == 0
    assert "selftest" in out


# -- exit code 1: input errors ----------------------------------------


@pytest.mark.parametrize(
    "argv",
    [
        ["--strands", "5", "--word", ""],
        ["--strands", "4", "--word", "s9"],
        ["--strands", "4", "--word", "q2"],
        ["--word", "s2 s2"],  # no --strands
        ["--strands", "4", "--word", "s2", "--plat", "1-2/3-4"],
        ["--strands", "4", "--word", "s2", "--plat", "1-2,3-4/1-3,2-4"],
        ["--strands", "4", "--word", "s2", "--higher-maps", "/no/such/file"],
        ["--strands", "4", "--word", "s2 s2", "--max-page", "0"],
    ],
)
def test_input_errors(argv, capsys):
    code, out, err = invoke(argv, capsys)
    assert code == 1
    assert err.startswith("error:")
    assert out == ""


# -- higher-map tables ------------------------------------------------


def write_table(tmp_path, text):
    path = tmp_path / "maps.txt"
    path.write_text(text)
    return str(path)


def test_higher_maps_accepted(tmp_path, capsys):
    # "s2 s2" spreads two weights; a bottom-to-top block always loads
    table = "\n".join(
        ["# one shift-2 block", "2 00 11", "1000"] + ["0000"] * 3
    )
    path = write_table(tmp_path, table)
    code, out, err = invoke(
        ["--strands", "4", "--word", "s2 s2", "--higher-maps", path, "--pages", "--json"],
        capsys,
    )
    assert code == 0
    rep = json.loads(out)
    assert [p["r"] for p in rep["pages"]] == [1, 2, 3]
    assert rep["stabilization"] is not None
    assert rep["e_infinity"]["determined"] is True


def test_higher_maps_d2_failure_dumps_witness(tmp_path, capsys):
    # mid-filtration arrow on a spread-3 word: breaks D^2
    table = "2 000 110\n1000\n0000\n0000\n0000\n"
    path = write_table(tmp_path, table)
    code, out, err = invoke([*TREFOIL, "--higher-maps", path], capsys)
    assert code == 2
    assert "consistency failure" in err
    assert "witness generator:" in err
    assert "witness image generators:" in err
    assert out == ""


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("2 00", "ended early"),
        ("2 000 11", "binary digits"),
        ("x 00 11", "bad shift token"),
        ("3 00 11" + " 0000" * 8, "shifts weight by 2, not 3"),
        ("2 00 11 0000", "ended early"),
        ("2 00 11 00001" + " 0000" * 7, "binary digits"),
        ("1 00 01 0000 0000", ">= 2"),  # parses, then the loader rejects r=1
    ],
)
def test_higher_maps_parse_errors(text, fragment, tmp_path, capsys):
    word = "s2 s2 s2" if "000" in text.split()[1:3] else "s2 s2"
    strands_word = ["--strands", "4", "--word", word]
    path = write_table(tmp_path, text)
    code, out, err = invoke([*strands_word, "--higher-maps", path], capsys)
    assert code == 1
    assert fragment in err


def test_higher_maps_comments_and_spacing(tmp_path, capsys):
    messy = """
    # comment line
    2   00   11   # trailing comment
    0000 0000
      0000
    0000
    """
    path = write_table(tmp_path, messy)
    code, out, err = invoke(["--strands", "4", "--word", "s2 s2", "--higher-maps", path], capsys)
    assert code == 0  # an all-zero block is a no-op


# -- console entry point ----------------------------------------------


def test_console_script_runs():
    proc = subprocess.run(
        ["platcube", *TREFOIL, "--json"],
        capture_output=True,
        text=True,
        timeout=60,
    )
    assert proc.returncode == 0
    rep = json.loads(proc.stdout)
    assert rep["e2"]["total"] == 6
