# tests/test_app.py
import json

import pandas as pd
import pytest

from app import main, parse_assignments, parse_m_range, parse_periods
from components.catalog import build
from utils.constants import INVARIANCE_NOT_PERIODIC
from utils.exceptions import CkitError
from utils.lattices import certificate_to_json
from utils.lie_algebra import algebra_to_json
from utils.scalars import PI

KODAIRA_TEXT = "(0,e^{13},-e^{12},-e^{23})"
KODAIRA_J = {"images": {"1": {"4": "1"}, "2": {"3": "1"}}}


@pytest.fixture
def kodaira_files(tmp_path):
    algebra = tmp_path / "kodaira.txt"
    algebra.write_text(KODAIRA_TEXT + "\n")
    structure = tmp_path / "J.json"
    structure.write_text(json.dumps(KODAIRA_J))
    return str(algebra), str(structure)


def test_parse_command(tmp_path, capsys):
    path = tmp_path / "h3.txt"
    path.write_text("(0, 0, -e^{12})")
    assert main(["parse", str(path)]) == 0
    assert capsys.readouterr().out.strip() == "(0,0,-e^{12})"


def test_parse_json_with_parameter(tmp_path, capsys):
    path = tmp_path / "param.txt"
    path.write_text("(a*e^{23},0,0)")
    assert main(["parse", str(path), "--param", "a=1/2", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["dim"] == 3
    assert data["brackets"] == [{"j": 2, "k": 3, "coeffs": {"1": "-1/2"}}]


def test_check_invariant(kodaira_files, capsys):
    algebra, structure = kodaira_files
    assert main(["check", algebra, "--j", structure, "--period", "e1=2pi", "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["stages"]["complex"]["structures"]["J"]["psi"]["e1"] == "-2"
    assert report["stages"]["invariance"]["structures"]["J"]["periods"][0]["status"] == "Invariant"


def test_check_torsion_is_negative(kodaira_files, capsys):
    algebra, structure = kodaira_files
    assert main(["check", algebra, "--j", structure, "--period", "pi"]) == 1
    assert "TorsionOrder" in capsys.readouterr().out


def test_check_saves_report(kodaira_files, tmp_path):
    algebra, structure = kodaira_files
    out = tmp_path / "reports" / "kodaira.json"
    assert main(["--quiet", "check", algebra, "--j", structure, "--out", str(out)]) == 0
    assert json.loads(out.read_text())["schema"] == "ckit/1"


@pytest.fixture
def inoue_files(tmp_path):
    algebra = tmp_path / "inoue.json"
    algebra.write_text(json.dumps(algebra_to_json(build("inoue_s0").L)))
    structure = tmp_path / "J.json"
    structure.write_text(json.dumps({"images": {"1": {"2": "1"}, "3": {"4": "1"}}}))
    return str(algebra), str(structure)


def test_check_obstructed_with_bare_period(inoue_files, capsys):
    algebra, structure = inoue_files
    assert main(["check", algebra, "--j", structure, "--period", "2pi", "--json"]) == 1
    report = json.loads(capsys.readouterr().out)
    row = report["stages"]["invariance"]["structures"]["J"]["periods"][0]
    assert row["status"] == INVARIANCE_NOT_PERIODIC
    assert row["coordinate"] == "e0"


def test_check_period_on_wrong_coordinate(kodaira_files, capsys):
    algebra, structure = kodaira_files
    assert main(["check", algebra, "--j", structure, "--period", "e3=2pi", "--json"]) == 2
    row = json.loads(capsys.readouterr().out)["stages"]["invariance"]["structures"]["J"]["periods"][0]
    assert row["status"] == "error"


def test_section_command(kodaira_files, capsys):
    algebra, structure = kodaira_files
    assert main(["section", algebra, "--j", structure, "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert list(report["stages"]) == ["structure", "complex", "section", "invariance"]
    assert report["stages"]["section"]["structures"]["J"]["lambda"] == "1"


def test_lattice_verify(tmp_path, capsys):
    path = tmp_path / "g1.json"
    path.write_text(json.dumps(certificate_to_json(build("g1").certificates[0])))
    assert main(["lattice-verify", str(path)]) == 0
    assert json.loads(capsys.readouterr().out)["certificate"]["passed"]


@pytest.mark.parametrize(
    "args",
    [
        ["parse", "missing.txt"],
        ["check", "missing.txt"],
        ["catalog", "show", "no_such_entry"],
        ["catalog", "run", "g1", "--param", "m=2"],
    ],
)
def test_errors_exit_two(args):
    assert main(args) == 2


def test_malformed_algebra(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("(e^{15}")
    assert main(["check", str(path)]) == 2
    assert "error:" in capsys.readouterr().err


def test_catalog_list(capsys):
    assert main(["catalog", "list"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0].startswith("kodaira")
    assert "hypercomplex_ghat" in out


def test_catalog_show(capsys):
    assert main(["catalog", "show", "g1", "--param", "m=5"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["params"] == {"m": "5"}


def test_catalog_run_csv(tmp_path, capsys):
    csv = tmp_path / "summary.csv"
    assert main(["catalog", "run", "g1", "--m", "3..4", "--csv", str(csv)]) == 0
    out = capsys.readouterr().out
    assert out.count("matched") == 2
    df = pd.read_csv(csv)
    assert set(df["params"]) == {"m=3", "m=4"}
    assert df["matched"].all()


def test_sweep_command(capsys):
    assert main(["sweep", "--samples", "6", "--no-catalog"]) == 0
    assert capsys.readouterr().out.startswith("6 samples, 0 disagreements")


def test_argument_helpers():
    assert parse_assignments(["a=1/2", "b = pi"]) == {"a": "1/2", "b": "pi"}
    assert parse_m_range("3..5") == [3, 4, 5]
    assert parse_m_range("3,7") == [3, 7]
    assert parse_periods(["e8=pi"]) == {"J": (("e8", PI),)}
    assert parse_periods(["2pi"]) == {"J": ((None, 2 * PI),)}
    assert parse_periods([]) == {}
    with pytest.raises(CkitError):
        parse_assignments(["novalue"])
    with pytest.raises(CkitError):
        parse_m_range("a..b")
