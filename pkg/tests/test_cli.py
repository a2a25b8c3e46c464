import json
import subprocess
import sys

import pytest

from flagcoh.cli import main
from flagcoh.scalars import QSqrt2, parse_scalar


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_roots_json(capsys):
    code, out = run_cli(capsys, "roots", "B2")
    assert code == 0
    data = json.loads(out)
    assert data["n_coeffs"] == [1, 2]
    assert data["special_simple_roots"] == [0]
    assert len(data["positive_roots"]) == 4


def test_bott_command(capsys):
    code, out = run_cli(capsys, "bott", "--space", "CP2", "--weight", "0,0")
    assert code == 0
    data = json.loads(out)
    assert data["result"] == {"q": 0, "weight_star": [0, 0]}


def test_bott_vanishing(capsys):
    # delta - alpha0 on CP2 is singular
    code, out = run_cli(capsys, "bott", "--space", "CP2", "--weight", "1,0")
    assert code == 0
    assert json.loads(out)["result"] == "vanishes"


def test_cohomology_table_reproduces_case_II(capsys):
    code, out = run_cli(capsys, "cohomology-table", "--space", "Gr(4,2)")
    assert code == 0
    data = json.loads(out)
    assert data["case"] == "II" and data["k"] == 2
    assert data["published_table_deviations"] == []
    grid = {(e["p"], e["q"]): e["modules"] for e in data["entries"]}
    assert grid[(0, 0)][0]["tag"] == "adjoint"
    assert grid[(2, 1)][0]["mult"] == 2


def test_cohomology_table_flags_deviations(capsys):
    code, out = run_cli(capsys, "cohomology-table", "--space", "Q3")
    data = json.loads(out)
    devs = data["published_table_deviations"]
    assert len(devs) == 1 and (devs[0]["p"], devs[0]["q"]) == (2, 1)


def test_invariants_command(capsys):
    code, out = run_cli(capsys, "invariants", "--space", "Gr(4,2)",
                        "--p", "3", "--q", "2")
    assert code == 0
    data = json.loads(out)
    assert data["isotropy_route"] == data["bott_route"] == 2
    assert data["flag"] is None


def test_forms_command(capsys):
    code, out = run_cli(capsys, "forms", "--space", "Gr(4,2)")
    assert code == 0
    data = json.loads(out)
    assert data["rank_theta2_eta"] == 2
    sols = data["nilpotent_pairs"]["solutions"]
    assert len(sols) == 2 and not data["nilpotent_pairs"]["trivial_only"]


def test_d2_command_with_scalar_literals(capsys):
    code, out = run_cli(capsys, "d2", "--space", "Gr(4,2)", "--a", "0", "--b", "1")
    assert code == 0
    data = json.loads(out)
    assert data["rank"] == 0
    assert data["coboundary_witness"] is not None


def test_e3_command(capsys):
    code, out = run_cli(capsys, "e3", "--space", "Gr(4,2)", "--a", "0", "--b", "1")
    assert code == 0
    data = json.loads(out)
    assert data["H0"] == {"even": 15, "odd": 16}
    assert data["H1"] == {"even": 16, "odd": 15}


def test_pi_grassmannian_command(capsys):
    code, out = run_cli(capsys, "pi-grassmannian", "--n", "3", "--s", "1")
    assert code == 0
    data = json.loads(out)
    assert data["kernel_dim"] == 1
    assert data["homomorphism"]["sigma"] == 1
    assert data["transitivity"]["even"] == 2


def test_markdown_format(capsys):
    code, out = run_cli(capsys, "--format", "markdown",
                        "cohomology-table", "--space", "CP2")
    assert code == 0
    assert out.startswith("#") and "| q \\ p |" in out


def test_csv_format(capsys):
    code, out = run_cli(capsys, "--format", "csv",
                        "cohomology-table", "--space", "CP2")
    assert code == 0
    assert out.splitlines()[0] == "p,q,tag,dim,mult"


def test_unknown_space_fails_with_diagnostic(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["cohomology-table", "--space", "Gr(9,9)"])
    assert exc.value.code == 2


def test_byte_identical_output(capsys):
    _, out1 = run_cli(capsys, "cohomology-table", "--space", "Gr(4,2)")
    _, out2 = run_cli(capsys, "cohomology-table", "--space", "Gr(4,2)")
    assert out1 == out2


def test_verify_all_with_manifest(tmp_path, capsys):
    man = tmp_path / "manifest.txt"
    man.write_text("criteria = 3\n")
    code, out = run_cli(capsys, "verify-all", "--manifest", str(man))
    assert code == 0
    assert "[PASS] 3.k-values" in out


def test_scalar_parsing():
    from fractions import Fraction

    assert parse_scalar("1/2") == QSqrt2(Fraction(1, 2), 0)
    assert parse_scalar("1+2*rt2") == QSqrt2(1, 2)
    assert parse_scalar("-rt2") == QSqrt2(0, -1)
    assert parse_scalar("3/2-1/2*rt2") == QSqrt2(Fraction(3, 2), Fraction(-1, 2))
