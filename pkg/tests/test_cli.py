import json
import shutil
import subprocess

import pytest

from shalika_cs.cli import character_from_input, main, parse_n
from shalika_cs.satake import CharacterTriple


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_identity_symbolic_inert(capsys):
    code, out, _ = run(capsys, "verify-identity", "--case", "inert", "--mode", "symbolic", "--order", "8")
    assert code == 0
    assert json.loads(out) == {"case": "inert", "order": 8, "equal": True}


def test_cs_values_singular_exit1(capsys):
    code, out, err = run(capsys, "cs-values", "--case", "split", "--n", "0..5", "--mode", "numeric",
                         "--input", '{"u": 1, "v": 1, "q": 3}')
    assert code == 1
    assert "Weyl-denominator zero" in err
    assert out == ""


def test_theta_transfer_dihedral(capsys):
    code, out, _ = run(capsys, "theta-transfer", "--input", '{"x2": -1}')
    assert code == 0
    rep = json.loads(out)
    assert rep["case_tag"] == "dihedral-2a"
    # round trip through the input schema
    xi = CharacterTriple.from_json(rep["transfer"])
    assert xi.values[0] == xi.values[1]
    assert CharacterTriple.from_json(rep["source"]).group == "GSp4"


def test_theta_transfer_nondegeneracy_named(capsys):
    code, _, err = run(capsys, "theta-transfer", "--input", '{"group": "GSp4", "values": ["3", "1/3", "1"]}', "--q", "3")
    assert code == 1
    assert "nondegeneracy" in err


def test_malformed_json(capsys):
    code, _, err = run(capsys, "lfactor", "--input", "{nope")
    assert code == 1
    assert "malformed JSON" in err


def test_numeric_mode_requires_numbers(capsys):
    code, _, err = run(capsys, "lfactor", "--mode", "numeric", "--input", '{"x2": -1}', "--q", "3")
    assert code == 1
    assert "numeric" in err


def test_cs_values_tsv(capsys):
    code, out, _ = run(capsys, "cs-values", "--case", "split", "--n", "0,1", "--format", "tsv",
                       "--mode", "numeric", "--input", '{"u": 6, "v": 2, "q": 5}')
    assert code == 0
    assert out.splitlines() == ["n\tvalue", "0\t1", "1\t973/1500"]


def test_lfactor_trivial(capsys):
    code, out, _ = run(capsys, "lfactor", "--order", "3", "--input", '{"u": 1, "v": 1}')
    assert code == 0
    assert json.loads(out)["coefficients"] == ["1", "5", "15", "35"]


def test_verify_identity_numeric_batch_deterministic(capsys):
    args = ("verify-identity", "--case", "split", "--mode", "numeric", "--points", "3", "--seed", "9", "--order", "6")
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    assert len(json.loads(out1)["points"]) == 3


def test_shalika_report(capsys):
    code, out, _ = run(capsys, "shalika-report", "--input", '{"x2": -1}')
    assert code == 0
    rep = json.loads(out)
    assert rep["via"] == "theta-dihedral" and rep["exists"] and rep["unique"]


def test_padic_oracle(capsys):
    code, out, _ = run(capsys, "padic-oracle", "--which", "comp1", "--p", "5", "--z2", "3/2")
    assert code == 0
    assert json.loads(out)["within_tolerance"] is True


def test_output_file(tmp_path, capsys):
    target = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify-identity", "--order", "2", "--output", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["equal"] is True


def test_input_file(tmp_path, capsys):
    src = tmp_path / "chi.json"
    src.write_text(json.dumps({"group": "GSp4", "values": ["4", "1/9", "3/2"], "q": "3"}))
    code, out, _ = run(capsys, "cs-values", "--case", "inert", "--n", "0", "--input", str(src))
    assert code == 0
    assert json.loads(out)["values"]["0"] == "1"


def test_env_order(monkeypatch, capsys):
    monkeypatch.setenv("SHALIKA_CS_ORDER", "3")
    code, out, _ = run(capsys, "verify-identity")
    assert json.loads(out)["order"] == 3


def test_parse_n():
    assert parse_n("0..5") == [0, 1, 2, 3, 4, 5]
    assert parse_n("3") == [3]
    assert parse_n("0,2,4") == [0, 2, 4]
    with pytest.raises(ValueError):
        parse_n("a..b")


def test_partial_inputs_satisfy_constraint():
    for obj in ({"x2": "-1"}, {"x1": "2"}, {"x0": "3"}, {"x1": "4", "x2": "1"}, {"u": "2", "v": "3"}):
        assert character_from_input(obj).has_trivial_central_character()
    with pytest.raises(ValueError):
        character_from_input({"x1": "2", "x2": "1"})


def test_mismatch_exit_2(monkeypatch, capsys):
    import shalika_cs.cli as cli
    from shalika_cs.lfactor import IdentityReport

    monkeypatch.setattr(cli, "verify_identity", lambda *a, **k: IdentityReport("split", 4, False, 2, "1", "2"))
    code, out, _ = run(capsys, "verify-identity", "--order", "4")
    assert code == 2
    assert json.loads(out) == {"case": "split", "order": 4, "equal": False, "first_mismatch": 2, "lhs": "1", "rhs": "2"}


@pytest.mark.skipif(shutil.which("shalika-cs") is None, reason="console script not installed")
def test_console_script_exit_codes():
    ok = subprocess.run(["shalika-cs", "verify-identity", "--order", "2"], capture_output=True, text=True)
    assert ok.returncode == 0
    bad = subprocess.run(["shalika-cs", "nonsense"], capture_output=True, text=True)
    assert bad.returncode == 1
    bad_flag = subprocess.run(["shalika-cs", "lfactor", "--order", "x"], capture_output=True, text=True)
    assert bad_flag.returncode == 1
