import json

import pytest

from latcoh.cli import main
from tests.data import SPEC_JSON, SPEC_NOT_INVERTIBLE_JSON


def _json(capsys):
    return json.loads(capsys.readouterr().out)


def test_collapse_exit_codes():
    assert main(["collapse", "--builtin", "paper3"]) == 0
    assert main(["collapse", "--builtin", "paper6"]) == 1


def test_alpha1_json_uses_built_in_witness(capsys):
    assert main(["alpha1", "--builtin", "paper3", "--json"]) == 0
    report = _json(capsys)
    assert report["command"] == "alpha1"
    assert report["label"] == "paper3"
    assert report["obstruction_nonzero"] is True
    assert report["witness_pairing"] == 2


def test_rank_one_lattice_has_zero_alpha(capsys):
    assert main(["alpha1", "--builtin", "sign", "--json"]) == 0
    report = _json(capsys)
    assert report["obstruction_nonzero"] is False
    assert report["pairing_values"] == []
    assert report["delta"] == []
    assert main(["collapse", "--builtin", "sign"]) == 0
    assert main(["collapse", "--builtin", "cyclotomic:2:1"]) == 0


def test_alpha1_explicit_witness(capsys):
    witness = "1,1,2,0,0,-1,0,1,1"
    code = main(["alpha1", "--builtin", "paper3", "--witness", witness])
    assert code == 0
    assert "pairing with given witness: 2" in capsys.readouterr().out


def test_alpha1_malformed_witness(capsys):
    code = main(["alpha1", "--builtin", "paper3", "--witness", "1,x"])
    assert code == 2
    assert "UsageError" in capsys.readouterr().err


def test_input_file(tmp_path, capsys):
    path = tmp_path / "lattice.json"
    path.write_text(SPEC_JSON, encoding="utf-8")
    assert main(["d2", "--input", str(path), "--json"]) == 0
    report = _json(capsys)
    assert report["label"] == "from-json"
    assert report["all_zero"] is True
    assert len(report["digest"]) == 64


def test_input_not_invertible(tmp_path, capsys):
    path = tmp_path / "singular.json"
    path.write_text(SPEC_NOT_INVERTIBLE_JSON, encoding="utf-8")
    assert main(["tate", "--input", str(path), "--json"]) == 2
    report = _json(capsys)
    assert report["status"] == 2
    assert report["error"]["code"] == "InvalidActionError"


def test_unknown_builtin():
    assert main(["tate", "--builtin", "klein"]) == 2


def test_missing_input_file(tmp_path):
    assert main(["e2", "--input", str(tmp_path / "absent.json")]) == 2


def test_euler_precondition():
    assert main(["euler", "--builtin", "paper3", "--k", "1"]) == 2


def test_euler_and_prime(capsys):
    assert main(["euler", "--builtin", "sign", "--json"]) == 0
    assert _json(capsys)["lhs"] == "4"
    assert main(["prime", "--builtin", "cyclotomic:5:1", "--json"]) == 0
    assert _json(capsys)["ratio"] == "3125"


def test_prime_precondition():
    assert main(["prime", "--builtin", "paper3"]) == 2


def test_text_output(capsys):
    assert main(["e3", "--builtin", "gauss", "--imax", "3"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("e3 [gauss]")
    assert "changed from E2: none" in out


def test_missing_lattice_source():
    with pytest.raises(SystemExit) as exc:
        main(["d2"])
    assert exc.value.code == 2


def test_both_lattice_sources():
    with pytest.raises(SystemExit) as exc:
        main(["d2", "--builtin", "sign", "--input", "x.json"])
    assert exc.value.code == 2


def test_unknown_command():
    with pytest.raises(SystemExit) as exc:
        main(["h3"])
    assert exc.value.code == 2


def test_word_cap_too_small(capsys):
    code = main(["collapse", "--builtin", "paper3", "--word-cap", "1"])
    assert code == 2
    assert "ResourceLimitError" in capsys.readouterr().err


def test_verify_unknown_corruption():
    assert main(["verify-paper", "--quick", "--corrupt", "klein"]) == 2
