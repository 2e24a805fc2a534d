import json

import pytest

from monoidlab.cli import main
from monoidlab.suite import suite_dir


def fn(name):
    return str(suite_dir() / f"{name}.fn")


def test_classify_identity(capsys):
    assert main(["classify", fn("identity")]) == 0
    out = capsys.readouterr().out
    assert "memberships: S L A B E F G_1" in out
    assert "  Const: false" in out and "  M_1: true" in out


def test_classify_with_oracle(capsys):
    assert main(["classify", fn("pad_strip"), "--oracle", "--max-len", "10"]) == 0
    out = capsys.readouterr().out
    assert "  J: true" in out
    assert "oracle: consistent" in out


def test_classify_malformed(tmp_path, capsys):
    bad = tmp_path / "bad.fn"
    bad.write_text("transducer v1\ninitial 0\nstate 0 final\ntrans 0 0 - 0\n")
    assert main(["classify", str(bad)]) == 2
    assert "not total" in capsys.readouterr().err
    assert main(["classify", str(tmp_path / "missing.fn")]) == 2


def test_classify_json_schema(capsys):
    assert main(["classify", "--json", fn("f0")]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["schema"] == "monoidlab-report/1"
    assert data["registry"]["maximal"] == ["A", "G_1", "G_omega", "M_1", "M_omega"]
    entry = data["functions"][0]
    assert entry["memberships"]["G_2"] is True
    assert entry["profile"]["c"] == "1"


def test_maxlen_env(monkeypatch, capsys):
    monkeypatch.setenv("MONOIDLAB_MAXLEN", "7")
    assert main(["classify", "--json", "--oracle", fn("squash")]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["functions"][0]["oracle"]["bound"] == 7
    # the flag wins over the environment
    assert main(["classify", "--json", "--oracle", "--max-len", "6", fn("squash")]) == 0
    assert json.loads(capsys.readouterr().out)["functions"][0]["oracle"]["bound"] == 6


def test_classify_reports_inconsistency(monkeypatch, capsys):
    from monoidlab import cli

    monkeypatch.setattr(cli, "agreement_check", lambda f, b: type("R", (), {
        "ok": False, "failures": ["fiber-counts: forced"], "checks": {}})())
    assert main(["classify", "--oracle", fn("identity")]) == 3
    assert "INCONSISTENT" in capsys.readouterr().out


def test_profile(capsys):
    assert main(["profile", fn("hilbert_shift"), "--max-len", "8"]) == 0
    out = capsys.readouterr().out
    assert "co_range: size 1, first [~]" in out


def test_compose(tmp_path, capsys):
    out = tmp_path / "h.fn"
    assert main(["compose", fn("prepend_1"), fn("drop_odd"), "-o", str(out)]) == 0
    assert main(["classify", str(out)]) == 0
    assert "function: prepend_1∘drop_odd" in capsys.readouterr().out


def test_witness_ji(capsys):
    assert main(["witness", "ji", "--target", fn("identity")]) == 0
    assert "verified" in capsys.readouterr().out


def test_witness_mlambda(capsys):
    code = main(["witness", "mlambda", "--lambda", "1", "--m", fn("hilbert_shift"),
                 "--target", fn("parity_eps_1")])
    assert code == 0
    assert "chain: f = g∘m∘i" in capsys.readouterr().out


def test_witness_precondition(capsys):
    code = main(["witness", "universal", "--u", fn("hilbert_shift"), "--target", fn("identity")])
    assert code == 4
    assert "co-range not fat" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [
    ["witness", "glambda", "--h", fn("squash"), "--lambda", "omega"],
    ["witness", "conj", "--g", fn("g3")],
    ["witness", "escape", "--m-omega", fn("m_omega_double"), "--m-1", fn("hilbert_shift")],
])
def test_other_witnesses(argv, capsys):
    assert main(argv + ["--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["witness"]["verified"] is True


def test_suite_subset(capsys):
    assert main(["suite", "--only", "1", "5"]) == 0
    out = capsys.readouterr().out
    assert "[PASS]  1 registry-count" in out
    assert "2/2 criteria passed" in out
