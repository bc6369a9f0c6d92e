import json
from importlib import resources
from pathlib import Path

from zetaforms.cli import main


def run(argv):
    return main(argv)


def test_forms_command_writes_certificate(tmp_path):
    out = tmp_path / "forms.json"
    code = run(["forms", "--a", "7", "--r", "1", "--n", "2", "--out", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["pass"] is True
    assert doc["schema"] == "zetaforms/forms-certificate@1"
    assert len(doc["forms"]) == 2
    for f in doc["forms"]:
        assert f["denominator_check"]["pass"]
    # deterministic: second run produces identical bytes
    out2 = tmp_path / "forms2.json"
    run(["forms", "--a", "7", "--r", "1", "--n", "2", "--out", str(out2)])
    assert out.read_text() == out2.read_text()
    assert (tmp_path / "forms.json.meta.json").exists()


def test_forms_command_rejects_even_a(capsys):
    assert run(["forms", "--a", "8", "--r", "1", "--n", "1"]) == 2
    err = json.loads(capsys.readouterr().err)
    assert err["error"]["kind"] == "invalid-spec"


def test_forms_command_rejects_6r_gt_a():
    assert run(["forms", "--a", "7", "--r", "2", "--n", "1"]) == 2


def test_asymptotics_command(tmp_path):
    out = tmp_path / "saddle.json"
    code = run(["asymptotics", "--a", "13", "--r", "2", "--out", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["eps_pp_lt_eps"] and doc["eps_a_lt_1"]
    assert "assumption_report" in doc
    assert doc["schema"] == "zetaforms/saddle-certificate@1"


def test_asymptotics_small_a_warns(capsys):
    # a = 5 admits no r with 6r <= a: explained refusal, input-error exit
    code = run(["asymptotics", "--a", "5"])
    assert code == 2
    err = json.loads(capsys.readouterr().err)
    assert "asymptotic" in err["error"]["message"]


def test_rank_bound_small_a_is_numeric_failure():
    assert run(["rank-bound", "--a", "13"]) == 3


def test_rank_bound_1001(tmp_path):
    out = tmp_path / "rank.json"
    code = run(["rank-bound", "--a", "1001", "--out", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["pass"]
    assert doc["tau1"] > 0 and doc["tau2"] > 0 and doc["tau1"] != doc["tau2"]
    assert doc["bound"] == 2 + doc["tau1"] + doc["tau2"]


def test_criterion_rank_fixture(tmp_path):
    src = resources.files("zetaforms.data") / "gutnik_log2_zeta.json"
    out = tmp_path / "report.json"
    code = run(["criterion", "--in", str(src), "--out", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["rank"] == 4 and doc["pass"]


def test_criterion_type2_fixture(tmp_path):
    src = resources.files("zetaforms.data") / "sqrt2_type2.json"
    code = run(["criterion", "--in", str(src)])
    assert code == 0


def test_criterion_oscillation_fixture():
    src = resources.files("zetaforms.data") / "golden_oscillation.json"
    assert run(["criterion", "--in", str(src)]) == 0


def test_criterion_malformed_json(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "rational_rank",\n  broken')
    assert run(["criterion", "--in", str(bad)]) == 2
    err = json.loads(capsys.readouterr().err)
    assert err["error"]["kind"] == "malformed-json"
    assert "line" in err["error"]


def test_criterion_unknown_kind(tmp_path):
    f = tmp_path / "u.json"
    f.write_text(json.dumps({"kind": "mystery"}))
    assert run(["criterion", "--in", str(f)]) == 2


def test_rates_csv(tmp_path):
    out = tmp_path / "rates.csv"
    code = run(["rates", "--a", "13", "--r", "2", "--n-range", "20..22",
                "--format", "csv", "--out", str(out)])
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "n,logSn_over_n,logSppn_over_n,sign,cos_reference"
    assert len(lines) == 4
