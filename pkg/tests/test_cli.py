import json

import pytest

from jfrac.cli import main


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    monkeypatch.delenv("JFRAC_PRECISION_BITS", raising=False)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_tableau_csv(capsys):
    code, out, _ = run(capsys, "tableau", "--b", "0,0,0,0", "--lambda", "1,1,1,1",
                       "--N", "4", "--format", "csv")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "i,n,value"
    row0 = [ln.split(",")[2] for ln in lines[1:] if ln.startswith("0,")]
    assert row0 == ["1", "0", "1", "0", "2"]


def test_tableau_family(capsys):
    code, out, _ = run(capsys, "tableau", "--family", "hermite", "--N", "2")
    assert code == 0
    assert "H[0][2] = 1/2" in out
    assert "H[1][2] = 0" in out
    assert "H[2][2] = 1" in out


def test_tableau_trivial(capsys):
    code, out, _ = run(capsys, "tableau", "--N", "0")
    assert code == 0
    assert out == "H[0][0] = 1\n"


def test_tableau_json(capsys):
    code, out, _ = run(capsys, "tableau", "--family", "hermite", "--N", "2",
                       "--format", "json")
    records = json.loads(out)
    assert {"i": 0, "n": 2, "value": "1/2"} in records
    assert len(records) == 6


def test_moments_family(capsys):
    code, out, _ = run(capsys, "moments", "--family", "hermite", "--N", "6")
    assert code == 0
    assert out.strip() == "mu: 1,0,1/2,0,3/4,0,15/8"


def test_moments_from_weights(capsys):
    code, out, _ = run(capsys, "moments", "--b", "1,1,1", "--lambda", "1,1,1", "--N", "3")
    assert code == 0
    # Motzkin numbers
    assert out.strip() == "mu: 1,1,2,4"


def test_jfraction_roundtrip(capsys):
    code, out, _ = run(capsys, "jfraction", "--moments", "1,0,1,0,2")
    assert code == 0
    assert out == "b: 0,0\nlambda: 1,1\n"


def test_jfraction_csv(capsys):
    code, out, _ = run(capsys, "jfraction", "--moments", "1,1,2,5,15", "--format", "csv")
    lines = out.strip().split("\n")
    assert lines[0] == "name,index,value"
    assert "b,0,1" in lines
    assert "lambda,1,1" in lines


def test_jfraction_not_regular(capsys):
    code, _, err = run(capsys, "jfraction", "--moments", "1,0,0,0,0")
    assert code == 1
    assert "error:" in err


def test_hankel(capsys):
    code, out, _ = run(capsys, "hankel", "--moments", "1,0,1/2", "--kind", "D", "--n", "1")
    assert code == 0
    assert out.strip() == "1/2"


def test_hankel_needs_enough_moments(capsys):
    code, _, err = run(capsys, "hankel", "--moments", "1,0", "--kind", "D", "--n", "3")
    assert code == 2
    assert "error:" in err


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", "--b", "0,0", "--lambda", "1,1",
                       "--from", "0", "--to", "0", "--steps", "4")
    assert code == 0
    assert out.strip() == "2"


def test_oracle_json(capsys):
    code, out, _ = run(capsys, "oracle", "--b", "1,1,1", "--lambda", "1,1",
                       "--from", "0", "--to", "1", "--steps", "3", "--format", "json")
    doc = json.loads(out)
    assert doc == {"from": 0, "to": 1, "steps": 3, "value": "5"}


def test_catalog(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0
    lines = out.strip().split("\n")
    assert len(lines) == 19
    assert any(line.startswith("hermite()") for line in lines)


def test_catalog_json_sorted(capsys):
    code, out, _ = run(capsys, "catalog", "--format", "json")
    entries = json.loads(out)
    ids = [e["id"] for e in entries]
    assert ids == sorted(ids)
    little = next(e for e in entries if e["id"] == "little_q_jacobi")
    assert little["params"] == ["a", "b", "q"]
    assert little["has_q_tilde"] is True


def test_verify_single(capsys):
    code, out, _ = run(capsys, "verify", "conf_hyp_1f1")
    assert code == 0
    assert out.startswith("PASS conf_hyp_1f1 [numeric] rel_error=")


def test_verify_exact_line(capsys):
    code, out, _ = run(capsys, "verify", "hermite_moments")
    assert code == 0
    assert out.startswith("PASS hermite_moments [exact] checked=")
    assert "max_dev=0" in out


def test_verify_unmatched_pattern_is_empty(capsys):
    code, out, _ = run(capsys, "verify", "nonexistent*", "--format", "json")
    assert code == 0
    assert json.loads(out) == []


def test_verify_strict_unmatched(capsys):
    code, _, err = run(capsys, "verify", "nonexistent", "--strict")
    assert code == 2
    assert "matched nothing" in err


def test_verify_all_deterministic(capsys):
    code1, out1, _ = run(capsys, "verify", "--all", "--format", "json")
    code2, out2, _ = run(capsys, "verify", "--all", "--format", "json")
    assert code1 == code2 == 0
    assert out1 == out2
    records = json.loads(out1)
    assert len(records) == 27
    assert all(rec["pass"] for rec in records)


def test_verify_csv(capsys):
    code, out, _ = run(capsys, "verify", "big_qj", "asc_noncomm", "--format", "csv")
    lines = out.strip().split("\n")
    assert lines[0] == "id,mode,n_terms,rel_error,pass"
    assert lines[1].startswith("asc_noncomm,exact,91,,")
    assert lines[1].endswith(",true")
    assert lines[2].startswith("big_qj,numeric,26,")


def test_verify_with_overrides(capsys):
    code, out, _ = run(capsys, "verify", "conf_hyp_1f1", "--params", "alpha=0,beta=0",
                       "--t", "1/10", "--s", "1/10", "--format", "json")
    assert code == 0
    rec = json.loads(out)[0]
    assert rec["pass"] is True
    assert rec["params"] == {"alpha": "0/1", "beta": "0/1"}
    assert rec["t"] == "1/10" and rec["s"] == "1/10"


def test_verify_failure_exit_code(capsys):
    # an unreachable tolerance turns the same passing case into a failure
    code, out, _ = run(capsys, "verify", "conf_hyp_1f1", "--tolerance", "1e-60")
    assert code == 3
    assert out.startswith("FAIL conf_hyp_1f1")


def test_verify_bad_params_syntax(capsys):
    code, _, err = run(capsys, "verify", "conf_hyp_1f1", "--params", "alpha")
    assert code == 2
    assert "error:" in err


def test_unknown_family_exit(capsys):
    code, _, err = run(capsys, "tableau", "--family", "nope", "--N", "2")
    assert code == 2
    assert "error:" in err


def test_report_document(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, out, _ = run(capsys, "report", "bessel_plus", "--out", str(path))
    assert code == 0
    assert out == ""
    doc = json.loads(path.read_text())
    assert doc["suite_version"] == "1.0.0"
    assert doc["config"]["precision_bits"] == 256
    assert [r["id"] for r in doc["reports"]] == ["bessel_plus"]


def test_env_precedence(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv("JFRAC_PRECISION_BITS", "128")
    _, out, _ = run(capsys, "report", "hermite_moments")
    assert json.loads(out)["config"]["precision_bits"] == 128

    cfg = tmp_path / "jfrac.cfg"
    cfg.write_text("# settings\nprecision_bits = 192\n")
    _, out, _ = run(capsys, "report", "hermite_moments", "--config", str(cfg))
    assert json.loads(out)["config"]["precision_bits"] == 192

    _, out, _ = run(capsys, "report", "hermite_moments", "--config", str(cfg),
                    "--precision-bits", "320")
    assert json.loads(out)["config"]["precision_bits"] == 320


def test_config_file_rejects_unknown_key(capsys, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("precison_bits = 128\n")
    code, _, err = run(capsys, "verify", "--all", "--config", str(cfg))
    assert code == 2
    assert "unknown config key" in err


def test_missing_config_file(capsys):
    code, _, err = run(capsys, "verify", "--all", "--config", "/no/such/file")
    assert code == 2
    assert "error:" in err
