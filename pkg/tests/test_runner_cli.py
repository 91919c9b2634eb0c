import json
import subprocess
import sys
from fractions import Fraction as F

import jsonschema
import pytest

from tdpsi.cli import main
from tdpsi.matrix import Matrix
from tdpsi.report import VerificationReport, witness_to_json
from tdpsi.runner import (
    CONFIG_SCHEMA,
    EXIT_CONFIG,
    EXIT_FAIL,
    EXIT_OK,
    ConfigError,
    exit_code_for,
    load_config,
    run,
    sample_params,
)

D1 = {"q": "2", "a": "3", "b": "7", "factors": [{"d": 1, "mu": "5", "xi": "1"}], "suites": ["all"]}


def write(tmp_path, doc, name="run.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


def test_verify_d1_all(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert main(["verify", "--config", write(tmp_path, D1), "--output", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["status"] == "pass"
    assert rep["summary"]["fail"] == 0 and rep["summary"]["pass"] == len(rep["checks"])
    suites = {c["suite"] for c in rep["checks"]}
    assert suites == {"relations", "equitable", "loperator", "tdpair", "psi", "proof"}
    assert "passed" in capsys.readouterr().out


def test_verify_q1_is_config_error(tmp_path, capsys):
    doc = dict(D1, q="1")
    assert main(["verify", "--config", write(tmp_path, doc)]) == EXIT_CONFIG
    rep = json.loads(capsys.readouterr().out)
    assert rep["status"] == "config_error"
    assert "q: q is a root of unity" in rep["errors"]


def test_verify_tensor_psi_only(tmp_path, capsys):
    doc = dict(D1, factors=[{"d": 1, "mu": "5", "xi": "1"}, {"d": 1, "mu": "11", "xi": "1"}], suites=["psi"])
    assert main(["verify", "--config", write(tmp_path, doc)]) == 0
    rep = json.loads(capsys.readouterr().out)
    names = [c["name"] for c in rep["checks"]]
    assert all(n.startswith("psi/") for n in names)
    assert "psi/psi = -a L00^-1 L01" in names


def test_suites_flag_overrides_config(tmp_path, capsys):
    assert main(["verify", "--config", write(tmp_path, D1), "--suites", "relations,equitable"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert {c["suite"] for c in rep["checks"]} == {"relations", "equitable"}


def test_unknown_suite_rejected(tmp_path, capsys):
    assert main(["verify", "--config", write(tmp_path, D1), "--suites", "nonsense"]) == EXIT_CONFIG


def test_float_rational_rejected():
    with pytest.raises(ConfigError):
        load_config(dict(D1, q=2.0))
    with pytest.raises(ConfigError):
        load_config(dict(D1, q="0.5"))


def test_missing_config_file(tmp_path):
    assert main(["verify", "--config", str(tmp_path / "nope.json")]) == EXIT_CONFIG


def test_max_dim_enforced():
    doc = dict(D1, factors=[{"d": 4, "mu": "5"}, {"d": 3, "mu": "11"}])
    with pytest.raises(ConfigError) as exc:
        load_config(doc)
    assert "exceeds max_dim 18" in exc.value.problems[0]
    assert load_config(dict(doc, max_dim=20)).params.dim == 20


def test_degenerate_point_is_skip_with_exit_2():
    # a^2 = mu makes A and A* share an eigenvector on V(1, mu)
    cfg = load_config(dict(D1, factors=[{"d": 1, "mu": "9"}]))
    report, code = run(cfg)
    assert code == EXIT_CONFIG
    skips = [c for c in report if c.status == "skip"]
    assert len(skips) == 1 and "reducibly" in skips[0].witness
    assert report.summary()["fail"] == 0


def test_exit_code_contract():
    r = VerificationReport()
    r.expect("ok", True)
    assert exit_code_for(r) == EXIT_OK
    r.expect("bad", False)
    assert exit_code_for(r) == EXIT_FAIL


def test_show_config_schema(capsys):
    assert main(["show-config-schema"]) == 0
    schema = json.loads(capsys.readouterr().out)
    assert schema == CONFIG_SCHEMA
    jsonschema.Draft202012Validator.check_schema(schema)
    jsonschema.validate(D1, schema)


def test_sweep_deterministic(tmp_path):
    cfg = write(tmp_path, dict(D1, suites=["psi"]))
    o1, o2 = tmp_path / "s1.json", tmp_path / "s2.json"
    assert main(["sweep", "--config", cfg, "--count", "6", "--seed", "3", "--output", str(o1)]) == 0
    assert main(["sweep", "--config", cfg, "--count", "6", "--seed", "3", "--output", str(o2)]) == 0
    assert o1.read_bytes() == o2.read_bytes()
    agg = json.loads(o1.read_text())
    assert [s["index"] for s in agg["samples"]] == list(range(6))
    assert sum(agg["summary"].values()) == 6


def test_sweep_count_zero(tmp_path, capsys):
    assert main(["sweep", "--config", write(tmp_path, D1), "--count", "0", "--seed", "1"]) == EXIT_CONFIG
    assert json.loads(capsys.readouterr().out)["status"] == "config_error"


def test_sample_distribution_bounds():
    import random

    rng = random.Random(5)
    for _ in range(50):
        p = sample_params(rng, [1, 2])
        for x in (p.q, p.a, p.b, *(f.mu for f in p.factors), *(f.xi for f in p.factors)):
            assert x != 0 and abs(x.numerator) <= 17 and x.denominator <= 17
        assert [f.d for f in p.factors] == [1, 2]


def test_report_schema_stable():
    cfg = load_config(D1)
    r1, _ = run(cfg)
    r2, _ = run(cfg)
    d1, d2 = r1.to_dict(timing=False), r2.to_dict(timing=False)
    assert d1 == d2
    assert set(d1) == {"config", "checks", "summary", "status"}
    assert all(set(c) == {"name", "suite", "anchor", "status", "witness"} for c in d1["checks"])
    assert all("elapsed" in c for c in r1.to_dict()["checks"])


def test_witness_only_on_failure_and_truncated():
    r = VerificationReport("demo")
    r.expect_zero("small ok", Matrix.zeros(3))
    big = Matrix.from_entries(13, 13, {(12, 12): F(1, 3), (0, 0): 1})
    r.expect_zero("big bad", big)
    d = r.to_dict()
    assert d["checks"][0]["witness"] is None
    w = d["checks"][1]["witness"]
    assert w["truncated"] is True and w["shape"] == [13, 13]
    assert len(w["entries"]) == 12 and all(len(row) == 12 for row in w["entries"])
    assert len(w["sha256"]) == 64
    # the hash covers the entry dropped by truncation
    other = Matrix.from_entries(13, 13, {(12, 12): F(2, 3), (0, 0): 1})
    assert witness_to_json(other)["sha256"] != w["sha256"]
    assert "truncated" not in witness_to_json(Matrix.identity(12))


def test_duplicate_check_names_rejected():
    r = VerificationReport()
    r.expect("x", True)
    with pytest.raises(ValueError):
        r.expect("x", True)


def test_module_entry_point(tmp_path):
    cfg = write(tmp_path, dict(D1, suites=["relations"]))
    proc = subprocess.run([sys.executable, "-m", "tdpsi", "verify", "--config", cfg, "--text"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["status"] == "pass"
    assert "[PASS] relations:" in proc.stderr
