import io
import json

import pytest

from qcurrent.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, run

X0 = '{"terms":[{"coeff":"1","gammaexp":0,"word":[[1,0]]}]}'


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_omega():
    code, out, _ = call("omega", "--kind", "psi", "--color", "1", "--component", "0", "--element", X0)
    assert code == EXIT_OK
    assert json.loads(out) == {"terms": [{"coeff": "1", "gammaexp": 0, "word": []}]}
    code2, out2, _ = call("omega", "--kind", "psi", "--color", "1", "--component", "0", "--element", X0, "--oracle")
    assert out2 == out


def test_negative_values_after_flags():
    code, out, _ = call("omega", "--kind", "phi", "--color", "1", "--component", "-1",
                        "--element", '{"terms":[{"coeff":"1","gammaexp":0,"word":[[1,1]]}]}')
    assert code == EXIT_OK
    assert json.loads(out)["terms"][0]["gammaexp"] == 2


def test_usage_errors():
    assert call("bogus")[0] == EXIT_USAGE
    assert call("omega", "--frob")[0] == EXIT_USAGE
    assert call("gram", "--cartan", "E9", "--words", "[]")[0] == EXIT_USAGE
    assert call("omega", "--kind", "psi", "--color", "1", "--component", "0", "--element", "{nope")[0] == EXIT_USAGE
    assert call("suite", "--window", "3:1")[0] == EXIT_USAGE
    assert call("verma", "--cartan", "A2", "--lambda", "1")[0] == EXIT_USAGE


def test_gram_and_rank(tmp_path):
    words = "[[[1,-1],[1,1]],[[1,0],[1,0]]]"
    code, out, _ = call("gram", "--cartan", "A1", "--words", words, "--format", "csv")
    assert code == EXIT_OK
    assert out == "s^12 - s^4 + 1,s^8 - 1\ns^8 - 1,s^4 + 1\n"
    f = tmp_path / "g.csv"
    f.write_text(out)
    code, out, _ = call("rank", "--matrix", str(f))
    assert json.loads(out)["rank"] == 2
    code, out, _ = call("gram", "--cartan", "A1", "--words", words, "--gamma", "1")
    f = tmp_path / "g.json"
    f.write_text(out)
    assert json.loads(call("rank", "--matrix", str(f))[1])["rank"] == 2
    assert json.loads(call("rank", "--cartan", "A1", "--words", "[[[1,1],[1,0]],[[1,0],[1,1]]]")[1])["rank"] == 1


def test_verify():
    code, out, _ = call("verify", "--cartan", "A1", "--identity", "psi_psi", "--params", "1,1,0,-1",
                        "--window", "-2:2", "--maxlen", "2")
    rep = json.loads(out)
    assert code == EXIT_OK and rep["failures"] == [] and rep["checked"] == 31


def test_straighten():
    code, out, _ = call("straighten", "--cartan", "A1", "--element",
                        '{"terms":[{"coeff":"1","gammaexp":0,"word":[[1,1],[1,0]]}]}', "--check")
    rep = json.loads(out)
    assert code == EXIT_OK and rep["difference_in_ideal"] is True
    assert rep["result"]["terms"] == [{"coeff": "s^-4", "gammaexp": 0, "word": [[1, 0], [1, 1]]}]


def test_verma():
    code, out, _ = call("verma", "--cartan", "A1", "--lambda", "1", "--act", "x+ 1 -3",
                        "--on", '{"terms":[{"coeff":"1","gammaexp":0,"word":[[1,3]]}]}')
    assert code == EXIT_OK
    assert json.loads(out) == {"terms": [{"coeff": "1", "gammaexp": 0, "word": []}]}
    code, out, _ = call("verma", "--cartan", "A2", "--lambda", "0,1", "--witness")
    assert json.loads(out)["witness"]["color"] == 1
    code, out, _ = call("verma", "--cartan", "A2", "--lambda", "1,1", "--witness")
    assert json.loads(out)["witness"] is None
    code, out, _ = call("verma", "--cartan", "A1", "--lambda", "2", "--singular", "--window", "-1:1")
    assert json.loads(out)["singular"] is True


def test_schur():
    assert call("schur", "--k", "0")[1].strip() == "1"
    assert call("schur", "--k", "2")[1].strip() == "(1/2)*x1^2 + x2"
    assert call("schur", "--k", "1")[1].strip() == "x1"
    assert call("schur", "--k", "-1")[0] == EXIT_USAGE


def test_config_and_suite(tmp_path):
    cfg = tmp_path / "c.toml"
    cfg.write_text('[cartan]\ntype = "A"\nrank = 1\n[window]\nkmin = -1\nkmax = 1\n')
    code, out, _ = call("--config", str(cfg), "suite", "--criteria", "1,8", "--maxlen", "2")
    rep = json.loads(out)
    assert code == EXIT_OK and rep["passed"] and rep["failures"] == 0
    assert rep["header"]["types"] == ["A1"] and rep["header"]["window"] == [-1, 1] and rep["header"]["maxlen"] == 2
    # flags override the config file
    code, out2, _ = call("--config", str(cfg), "suite", "--criteria", "8", "--cartan", "A2")
    assert json.loads(out2)["header"]["types"] == ["A2"]
    assert call("suite", "--criteria", "9")[0] == EXIT_USAGE


def test_deterministic_output(tmp_path):
    args = ("suite", "--cartan", "A1", "--window", "-1:1", "--maxlen", "2", "--criteria", "1,2,6")
    first = call(*args)[1]
    assert call(*args)[1] == first


def test_suite_a1_full_grid(tmp_path):
    report = tmp_path / "r.json"
    code, out, _ = call("suite", "--cartan", "A1", "--window", "-2:2", "--maxlen", "3", "--output", str(report))
    rep = json.loads(report.read_text())
    assert code == EXIT_OK and rep["failures"] == 0 and out == report.read_text()


def test_verification_failure_exit_code(monkeypatch):
    import qcurrent.cli as cli
    from qcurrent.kashiwara import IdentityReport

    def broken(cd, identity, params, words):
        return IdentityReport(identity, dict(params), 1, [("w", "1")])

    monkeypatch.setattr(cli, "verify_operator_identity", broken)
    code, out, _ = call("verify", "--cartan", "A1", "--identity", "psi_psi", "--params", "1,1,0,0")
    assert code == EXIT_FAIL


def test_internal_error_exit_code(monkeypatch):
    import qcurrent.cli as cli

    def boom(*a, **k):
        raise RuntimeError("kaboom")

    monkeypatch.setattr(cli, "schur_poly", boom)
    code, _, err = call("schur", "--k", "2")
    assert code == 3 and "kaboom" in err
