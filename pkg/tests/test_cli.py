import json

import pytest

from barlog.cli import Config, load_config, parse_term, run
from barlog.hyperlog import ONE, PARAM, HyperlogTerm


def capture(capsys, argv):
    code = run(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_basis_json(capsys):
    code, out, _ = capture(capsys, ["basis", "--degree", "2"])
    assert code == 0
    data = json.loads(out)
    assert data["dimension"] == 19
    assert len(data["elements"]) == 19


def test_basis_b0(capsys):
    code, out, _ = capture(capsys, ["basis", "--degree", "2", "--b0"])
    assert json.loads(out)["dimension"] == 10
    assert code == 0


def test_determinism(capsys):
    _, out1, _ = capture(capsys, ["relations", "--degree", "2"])
    _, out2, _ = capture(capsys, ["relations", "--degree", "2"])
    assert out1 == out2


def test_relations_verified(capsys):
    code, out, _ = capture(capsys, [
        "relations", "--degree", "2", "--verify",
        "--z1", "0.3", "--z2", "0.4", "--terms", "2000"])
    assert code == 0
    data = json.loads(out)
    assert data["count"] == 10
    assert all(r["verified"] for r in data["relations"])


def test_harmonic(capsys):
    code, out, _ = capture(capsys, ["harmonic", "--left", "2",
                                    "--right", "3"])
    assert code == 0
    data = json.loads(out)
    assert len(data["terms"]) == 3
    assert data["recursion_matches"] is True


def test_eval(capsys):
    code, out, _ = capture(capsys, [
        "eval", "--term", "L[2,1|one,param]@z1",
        "--z1", "0.3", "--z2", "0.4", "--terms", "2000"])
    assert code == 0
    data = json.loads(out)
    assert abs(data["value"][0] - 0.010756440930465) < 1e-10


def test_decompose(capsys):
    code, out, _ = capture(capsys, ["decompose", "--degree", "2",
                                    "--direction", "1x2"])
    assert code == 0
    data = json.loads(out)
    assert len(data["pairs"]) == 10


def test_verify_command(capsys):
    code, out, _ = capture(capsys, [
        "verify", "--degree", "1", "--terms", "1000"])
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_usage_errors(capsys):
    code, _, err = capture(capsys, ["nosuchcommand"])
    assert code == 2
    code, _, err = capture(capsys, ["eval", "--term", "garbage",
                                    "--z1", "0", "--z2", "0"])
    assert code == 2
    assert "malformed term" in err
    code, _, err = capture(capsys, ["basis", "--degree", "9"])
    assert code == 2  # over the default degree cap


def test_out_file(tmp_path, capsys):
    target = tmp_path / "basis.json"
    code, out, _ = capture(capsys, ["basis", "--degree", "1",
                                    "--out", str(target)])
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["dimension"] == 5


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "cfg"
    cfg.write_text("format = text\nseries_terms = 500  # small\n")
    assert load_config(str(cfg)) == {"format": "text", "series_terms": 500}
    code, out, _ = capture(capsys, ["basis", "--degree", "1",
                                    "--config", str(cfg)])
    assert code == 0
    assert out.startswith("degree: 1")
    # flags override the file
    code, out, _ = capture(capsys, ["basis", "--degree", "1",
                                    "--config", str(cfg),
                                    "--format", "json"])
    assert json.loads(out)["dimension"] == 5


def test_config_validation():
    with pytest.raises(ValueError):
        Config(radius=1.5).validate()
    with pytest.raises(ValueError):
        Config(tolerance=-1).validate()


def test_parse_term():
    t = parse_term("L[2,1|one,param]@z2")
    assert t == HyperlogTerm(2, (2, 1), (ONE, PARAM))
    with pytest.raises(ValueError):
        parse_term("L[2|bogus]@z1")


def test_jobs_flag(capsys):
    code, out, _ = capture(capsys, [
        "relations", "--degree", "1", "--verify", "--jobs", "2",
        "--terms", "500"])
    assert code == 0
    _, out1, _ = capture(capsys, [
        "relations", "--degree", "1", "--verify", "--jobs", "1",
        "--terms", "500"])
    assert out == out1
