"""End-to-end tests of the command-line interface."""

import json

import pytest
import yaml

from src.main import EXIT_AUDIT, EXIT_CONFIG, EXIT_FAILURE, EXIT_OK, Slowgrowth, main, parse_params


@pytest.fixture(scope="module")
def one_step(tmp_path_factory):
    path = tmp_path_factory.mktemp("cli") / "run.json"
    assert main(["construct", "--steps", "1", "--out", str(path)]) == EXIT_OK
    return path


def test_parse_params():
    assert parse_params(["radii=2,4", "kmax = 3"]) == {"radii": "2,4", "kmax": "3"}
    assert parse_params(None) == {}
    with pytest.raises(ValueError):
        parse_params(["radii"])


def test_construct_writes_transcript(one_step):
    data = json.loads(one_step.read_text(encoding="utf-8"))
    assert data["header"]["steps"] == 1
    assert len(data["records"]) == 1


def test_construct_is_byte_identical(one_step, tmp_path):
    again = tmp_path / "again.json"
    assert main(["construct", "--steps", "1", "--out", str(again)]) == EXIT_OK
    assert again.read_bytes() == one_step.read_bytes()


def test_verify_prints_report(one_step, capsys):
    assert main(["verify", str(one_step)]) == EXIT_OK
    out = capsys.readouterr().out.strip().splitlines()[-1]
    report = json.loads(out)
    assert report["steps"] == 1
    assert report["final_radius"] == "2050/1"


def test_report_to_stdout(one_step, capsys):
    code = main(["report", str(one_step), "--analysis", "growth", "--params", "radii=1,10"])
    assert code == EXIT_OK
    captured = capsys.readouterr()
    lines = captured.out.splitlines()
    assert lines[0] == "r,coefficient_sum,envelope_sum,phi_lower,ok"
    assert [line.split(",")[0] for line in lines[1:]] == ["1/1", "10/1"]


def test_report_to_file(one_step, tmp_path):
    out = tmp_path / "growth.csv"
    code = main(["report", str(one_step), "--analysis", "growth", "--params", "radii=1", "--out", str(out)])
    assert code == EXIT_OK
    assert out.read_text(encoding="utf-8").startswith("r,coefficient_sum")


def test_zero_steps_report_is_header_only(tmp_path, capsys):
    path = tmp_path / "empty.json"
    assert main(["construct", "--steps", "0", "--out", str(path)]) == EXIT_OK
    capsys.readouterr()
    assert main(["report", str(path), "--analysis", "growth"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("r,")
    # an empty truncation is bounded by every envelope
    assert all(line.endswith("True") for line in lines[1:])


def test_missing_transcript(tmp_path):
    assert main(["verify", str(tmp_path / "missing.json")]) == EXIT_CONFIG


def test_missing_config(tmp_path):
    assert main(["construct", "--config", str(tmp_path / "none.yaml"), "--out", str(tmp_path / "x.json")]) == EXIT_CONFIG


def test_invalid_config(tmp_path):
    config = tmp_path / "bad.yaml"
    config.write_text(yaml.safe_dump({"construction": {"variant": "unknown"}}), encoding="utf-8")
    assert main(["construct", "--config", str(config), "--out", str(tmp_path / "x.json")]) == EXIT_CONFIG


def test_bad_analysis_params(one_step):
    assert main(["report", str(one_step), "--analysis", "covers", "--params", "kmax"]) == EXIT_CONFIG


def test_unparseable_transcript(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    assert main(["verify", str(path)]) == EXIT_CONFIG
    record = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert record["error"] == "ParseError"


def test_tampered_transcript(one_step, tmp_path, capsys):
    data = json.loads(one_step.read_text(encoding="utf-8"))
    data["records"][0]["n"] = str(int(data["records"][0]["n"]) + 1)
    tampered = tmp_path / "tampered.json"
    tampered.write_text(json.dumps(data), encoding="utf-8")
    assert main(["verify", str(tampered)]) == EXIT_AUDIT
    record = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert record["error"] == "CertificateMismatch"
    assert record["step"] == 1


@pytest.mark.parametrize("error", [OverflowError("float overflow"), ArithmeticError("bad arithmetic"), KeyError("x")])
def test_unexpected_errors_become_records(one_step, monkeypatch, capsys, error):
    def explode(self, *args, **kwargs):
        raise error

    monkeypatch.setattr(Slowgrowth, "verify", explode)
    assert main(["verify", str(one_step)]) == EXIT_FAILURE
    record = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert record["error"] == type(error).__name__
    assert record["step"] is None


def test_missing_transcript_emits_record(tmp_path, capsys):
    assert main(["verify", str(tmp_path / "absent.json")]) == EXIT_CONFIG
    record = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert record["error"] == "FileNotFoundError"
