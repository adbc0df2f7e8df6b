"""Tests for the command-line interface."""

import json
import math
from pathlib import Path

import pytest

from persidskii_aes.cli import EXIT_FAILED, EXIT_INPUT_ERROR, EXIT_OK, parse_arguments, run

DATA = Path(__file__).resolve().parent.parent / "data"

SCALAR_SYSTEM = {
    "kind": "continuous",
    "n": 1,
    "A": [[-2]],
    "delays": [{"h": 1, "B": [[1]]}],
    "sector": {"delta": [1], "beta": [1]},
}


def invoke(*argv: str) -> int:
    return run(parse_arguments([*argv, "--quiet"]))


def read_json(path: Path) -> dict:
    return json.loads(path.read_text(encoding="utf-8"))


@pytest.fixture
def scalar_file(tmp_path):
    path = tmp_path / "scalar.json"
    path.write_text(json.dumps(SCALAR_SYSTEM), encoding="utf-8")
    return path


class TestParseArguments:
    """Test cases for argument parsing."""

    def test_vector_and_rate_options(self):
        """Test that --xi and --lambda are parsed into the run config."""
        config = parse_arguments(["certify", "system.json", "--xi", "1, 2", "--lambda", "0.7"])

        assert config.command == "certify"
        assert config.input == Path("system.json")
        assert config.xi == [1.0, 2.0]
        assert config.lam == 0.7
        assert config.alpha is None

    def test_defaults(self):
        """Test the Monte-Carlo defaults."""
        config = parse_arguments(["validate", "report.json"])

        assert config.runs == 20
        assert config.histories == 10
        assert config.seed == 0
        assert config.out is None

    def test_missing_input(self):
        """Test that commands other than reproduce-examples need an input file."""
        with pytest.raises(SystemExit) as excinfo:
            parse_arguments(["certify"])
        assert excinfo.value.code == 2

        assert parse_arguments(["reproduce-examples"]).input is None

    def test_bad_vector(self):
        """Test that a malformed witness vector is a usage error."""
        with pytest.raises(SystemExit):
            parse_arguments(["certify", "system.json", "--xi", "1,a"])

    def test_unknown_command(self):
        """Test that unknown commands are rejected."""
        with pytest.raises(SystemExit):
            parse_arguments(["summarize", "system.json"])


@pytest.mark.integration
class TestCertifyCommand:
    """Test cases for the certify and decay-rate commands."""

    def test_certifies_example1(self, tmp_path):
        """Test the continuous example file end to end."""
        out = tmp_path / "report.json"

        assert invoke("certify", str(DATA / "example1.json"), "--out", str(out)) == EXIT_OK
        report = read_json(out)
        assert report["command"] == "certify"
        assert report["status"] == "certified"
        assert report["time"] == "continuous"
        assert report["alpha"] > 0
        assert report["system"]["A"] == [["-4*t-12", 0], ["t", "-2*t-5"]]

    def test_report_on_stdout(self, capsys):
        """Test that the report goes to standard output without --out."""
        assert invoke("certify", str(DATA / "example2.json")) == EXIT_OK

        report = json.loads(capsys.readouterr().out)
        assert report["criterion"] == "Cor5"
        assert 0 < report["lambda"] < 1

    def test_supplied_witness_and_rate(self, tmp_path):
        """Test checking xi = (1, 1) and alpha = 1 on the continuous example."""
        out = tmp_path / "report.json"

        code = invoke("certify", str(DATA / "example1.json"), "--xi", "1,1", "--alpha", "1", "--out", str(out))
        assert code == EXIT_OK
        report = read_json(out)
        assert report["xi"] == [0.5, 0.5]
        assert report["alpha"] == 1.0
        assert report["margin"] == pytest.approx((1.5 - math.e / 2) / 2, abs=1e-9)

    def test_infeasible_system(self, tmp_path):
        """Test that a system failing the necessary condition exits with status 1."""
        out = tmp_path / "report.json"

        assert invoke("certify", str(DATA / "scalar_infeasible.json"), "--out", str(out)) == EXIT_FAILED
        report = read_json(out)
        assert report["status"] == "infeasible"
        assert report["reason"] == "NecessityViolated"

    def test_discrete_decay_rate(self, tmp_path):
        """Test the per-row convergence rates of the discrete example."""
        out = tmp_path / "rates.json"

        assert invoke("decay-rate", str(DATA / "example2.json"), "--xi", "1,1", "--out", str(out)) == EXIT_OK
        report = read_json(out)
        assert report["lambda_max"] == pytest.approx(0.5840213813, abs=1e-9)
        assert report["binding_row"] == 2
        assert report["xi"] == [1.0, 1.0]

    def test_missing_file(self, tmp_path):
        """Test that an unreadable input is an input error."""
        assert invoke("certify", str(tmp_path / "absent.json")) == EXIT_INPUT_ERROR

    def test_invalid_json(self, tmp_path):
        """Test that malformed JSON is an input error."""
        path = tmp_path / "broken.json"
        path.write_text("{\"A\": [[-1]", encoding="utf-8")

        assert invoke("certify", str(path)) == EXIT_INPUT_ERROR

    def test_invalid_expression(self, tmp_path):
        """Test that an unknown identifier in a matrix entry is an input error."""
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({**SCALAR_SYSTEM, "A": [["-2*s"]]}), encoding="utf-8")

        assert invoke("certify", str(path)) == EXIT_INPUT_ERROR


@pytest.mark.integration
class TestSimulationCommands:
    """Test cases for simulate, validate and reproduce-examples."""

    def test_simulate_writes_csv(self, scalar_file, tmp_path):
        """Test that simulate exports the trace and the envelope report."""
        out = tmp_path / "trace.csv"
        envelope = tmp_path / "envelope.json"

        code = invoke(
            "simulate", str(scalar_file), "--horizon", "5", "--step", "0.05",
            "--out", str(out), "--report", str(envelope),
        )
        lines = out.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "t,x1,norm"
        assert len(lines) > 50
        report = read_json(envelope)
        assert report["command"] == "simulate"
        assert code == (EXIT_OK if report["passed"] else EXIT_FAILED)

    @pytest.mark.slow
    def test_certify_then_validate(self, scalar_file, tmp_path):
        """Test that a certify report can be fed back to validate."""
        certified = tmp_path / "certified.json"
        validated = tmp_path / "validated.json"
        assert invoke("certify", str(scalar_file), "--out", str(certified)) == EXIT_OK

        code = invoke(
            "validate", str(certified), "--runs", "2", "--histories", "1",
            "--horizon", "5", "--step", "0.05", "--out", str(validated),
        )
        report = read_json(validated)
        assert report["command"] == "validate"
        assert report["runs"] == 2
        assert code == (EXIT_OK if report["status"] == "passed" else EXIT_FAILED)

    def test_validate_rejects_infeasible_report(self, tmp_path):
        """Test that only certified reports can be validated."""
        infeasible = tmp_path / "infeasible.json"
        invoke("certify", str(DATA / "scalar_infeasible.json"), "--out", str(infeasible))

        assert invoke("validate", str(infeasible)) == EXIT_INPUT_ERROR

    def test_reproduce_examples(self, tmp_path):
        """Test that both worked examples reproduce their golden values."""
        out = tmp_path / "examples.json"

        assert invoke("reproduce-examples", "--out", str(out)) == EXIT_OK
        report = read_json(out)
        assert report["status"] == "passed"
        assert {check["example"] for check in report["checks"]} == {"1", "2"}
