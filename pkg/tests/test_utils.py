"""Tests for utility functions."""

import json
import math

import numpy as np
import pytest

from persidskii_aes.errors import SystemSpecError
from persidskii_aes.models import (
    ContinuousCertificate,
    ContinuousSystem,
    Criterion,
    DiscreteSystem,
    EvidenceMode,
    Infeasible,
    InfeasibilityReason,
    SectorBounds,
    SectorKind,
)
from persidskii_aes.utils import console
from persidskii_aes.utils.formatting import build_report, dumps_report, summary_line, write_report
from persidskii_aes.utils.loader import load_system, sector_from_dict, system_from_dict, system_to_dict

SCALAR = {
    "kind": "continuous",
    "n": 1,
    "A": [["-2-t"]],
    "delays": [{"h": 0.5, "B": [[0.25]]}],
    "sector": {"delta": [1], "beta": [2]},
}


class TestLoader:
    """Test cases for reading system files."""

    def test_sector_kinds(self):
        """Test that the sector kind follows the keys present."""
        assert sector_from_dict({"delta": [1], "beta": [2]}).kind == SectorKind.BOUNDED
        assert sector_from_dict({"beta": [2]}).kind == SectorKind.POSITIVE_UP_TO
        assert sector_from_dict({"delta": [1]}).kind == SectorKind.BOUNDED_BELOW

        with pytest.raises(SystemSpecError):
            sector_from_dict({})

    def test_continuous_system(self):
        """Test loading a time-varying continuous system."""
        system, sector = system_from_dict(SCALAR)

        assert isinstance(system, ContinuousSystem)
        assert system.n == 1
        assert system.delay_values == [0.5]
        assert not system.is_constant
        assert system.a_at(1.0)[0, 0] == pytest.approx(-3.0)
        assert sector.n == 1

    def test_discrete_system(self):
        """Test loading a discrete system with bounds."""
        payload = {
            "kind": "discrete",
            "A": [[0.5]],
            "delays": [{"h": 2, "B": [[0.25]]}],
            "sector": {"beta": [1]},
            "bounds": {"A": [[0.5]], "B": [[[0.25]]]},
        }
        system, _ = system_from_dict(payload)

        assert isinstance(system, DiscreteSystem)
        assert system.h_max == 2
        assert system.bounds is not None

    def test_embedded_report(self):
        """Test that a report embedding its system loads like the system itself."""
        system, _ = system_from_dict({"status": "certified", "system": SCALAR})

        assert system.n == 1

    @pytest.mark.parametrize(
        "payload",
        [
            [1, 2],
            {**SCALAR, "kind": "hybrid"},
            {key: value for key, value in SCALAR.items() if key != "A"},
            {key: value for key, value in SCALAR.items() if key != "sector"},
            {**SCALAR, "n": 2},
            {**SCALAR, "delays": [{"h": 1}]},
            {**SCALAR, "sector": {"delta": [1, 1], "beta": [2, 2]}},
            {**SCALAR, "A": [[1, 2, 3]]},
        ],
    )
    def test_malformed_systems(self, payload):
        """Test that malformed system files raise SystemSpecError."""
        with pytest.raises(SystemSpecError):
            system_from_dict(payload)

    def test_load_invalid_json(self, tmp_path):
        """Test that invalid JSON is reported as a system error."""
        path = tmp_path / "broken.json"
        path.write_text("{not json", encoding="utf-8")

        with pytest.raises(SystemSpecError, match="invalid JSON"):
            load_system(path)

    def test_to_dict_returns_source(self):
        """Test that a loaded system writes back its original payload."""
        system, sector = system_from_dict(SCALAR)

        assert system_to_dict(system, sector) == SCALAR

    def test_to_dict_without_source(self):
        """Test the payload of a system built in code."""
        system = ContinuousSystem(a=[[-1.0]], delays=[(1.0, [[0.5]])])
        payload = system_to_dict(system, SectorBounds.bounded([1.0], [2.0]))

        assert payload["A"] == [[-1.0]]
        assert payload["delays"] == [{"h": 1.0, "B": [[0.5]]}]
        assert system_from_dict(payload)[0].n == 1


class TestFormatting:
    """Test cases for reports and summary lines."""

    def test_certificate_report(self):
        """Test the report and summary of a continuous certificate."""
        certificate = ContinuousCertificate(
            criterion=Criterion.THM1,
            xi=np.array([1.0, 1.0]),
            alpha=0.5,
            margin=0.2,
            worst_t=0.0,
            evidence=EvidenceMode.GRID_EVIDENCE,
        )
        report = build_report("certify", certificate)

        assert list(report)[:2] == ["version", "command"]
        assert report["status"] == "certified"
        assert report["xi"] == [0.5, 0.5]
        assert summary_line(report).startswith("CERTIFIED by Thm1: alpha = 0.5")

    def test_infeasible_report(self):
        """Test the report and summary of an infeasible result."""
        result = Infeasible(InfeasibilityReason.NOT_HURWITZ, "abscissa is 0.1", value=0.1)
        report = build_report("certify", result)

        assert report["reason"] == "NotHurwitz"
        assert summary_line(report) == "INFEASIBLE (NotHurwitz): abscissa is 0.1"

    def test_non_finite_values_become_null(self):
        """Test that the JSON output stays strict."""
        report = build_report("simulate", {"m_fit": math.inf, "slope_fit": math.nan, "passed": False})

        assert report["m_fit"] is None
        assert json.loads(dumps_report(report))["slope_fit"] is None
        assert summary_line(report) == "FAIL: M = n/a, tail slope = n/a"

    def test_embedded_system(self):
        """Test that reports can embed the system for validate."""
        system, sector = system_from_dict(SCALAR)
        report = build_report("certify", {"status": "infeasible", "reason": "x", "message": "y"},
                              system=system, sector=sector)

        assert report["system"] == SCALAR

    def test_write_report(self, tmp_path):
        """Test that reports are written to disk and returned."""
        path = tmp_path / "report.json"
        text = write_report({"lambda_max": 0.5, "binding_row": 1}, path)

        assert json.loads(path.read_text(encoding="utf-8")) == {"lambda_max": 0.5, "binding_row": 1}
        assert text.endswith("\n")
        assert summary_line(json.loads(text)) == "lambda_max = 0.5 (binding row 1)"


class TestConsole:
    """Test cases for console diagnostics."""

    def test_quiet_mode(self, capsys):
        """Test that quiet mode silences diagnostics."""
        console.set_quiet(True)
        try:
            console.status("hidden")
            assert capsys.readouterr().err == ""
        finally:
            console.set_quiet(False)

        console.warning("visible")
        assert "Warning: visible" in capsys.readouterr().err
