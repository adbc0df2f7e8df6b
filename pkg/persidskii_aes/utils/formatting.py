"""Report dictionaries, JSON output and the one-line human summary."""

import json
import math
from pathlib import Path
from typing import Any, Optional, Union

from ..version import __version__
from .loader import system_to_dict


def _finite(value: Any) -> Any:
    """Replace non-finite floats with None so the output stays strict JSON."""
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {key: _finite(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_finite(item) for item in value]
    return value


def build_report(command: str, result: Any, system=None, sector=None, **extra) -> dict:
    """Report for one CLI command.

    Args:
        command: CLI command name
        result: Anything with ``to_dict`` (certificate, Infeasible, profile, report) or a dict
        system: System to embed so the report can be fed back as input
        sector: Sector of the embedded system
        **extra: Additional top-level fields

    Returns:
        Dictionary with ``version`` and ``command`` first, then the result fields
    """
    report = {"version": __version__, "command": command}
    report.update(result.to_dict() if hasattr(result, "to_dict") else dict(result))
    report.update(extra)
    if system is not None:
        report["system"] = system_to_dict(system, sector)
    return _finite(report)


def dumps_report(report: dict) -> str:
    return json.dumps(report, indent=2, allow_nan=False) + "\n"


def write_report(report: dict, out: Optional[Union[str, Path]] = None) -> str:
    """Write the JSON report to ``out``, or return it for standard output when ``out`` is None."""
    text = dumps_report(report)
    if out is not None:
        Path(out).write_text(text, encoding="utf-8")
    return text


def _fmt(value) -> str:
    return "n/a" if value is None else f"{value:.10g}"


def summary_line(report: dict) -> str:
    """Single human-readable line closing every command's output."""
    status = report.get("status")
    if status == "certified":
        rate = f"alpha = {_fmt(report['alpha'])}" if "alpha" in report else f"lambda = {_fmt(report['lambda'])}"
        return (
            f"CERTIFIED by {report['criterion']}: {rate}, margin = {_fmt(report['margin'])}, "
            f"evidence = {report['evidence']}"
        )
    if status == "infeasible":
        return f"INFEASIBLE ({report['reason']}): {report['message']}"
    if status in ("passed", "failed"):
        return (
            f"{status.upper()}: {report['runs'] - report['failures']}/{report['runs']} runs inside the "
            f"envelope, worst M = {_fmt(report['worst_m_fit'])}, worst slope = {_fmt(report['worst_slope'])}"
        )
    if "alpha_max" in report:
        return f"alpha_max = {_fmt(report['alpha_max'])} (binding row {report['binding_row']})"
    if "lambda_max" in report:
        return f"lambda_max = {_fmt(report['lambda_max'])} (binding row {report['binding_row']})"
    if "m_fit" in report:
        verdict = "PASS" if report.get("passed") else "FAIL"
        return f"{verdict}: M = {_fmt(report['m_fit'])}, tail slope = {_fmt(report['slope_fit'])}"
    return json.dumps(report)
