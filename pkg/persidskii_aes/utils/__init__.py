"""Console output, system-file loading and report formatting."""

from . import console
from .loader import load_system, sector_from_dict, system_from_dict, system_to_dict
from .formatting import build_report, dumps_report, summary_line, write_report

__all__ = [
    "console",
    "load_system", "sector_from_dict", "system_from_dict", "system_to_dict",
    "build_report", "dumps_report", "summary_line", "write_report",
]
