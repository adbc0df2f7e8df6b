"""Reading and writing system files.

A system file is a JSON object::

    {
      "kind": "continuous",                       # or "discrete"; default continuous
      "n": 2,
      "A": [["-4*t-12", 0], ["t", "-2*t-5"]],
      "delays": [{"h": 1, "B": [[...], [...]]}],
      "sector": {"delta": [...], "beta": [...]},  # {"beta"} for K(0,beta], {"delta"} for K[delta,inf)
      "bounds": {"A": [[...]], "B": [[[...]]]}    # optional
    }

Matrix entries are numbers or expression strings in ``t``. A certification report that embeds
its system under ``"system"`` loads the same way.
"""

import json
from pathlib import Path
from typing import Tuple, Union

from ..errors import SystemSpecError
from ..models.matrices import MatrixExpr
from ..models.sector import SectorBounds
from ..models.system import ConstantBounds, ContinuousSystem, DelayTerm, DiscreteSystem

SYSTEM_KINDS = ("continuous", "discrete")

LoadedSystem = Tuple[Union[ContinuousSystem, DiscreteSystem], SectorBounds]


def _require(payload: dict, key: str):
    if key not in payload:
        raise SystemSpecError(f"system file is missing '{key}'")
    return payload[key]


def sector_from_dict(payload: dict) -> SectorBounds:
    if not isinstance(payload, dict):
        raise SystemSpecError("'sector' must be an object with 'delta' and/or 'beta'")
    delta, beta = payload.get("delta"), payload.get("beta")
    if delta is not None and beta is not None:
        return SectorBounds.bounded(delta, beta)
    if beta is not None:
        return SectorBounds.positive_up_to(beta)
    if delta is not None:
        return SectorBounds.bounded_below(delta)
    raise SystemSpecError("'sector' needs 'delta', 'beta' or both")


def _bounds_from_dict(payload) -> ConstantBounds:
    if not isinstance(payload, dict):
        raise SystemSpecError("'bounds' must be an object")
    b = payload.get("B", [])
    if not isinstance(b, list):
        raise SystemSpecError("'bounds.B' must be a list with one entry per delay")
    return ConstantBounds(a=payload.get("A"), b=tuple(b))


def system_from_dict(payload: dict) -> LoadedSystem:
    """Build the system and its sector from a parsed system file.

    Raises:
        SystemSpecError: Missing fields, wrong dimensions or malformed entries
    """
    if not isinstance(payload, dict):
        raise SystemSpecError("system file must contain a JSON object")
    if "system" in payload and "A" not in payload:
        payload = payload["system"]
        if not isinstance(payload, dict):
            raise SystemSpecError("embedded 'system' must be an object")
    kind = payload.get("kind", "continuous")
    if kind not in SYSTEM_KINDS:
        raise SystemSpecError(f"'kind' must be one of {SYSTEM_KINDS}, got {kind!r}")
    a = _require(payload, "A")
    delays = payload.get("delays", [])
    if not isinstance(delays, list):
        raise SystemSpecError("'delays' must be a list of {h, B} objects")
    terms = []
    for index, entry in enumerate(delays):
        if not isinstance(entry, dict) or "h" not in entry or "B" not in entry:
            raise SystemSpecError(f"delay {index + 1} must be an object with 'h' and 'B'")
        terms.append(DelayTerm(entry["h"], entry["B"]))
    bounds = _bounds_from_dict(payload["bounds"]) if payload.get("bounds") is not None else None
    cls = ContinuousSystem if kind == "continuous" else DiscreteSystem
    try:
        system = cls(a=a, delays=tuple(terms), bounds=bounds, source=payload)
    except (TypeError, ValueError) as e:
        if isinstance(e, SystemSpecError):
            raise
        raise SystemSpecError(f"malformed system: {e}") from e
    if "n" in payload and int(payload["n"]) != system.n:
        raise SystemSpecError(f"'n' is {payload['n']} but A has dimension {system.n}")
    sector = sector_from_dict(_require(payload, "sector"))
    if sector.n != system.n:
        raise SystemSpecError(f"sector has dimension {sector.n}, system has {system.n}")
    return system, sector


def load_system(path: Union[str, Path]) -> LoadedSystem:
    """Read a system file from disk.

    Raises:
        OSError: The file cannot be read
        SystemSpecError: The file is not valid JSON or not a valid system
    """
    text = Path(path).read_text(encoding="utf-8")
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise SystemSpecError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from e
    return system_from_dict(payload)


def _matrix_json(m):
    return m.to_json() if isinstance(m, MatrixExpr) else m.tolist()


def system_to_dict(system: Union[ContinuousSystem, DiscreteSystem], sector: SectorBounds) -> dict:
    """Inverse of ``system_from_dict``; returns the original payload when there is one."""
    if system.source is not None:
        return dict(system.source)
    payload = {
        "kind": system.kind,
        "n": system.n,
        "A": _matrix_json(system.a),
        "delays": [{"h": term.h, "B": _matrix_json(term.b)} for term in system.delays],
        "sector": sector.to_dict(),
    }
    if system.bounds is not None:
        payload["bounds"] = {
            "A": None if system.bounds.a is None else system.bounds.a.tolist(),
            "B": [None if b is None else b.tolist() for b in system.bounds.b],
        }
    return payload
