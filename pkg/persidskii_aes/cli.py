"""Command-line interface.

Commands:

    certify INPUT             certificate or infeasibility report
    decay-rate INPUT          per-row maximal decay / convergence rates
    simulate INPUT            one trajectory as CSV, checked against the certified envelope
    validate REPORT           Monte-Carlo falsification of a certify report
    reproduce-examples        the two worked examples against their golden values

Exit status is 0 on success or pass, 1 on infeasible or fail, 2 on input errors. Reports go
to standard output (or ``--out``); diagnostics go to standard error.
"""

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence

from colorama import init

from .builtin_examples import reproduce_examples
from .certify import certify_system, decay_rate, simulate, validate
from .errors import AESError, SystemSpecError
from .models import DiscreteSystem, Infeasible, certificate_from_dict
from .models.tolerances import ENVELOPE_SLACK
from .simulation import DEFAULT_STEP, check_envelope
from .utils import build_report, console, load_system, summary_line, system_from_dict, write_report

COMMANDS = ("certify", "decay-rate", "simulate", "validate", "reproduce-examples")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT_ERROR = 2


@dataclass
class RunConfig:
    """Everything one CLI invocation needs."""

    command: str
    input: Optional[Path] = None
    xi: Optional[List[float]] = None
    alpha: Optional[float] = None
    lam: Optional[float] = None
    grid_t_max: Optional[float] = None
    grid_step: Optional[float] = None
    horizon: Optional[float] = None
    step: float = DEFAULT_STEP
    runs: int = 20
    histories: int = 10
    seed: int = 0
    slack: float = ENVELOPE_SLACK
    out: Optional[Path] = None
    report: Optional[Path] = None
    quiet: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise SystemSpecError(f"unknown command {self.command!r}")
        if self.command != "reproduce-examples" and self.input is None:
            raise SystemSpecError(f"'{self.command}' needs an input file")


def _vector(text: str) -> List[float]:
    try:
        return [float(part) for part in text.replace(" ", "").split(",") if part]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="persidskii-aes",
        description="Certify absolute exponential stability of delay Persidskii systems",
    )
    parser.add_argument("command", choices=COMMANDS, help="What to do")
    parser.add_argument("input", nargs="?", type=Path, help="System JSON (certify report for validate)")
    parser.add_argument("--xi", type=_vector, help="Witness vector, e.g. 1,1")
    parser.add_argument("--alpha", type=float, help="Decay rate to check (continuous time)")
    parser.add_argument("--lambda", dest="lam", type=float, help="Convergence rate to check (discrete time)")
    parser.add_argument("--grid-t-max", type=float, help="End of the evidence grid (default 10 h_max)")
    parser.add_argument("--grid-step", type=float, help="Step of the evidence grid (default h_max/100)")
    parser.add_argument("--horizon", type=float, help="Simulation horizon (default 10 h_max)")
    parser.add_argument("--step", type=float, default=DEFAULT_STEP, help=f"RK4 step (default {DEFAULT_STEP:g})")
    parser.add_argument("--runs", type=int, default=20, help="Sampled nonlinearities for validate (default 20)")
    parser.add_argument("--histories", type=int, default=10, help="Histories per nonlinearity (default 10)")
    parser.add_argument("--seed", type=int, default=0, help="Base seed (default 0)")
    parser.add_argument(
        "--slack", type=float, default=ENVELOPE_SLACK, help=f"Envelope slope slack (default {ENVELOPE_SLACK:g})"
    )
    parser.add_argument("--out", type=Path, help="Write the report (CSV for simulate) here instead of stdout")
    parser.add_argument("--report", type=Path, help="simulate: also write the envelope report JSON here")
    parser.add_argument("--quiet", action="store_true", help="Suppress diagnostics on stderr")
    return parser


def parse_arguments(argv: Optional[Sequence[str]] = None) -> RunConfig:
    """Parse command line arguments into a RunConfig."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return RunConfig(**vars(args))
    except SystemSpecError as e:
        parser.error(str(e))


def _emit(report: dict, out: Optional[Path]) -> None:
    text = write_report(report, out)
    if out is None:
        sys.stdout.write(text)
    else:
        console.success(f"Report saved to {out}")


def _rate(config: RunConfig, system) -> Optional[float]:
    return config.lam if isinstance(system, DiscreteSystem) else config.alpha


def _certify(config: RunConfig) -> int:
    system, sector = load_system(config.input)
    console.status(f"Certifying {system.kind} system from {config.input} (n={system.n}, {len(system.delays)} delay(s))")
    result = certify_system(
        system, sector, xi=config.xi, rate=_rate(config, system),
        grid_t_max=config.grid_t_max, grid_step=config.grid_step,
    )
    report = build_report("certify", result, system=system, sector=sector)
    _emit(report, config.out)
    console.summary(summary_line(report), ok=bool(result))
    return EXIT_OK if result else EXIT_FAILED


def _decay_rate(config: RunConfig) -> int:
    system, sector = load_system(config.input)
    console.status(f"Computing the rate profile of {config.input}")
    profile = decay_rate(system, sector, xi=config.xi, grid_t_max=config.grid_t_max, grid_step=config.grid_step)
    extra = {} if config.xi is None else {"xi": config.xi}
    report = build_report("decay-rate", profile, **extra)
    _emit(report, config.out)
    console.summary(summary_line(report), ok=not isinstance(profile, Infeasible))
    return EXIT_FAILED if isinstance(profile, Infeasible) else EXIT_OK


def _simulate(config: RunConfig) -> int:
    system, sector = load_system(config.input)
    rate = _rate(config, system)
    if rate is None:
        certificate = certify_system(system, sector, grid_t_max=config.grid_t_max, grid_step=config.grid_step)
        rate = certificate.rate if certificate else None
    console.status(f"Simulating {config.input} (seed {config.seed})")
    trace = simulate(system, sector, seed=config.seed, horizon=config.horizon, step=config.step)
    text = trace.to_csv(config.out)
    if config.out is None:
        sys.stdout.write(text)
    else:
        console.success(f"Trace saved to {config.out}")
    if rate is None:
        console.warning("no certified rate; the trace is exported without an envelope check")
        return EXIT_OK
    envelope = check_envelope(trace, rate, slack=config.slack)
    report = build_report("simulate", envelope, seed=config.seed)
    if config.report is not None:
        write_report(report, config.report)
        console.success(f"Envelope report saved to {config.report}")
    console.summary(summary_line(report), ok=envelope.passed)
    return EXIT_OK if envelope.passed else EXIT_FAILED


def _validate(config: RunConfig) -> int:
    try:
        payload = json.loads(Path(config.input).read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise SystemSpecError(f"{config.input}: invalid JSON ({e.msg})") from e
    if not isinstance(payload, dict) or payload.get("status") != "certified":
        raise SystemSpecError(f"{config.input} is not a certified report")
    system, sector = system_from_dict(payload)
    certificate = certificate_from_dict(payload)
    result = validate(
        system, sector, certificate,
        n_nonlinearities=config.runs, n_histories=config.histories, seed=config.seed,
        horizon=config.horizon, step=config.step, slack=config.slack,
    )
    report = build_report("validate", result, seed=config.seed)
    _emit(report, config.out)
    console.summary(summary_line(report), ok=result.passed)
    return EXIT_OK if result.passed else EXIT_FAILED


def _reproduce_examples(config: RunConfig) -> int:
    console.banner("Reproducing the worked examples")
    checks = reproduce_examples()
    current = None
    for check in checks:
        if check.example != current:
            current = check.example
            print(f"Example {current}")
        print(f"  {check.describe()}")
    passed = all(check.passed for check in checks)
    if config.out is not None:
        report = build_report(
            "reproduce-examples",
            {"status": "passed" if passed else "failed", "checks": [check.to_dict() for check in checks]},
        )
        write_report(report, config.out)
        console.success(f"Report saved to {config.out}")
    failed = sum(not check.passed for check in checks)
    console.summary(
        f"{len(checks) - failed}/{len(checks)} golden values reproduced", ok=passed
    )
    return EXIT_OK if passed else EXIT_FAILED


_HANDLERS = {
    "certify": _certify,
    "decay-rate": _decay_rate,
    "simulate": _simulate,
    "validate": _validate,
    "reproduce-examples": _reproduce_examples,
}


def run(config: RunConfig) -> int:
    """Execute one command and return its exit status."""
    console.set_quiet(config.quiet)
    try:
        return _HANDLERS[config.command](config)
    except (AESError, OSError) as e:
        console.failure(str(e))
        return EXIT_INPUT_ERROR


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point for the CLI application."""
    init()
    return run(parse_arguments(argv))


__all__ = ["RunConfig", "build_parser", "main", "parse_arguments", "run"]
