"""Coloured diagnostics on standard error.

Reports go to standard output; everything a human reads while a command runs goes through
these helpers so that ``set_quiet(True)`` silences it in one place.
"""

import sys

from colorama import Fore, Style

_quiet = False


def set_quiet(quiet: bool = True) -> None:
    """Silence (or re-enable) all console diagnostics."""
    global _quiet
    _quiet = quiet


def is_quiet() -> bool:
    return _quiet


def _emit(text: str) -> None:
    if not _quiet:
        print(text, file=sys.stderr)


def status(message: str) -> None:
    _emit(f"{Fore.CYAN}→ {message}{Style.RESET_ALL}")


def success(message: str) -> None:
    _emit(f"{Fore.GREEN}→ {message}{Style.RESET_ALL}")


def warning(message: str) -> None:
    _emit(f"{Fore.YELLOW}Warning: {message}{Style.RESET_ALL}")


def failure(message: str) -> None:
    _emit(f"{Fore.RED}Error: {message}{Style.RESET_ALL}")


def detail(message: str) -> None:
    """Indented secondary line under a status message."""
    _emit(f"    {Fore.YELLOW}{message}{Style.RESET_ALL}")


def banner(title: str) -> None:
    _emit(f"\n{Fore.CYAN}{Style.BRIGHT}→ {title}{Style.RESET_ALL}")
    _emit(f"{Fore.CYAN}{'=' * 80}{Style.RESET_ALL}")


def summary(line: str, ok: bool = True) -> None:
    """Closing one-line verdict of a command."""
    colour = Fore.GREEN if ok else Fore.RED
    _emit(f"{colour}{Style.BRIGHT}{line}{Style.RESET_ALL}")
