"""Positive-systems kernel: Perron roots and witness vectors."""

from .perron import (
    find_hurwitz_witness,
    find_schur_witness,
    perron_pair,
    spectral_abscissa,
    spectral_radius,
    verify_hurwitz_witness,
    verify_schur_witness,
)

__all__ = [
    "find_hurwitz_witness",
    "find_schur_witness",
    "perron_pair",
    "spectral_abscissa",
    "spectral_radius",
    "verify_hurwitz_witness",
    "verify_schur_witness",
]
