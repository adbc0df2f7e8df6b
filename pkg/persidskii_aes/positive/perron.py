"""Perron roots and positive witness vectors for Metzler and nonnegative matrices.

A Metzler matrix m is Hurwitz iff some xi >> 0 gives m xi << 0; a nonnegative matrix is
Schur iff some xi >> 0 gives m xi << xi. Both witnesses are built from the Perron vector,
falling back to the Perron vector of m + eps J (J the all-ones matrix) when the plain one
has vanishing components or misses the strict inequality.
"""

from typing import Tuple, Union

import numpy as np

from ..errors import ConvergenceError, SystemSpecError
from ..models.certificate import Infeasible, InfeasibilityReason, WitnessMethod, WitnessResult
from ..models.matrices import as_const_matrix, is_metzler, is_nonnegative
from ..models.tolerances import (
    FEASIBILITY_TOL,
    POWER_ITERATION_CAP,
    POWER_ITERATION_TOL,
    STRICT_TOL,
    WITNESS_FLOOR,
)

WitnessOutcome = Union[WitnessResult, Infeasible]

_PERTURBATION_HALVINGS = 60


def _require_metzler(m) -> np.ndarray:
    m = as_const_matrix(m)
    if not is_metzler(m):
        raise SystemSpecError("matrix must be Metzler (nonnegative off-diagonal entries)")
    return m


def _require_nonnegative(m) -> np.ndarray:
    m = as_const_matrix(m)
    if not is_nonnegative(m):
        raise SystemSpecError("matrix must be entrywise nonnegative")
    return m


def _diagonal_shift(m: np.ndarray) -> float:
    return 1.0 + float(np.max(np.abs(np.diag(m))))


def perron_pair(
    p: np.ndarray, tol: float = POWER_ITERATION_TOL, cap: int = POWER_ITERATION_CAP
) -> Tuple[float, np.ndarray, int]:
    """Perron root and l1-normalised Perron vector of a nonnegative matrix with positive diagonal.

    Power iteration from the all-ones vector. The operator is squared after every step, so
    step k applies p^(2^k) and slowly mixing (e.g. reducible, Jordan-like) matrices still
    settle in a few dozen steps; products of nonnegative matrices involve no cancellation.

    Args:
        p: Nonnegative square matrix with a strictly positive diagonal
        tol: Stop when successive iterates differ by less than this in the max norm
        cap: Maximum number of steps

    Returns:
        (root, vector, steps)

    Raises:
        ConvergenceError: The iterates did not settle within ``cap`` steps
    """
    n = p.shape[0]
    vector = np.full(n, 1.0 / n)
    operator = p.copy()
    for step in range(1, cap + 1):
        image = operator @ vector
        total = image.sum()
        if not np.isfinite(total) or total <= 0:
            raise ConvergenceError(f"power iteration degenerated at step {step} (sum {total!r})")
        image /= total
        if np.max(np.abs(image - vector)) < tol:
            root = float((p @ image).sum())
            return root, image, step
        vector = image
        operator = operator @ operator
        operator /= operator.max()
    raise ConvergenceError(
        f"power iteration did not converge in {cap} steps "
        f"(last change {np.max(np.abs(image - vector)):.3e})"
    )


def _abscissa_pair(m: np.ndarray) -> Tuple[float, np.ndarray, int]:
    shift = _diagonal_shift(m)
    root, vector, steps = perron_pair(m + shift * np.eye(m.shape[0]))
    return root - shift, vector, steps


def _radius_pair(m: np.ndarray) -> Tuple[float, np.ndarray, int]:
    # iterate on m + I: the positive diagonal rules out periodic (cyclic) matrices
    root, vector, steps = perron_pair(m + np.eye(m.shape[0]))
    return root - 1.0, vector, steps


def spectral_abscissa(m) -> float:
    """Largest real part of the eigenvalues of a Metzler matrix (itself an eigenvalue)."""
    return _abscissa_pair(_require_metzler(m))[0]


def spectral_radius(m) -> float:
    """Perron root of a nonnegative matrix."""
    return _radius_pair(_require_nonnegative(m))[0]


def _strictly_below(values: np.ndarray, scale: float, xi: np.ndarray) -> bool:
    """values << 0 under the shared relative strictness band."""
    band = STRICT_TOL * max(scale, 1e-300) * float(np.sum(np.abs(xi)))
    return bool(np.all(values < 0) and np.all(values <= -band))


def _hurwitz_defect(m: np.ndarray, xi: np.ndarray) -> np.ndarray:
    return m @ xi


def _schur_defect(m: np.ndarray, xi: np.ndarray) -> np.ndarray:
    return m @ xi - xi


def _search(m, pair, defect, scale, gap, infeasible_reason, label) -> WitnessOutcome:
    """Shared Perron-then-perturbation construction.

    ``gap`` is the distance of the Perron root from the stability boundary (positive when
    stable).
    """
    root, vector, steps = pair(m)
    if gap(root) <= FEASIBILITY_TOL:
        return Infeasible(
            infeasible_reason, f"{label} is not satisfied: Perron root {root:.12g}", value=root
        )
    if np.min(vector) >= WITNESS_FLOOR and _strictly_below(defect(m, vector), scale, vector):
        return WitnessResult(
            xi=vector,
            margin=float(np.min(-defect(m, vector))),
            iterations=steps,
            method=WitnessMethod.PERRON_EIGENVECTOR,
            perron_root=root,
        )
    ones = np.ones_like(m)
    epsilon = gap(root)
    total_steps = steps
    for _ in range(_PERTURBATION_HALVINGS):
        epsilon /= 2.0
        perturbed_root, candidate, perturbed_steps = pair(m + epsilon * ones)
        total_steps += perturbed_steps
        if gap(perturbed_root) <= 0:
            continue
        if np.min(candidate) >= WITNESS_FLOOR and _strictly_below(defect(m, candidate), scale, candidate):
            return WitnessResult(
                xi=candidate,
                margin=float(np.min(-defect(m, candidate))),
                iterations=total_steps,
                method=WitnessMethod.PERTURBED_PERRON,
                perron_root=root,
            )
    return Infeasible(
        InfeasibilityReason.MARGIN_TOO_SMALL,
        f"{label} holds (Perron root {root:.12g}) but no witness clears the strictness band",
        value=root,
    )


def find_hurwitz_witness(m) -> WitnessOutcome:
    """Find xi >> 0 with m xi << 0 for a Metzler matrix.

    Args:
        m: Metzler matrix; criteria pass the transposed comparison matrix here

    Returns:
        WitnessResult with xi l1-normalised and margin = min_i -(m xi)_i, or Infeasible
        carrying the spectral abscissa when m is not Hurwitz

    Raises:
        SystemSpecError: m is not Metzler
        ConvergenceError: Power iteration hit its cap
    """
    m = _require_metzler(m)
    return _search(
        m,
        _abscissa_pair,
        _hurwitz_defect,
        float(np.linalg.norm(m, np.inf)),
        lambda root: -root,
        InfeasibilityReason.NOT_HURWITZ,
        "Hurwitz stability",
    )


def find_schur_witness(m) -> WitnessOutcome:
    """Find xi >> 0 with m xi << xi for a nonnegative matrix.

    Returns:
        WitnessResult with margin = min_i (xi - m xi)_i, or Infeasible carrying the
        spectral radius when it is not below one
    """
    m = _require_nonnegative(m)
    return _search(
        m,
        _radius_pair,
        _schur_defect,
        float(np.linalg.norm(m - np.eye(m.shape[0]), np.inf)),
        lambda root: 1.0 - root,
        InfeasibilityReason.NOT_SCHUR,
        "Schur stability",
    )


def _verify(m, xi, defect, scale) -> WitnessOutcome:
    xi = np.array(xi, dtype=float).reshape(-1)
    if xi.shape != (m.shape[0],):
        raise SystemSpecError(f"xi has length {xi.size}, expected {m.shape[0]}")
    if np.any(xi <= 0) or not np.all(np.isfinite(xi)):
        raise SystemSpecError("xi must be strictly positive")
    values = defect(m, xi)
    margin = float(np.min(-values))
    if not _strictly_below(values, scale, xi):
        return Infeasible(
            InfeasibilityReason.CONDITION_VIOLATED,
            f"supplied xi misses the strict inequality (margin {margin:.6g})",
            value=margin,
        )
    return WitnessResult(xi=xi, margin=margin, iterations=0, method=WitnessMethod.SUPPLIED)


def verify_hurwitz_witness(m, xi) -> WitnessOutcome:
    """Check m xi << 0 for a supplied xi; the margin is reported in xi's own scale."""
    m = as_const_matrix(m)
    return _verify(m, xi, _hurwitz_defect, float(np.linalg.norm(m, np.inf)))


def verify_schur_witness(m, xi) -> WitnessOutcome:
    """Check m xi << xi for a supplied xi; the margin is reported in xi's own scale."""
    m = as_const_matrix(m)
    return _verify(m, xi, _schur_defect, float(np.linalg.norm(m - np.eye(m.shape[0]), np.inf)))
