"""Admissible sector nonlinearities for simulation.

Every coordinate uses one of four shapes, all of the form f_i(x) = x * s_i(x) with
s_i bounded between the sector slopes:

- LowerEdge   f_i(x) = lower_i x
- UpperEdge   f_i(x) = upper_i x
- Blend(w)    f_i(x) = x (lower_i + (upper_i - lower_i)(1 + sin(w x))/2)
- Saturating  f_i(x) = upper_i x / (1 + x^2), only for K(0, beta]

``lower`` is delta for K[delta, beta]; K(0, beta] has no lower slope so beta/10 stands in;
K[delta, inf) has no upper slope so samples are drawn from the finite sub-sector
[delta, 4 delta].
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from ..errors import SectorViolationError, SystemSpecError
from ..models.matrices import MatrixLike, as_matrix_like, matrix_at, matrix_dim
from ..models.sector import SectorBounds, SectorKind

# stand-in lower slope for K(0, beta], as a fraction of beta
POSITIVE_SECTOR_LOWER_FRACTION = 0.1
# finite upper slope for K[delta, inf), as a multiple of delta
UNBOUNDED_SECTOR_UPPER_FACTOR = 4.0

OMEGA_RANGE = (0.5, 5.0)

MEMBERSHIP_RTOL = 1e-12

VERIFICATION_GRID = np.unique(
    np.concatenate([np.linspace(-10.0, 10.0, 2001), [0.0, -1e-6, 1e-6, -1e6, 1e6]])
)


class ShapeKind(str, Enum):
    LOWER_EDGE = "LowerEdge"
    UPPER_EDGE = "UpperEdge"
    BLEND = "Blend"
    SATURATING = "Saturating"


_CODES = {kind: code for code, kind in enumerate(ShapeKind)}


@dataclass(frozen=True)
class Shape:
    kind: ShapeKind
    omega: float = 0.0

    def __str__(self) -> str:
        if self.kind == ShapeKind.BLEND:
            return f"Blend({self.omega:.4g})"
        return self.kind.value


def sampling_slopes(sector: SectorBounds) -> Tuple[np.ndarray, np.ndarray]:
    """Finite (lower, upper) slopes that sampled shapes stay between."""
    if sector.kind == SectorKind.BOUNDED:
        return sector.delta, sector.beta
    if sector.kind == SectorKind.POSITIVE_UP_TO:
        return POSITIVE_SECTOR_LOWER_FRACTION * sector.beta, sector.beta
    return sector.delta, UNBOUNDED_SECTOR_UPPER_FACTOR * sector.delta


def allowed_shapes(sector: SectorBounds) -> Tuple[ShapeKind, ...]:
    kinds = (ShapeKind.LOWER_EDGE, ShapeKind.UPPER_EDGE, ShapeKind.BLEND)
    if sector.kind == SectorKind.POSITIVE_UP_TO:
        kinds += (ShapeKind.SATURATING,)
    return kinds


@dataclass(frozen=True, eq=False)
class ShapeParameters:
    """Vectorised shape parameters; arrays of shape (n,) or (runs, n)."""

    codes: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    omega: np.ndarray

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        with np.errstate(over="ignore", invalid="ignore"):
            branches = [
                self.lower * x,
                self.upper * x,
                x * (self.lower + (self.upper - self.lower) * (1.0 + np.sin(self.omega * x)) / 2.0),
                self.upper * x / (1.0 + x * x),
            ]
        conditions = [self.codes == _CODES[kind] for kind in ShapeKind]
        return np.select(conditions, branches)

    __call__ = evaluate


@dataclass(frozen=True, eq=False)
class NonlinearitySample:
    """A concrete diagonal nonlinearity drawn from inside a sector."""

    sector: SectorBounds
    shapes: Tuple[Shape, ...]
    seed: Optional[int] = None
    parameters: ShapeParameters = field(init=False, repr=False)

    def __post_init__(self):
        if len(self.shapes) != self.sector.n:
            raise SystemSpecError(f"{len(self.shapes)} shapes given for a sector of dimension {self.sector.n}")
        allowed = allowed_shapes(self.sector)
        for shape in self.shapes:
            if shape.kind not in allowed:
                raise SystemSpecError(f"shape {shape.kind.value} does not fit sector {self.sector.kind.value}")
        lower, upper = sampling_slopes(self.sector)
        parameters = ShapeParameters(
            codes=np.array([_CODES[shape.kind] for shape in self.shapes]),
            lower=np.array(lower, dtype=float),
            upper=np.array(upper, dtype=float),
            omega=np.array([shape.omega for shape in self.shapes], dtype=float),
        )
        object.__setattr__(self, "parameters", parameters)

    @property
    def n(self) -> int:
        return len(self.shapes)

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        """Apply f_i to coordinate i of ``x`` (shape (..., n))."""
        return self.parameters.evaluate(x)

    __call__ = evaluate

    def describe(self) -> str:
        return ", ".join(str(shape) for shape in self.shapes)


def sample_nonlinearity(
    sector: SectorBounds,
    seed: int = 0,
    kind: Optional[Union[ShapeKind, str]] = None,
    omega: Optional[float] = None,
) -> NonlinearitySample:
    """Draw an admissible nonlinearity, deterministic in ``seed``.

    Args:
        sector: Declared sector
        seed: Seed for the shape and frequency draws
        kind: Force this shape on every coordinate instead of drawing one per coordinate
        omega: Force the Blend frequency

    Returns:
        NonlinearitySample that passes ``verify_membership`` on the verification grid
    """
    rng = np.random.default_rng(seed)
    allowed = allowed_shapes(sector)
    shapes = []
    for _ in range(sector.n):
        chosen = ShapeKind(kind) if kind is not None else allowed[int(rng.integers(len(allowed)))]
        frequency = float(rng.uniform(*OMEGA_RANGE)) if omega is None else float(omega)
        shapes.append(Shape(chosen, frequency if chosen == ShapeKind.BLEND else 0.0))
    return NonlinearitySample(sector=sector, shapes=tuple(shapes), seed=seed)


def stack_parameters(samples: Sequence[NonlinearitySample]) -> ShapeParameters:
    """Stack several samples into (runs, n) parameters for batch evaluation."""
    if not samples:
        raise SystemSpecError("no nonlinearities to stack")
    params = [sample.parameters for sample in samples]
    return ShapeParameters(
        codes=np.stack([p.codes for p in params]),
        lower=np.stack([p.lower for p in params]),
        upper=np.stack([p.upper for p in params]),
        omega=np.stack([p.omega for p in params]),
    )


@dataclass(frozen=True, eq=False)
class TabulatedNonlinearity:
    """User nonlinearity given by a table, interpolated linearly per coordinate.

    The origin is added to the table; beyond the table f_i continues on the line through the
    origin and the last tabulated point.
    """

    x_table: np.ndarray
    f_table: np.ndarray

    def __post_init__(self):
        x = np.array(self.x_table, dtype=float).reshape(-1)
        f = np.array(self.f_table, dtype=float)
        if f.ndim == 1:
            f = f[:, None]
        if f.shape[0] != x.size or x.size == 0:
            raise SystemSpecError("f_table needs one row per x_table entry")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(f))):
            raise SystemSpecError("tabulated nonlinearity has non-finite entries")
        keep = x != 0
        x, f = x[keep], f[keep]
        x = np.concatenate([x, [0.0]])
        f = np.vstack([f, np.zeros((1, f.shape[1]))])
        order = np.argsort(x, kind="stable")
        x, f = x[order], f[order]
        if np.any(np.diff(x) <= 0):
            raise SystemSpecError("x_table entries must be distinct")
        object.__setattr__(self, "x_table", x)
        object.__setattr__(self, "f_table", f)

    @property
    def n(self) -> int:
        return self.f_table.shape[1]

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        out = np.empty_like(x)
        lo, hi = self.x_table[0], self.x_table[-1]
        for j in range(self.n):
            column = x[..., j]
            values = np.interp(column, self.x_table, self.f_table[:, j])
            if lo < 0:
                values = np.where(column < lo, self.f_table[0, j] / lo * column, values)
            if hi > 0:
                values = np.where(column > hi, self.f_table[-1, j] / hi * column, values)
            out[..., j] = values
        return out

    __call__ = evaluate


def verify_membership(f, sector: SectorBounds, grid: Optional[np.ndarray] = None) -> bool:
    """Check f against the sector on a scalar grid applied to every coordinate."""
    grid = VERIFICATION_GRID if grid is None else np.asarray(grid, dtype=float).reshape(-1)
    x = np.repeat(grid[:, None], sector.n, axis=1)
    return sector.contains(x, f.evaluate(x), rtol=MEMBERSHIP_RTOL)


def require_membership(f, sector: SectorBounds) -> None:
    """Raise SectorViolationError unless f passes ``verify_membership``."""
    if not verify_membership(f, sector):
        raise SectorViolationError(f"nonlinearity leaves the declared sector {sector.kind.value}")


@dataclass(frozen=True, eq=False)
class GeneralizedNonlinearity:
    """Cross-coupled nonlinearity f_ij(x_j, t) = g_ij(t) f_j(x_j).

    The system then reads dx/dt = sum_j a_ij(t) f_ij(x_j, t) + delayed terms, i.e. the
    coefficient matrices act through their Hadamard product with G(t).
    """

    base: NonlinearitySample
    gains: MatrixLike

    def __post_init__(self):
        gains = as_matrix_like(self.gains, "G")
        if matrix_dim(gains) != self.base.n:
            raise SystemSpecError("gain matrix dimension differs from the base nonlinearity")
        object.__setattr__(self, "gains", gains)

    @property
    def n(self) -> int:
        return self.base.n

    def gains_at(self, t: float) -> np.ndarray:
        return matrix_at(self.gains, t)

    def components(self, x: np.ndarray, t: float) -> np.ndarray:
        """All f_ij at scalar samples ``x`` (shape (X,)), shape (X, n, n)."""
        x = np.asarray(x, dtype=float).reshape(-1)
        base = self.base.evaluate(np.repeat(x[:, None], self.n, axis=1))
        return self.gains_at(t)[None, :, :] * base[:, None, :]
