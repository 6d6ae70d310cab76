"""
Gaussian Gram systems A(j, k) = exp(-lambda (x_j - x_k)^2).

A is symmetric positive definite for every lambda > 0 and distinct nodes;
systems are factorized once by Cholesky (dense, or banded when a cutoff
turns the far off-diagonals into exact zeros) and solved read-only.
"""

import math
from typing import Any, Literal, Optional, Tuple

import numpy as np
from numpy.typing import ArrayLike
from pydantic import BaseModel, ConfigDict, Field
from scipy.linalg import (
    LinAlgError,
    cho_factor,
    cho_solve,
    cho_solve_banded,
    cholesky_banded,
    eigvalsh,
)

from src.config import numerics
from src.core.errors import DimensionMismatch, FactorizationFailure, InsufficientData, ParameterError
from src.core.kernel import ScaleParameter, check_lambda
from src.core.nodes import NodeWindow
from src.utils.logger import get_logger

logger = get_logger("gaussinterp")


class GramSystem(BaseModel):
    """Assembled and factorized Gram matrix of a node window."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    window: NodeWindow
    lam: ScaleParameter
    matrix: np.ndarray = Field(repr=False)
    band_cutoff: float = Field(ge=0)
    bandwidth: int = Field(ge=0)
    storage: Literal["dense", "banded"]
    factor: Any = Field(repr=False)

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    @property
    def min_pivot(self) -> float:
        """Smallest squared diagonal entry of the Cholesky factor."""
        if self.storage == "banded":
            diagonal = self.factor[-1]
        else:
            diagonal = np.diag(self.factor[0])
        return float(np.min(diagonal * diagonal))


def _bandwidth(matrix: np.ndarray) -> int:
    rows, cols = np.nonzero(matrix)
    return int(np.max(np.abs(rows - cols))) if rows.size else 0


def assemble(window: NodeWindow, lam: float, band_cutoff: float = 0.0) -> GramSystem:
    """
    Build and factorize the Gram matrix of ``window``.

    Entries below ``band_cutoff`` are stored as exact zeros; if that leaves a
    bandwidth smaller than the matrix, banded Cholesky storage is used.
    """
    lam = check_lambda(lam)
    band_cutoff = float(band_cutoff)
    if not (0.0 <= band_cutoff <= numerics.band_cutoff_max):
        raise ParameterError(
            f"band_cutoff must lie in [0, {numerics.band_cutoff_max:g}], got {band_cutoff!r}",
            param="band_cutoff",
        )

    x = window.x
    diff = np.subtract.outer(x, x)
    matrix = np.exp(-lam * (diff * diff))
    if band_cutoff > 0.0:
        matrix[matrix < band_cutoff] = 0.0

    n = x.size
    bandwidth = _bandwidth(matrix)
    storage = "banded" if band_cutoff > 0.0 and bandwidth < n - 1 else "dense"
    try:
        if storage == "banded":
            # upper form: ab[u + i - j, j] = a[i, j] for i <= j
            ab = np.zeros((bandwidth + 1, n))
            for offset in range(bandwidth + 1):
                ab[bandwidth - offset, offset:] = np.diagonal(matrix, offset)
            factor = cholesky_banded(ab, lower=False)
        else:
            factor = cho_factor(matrix, lower=True)
    except LinAlgError as e:
        logger.warning(f"Cholesky failed for {window.descriptor}, lambda={lam:g}: {e}")
        raise FactorizationFailure(
            f"Gram matrix lost positive definiteness numerically "
            f"({window.descriptor}, lambda={lam:g}, q*sqrt(lambda)={window.q * math.sqrt(lam):.3g})"
        ) from e

    logger.debug(f"Assembled {n}x{n} Gram matrix ({storage}, bandwidth {bandwidth}) "
                 f"for {window.descriptor}, lambda={lam:g}")
    return GramSystem(window=window, lam=lam, matrix=matrix, band_cutoff=band_cutoff,
                      bandwidth=bandwidth, storage=storage, factor=factor)


def solve(system: GramSystem, rhs: ArrayLike) -> np.ndarray:
    """
    Solve A a = rhs (rhs may be a vector or a matrix with one column per system).

    Zero right-hand sides return exact zeros without touching the factor.
    """
    b = np.asarray(rhs, dtype=float)
    if b.ndim not in (1, 2) or b.shape[0] != system.size:
        raise DimensionMismatch(
            f"right-hand side has shape {b.shape}, expected leading dimension {system.size}"
        )
    if not np.any(b):
        return np.zeros_like(b)
    if system.storage == "banded":
        return cho_solve_banded((system.factor, False), b)
    return cho_solve(system.factor, b)


def inverse_column(system: GramSystem, l: int) -> np.ndarray:
    """Column A^{-1}(., l) for the node labelled l."""
    position = system.window.position(l)
    unit = np.zeros(system.size)
    unit[position] = 1.0
    return solve(system, unit)


def spectral_bounds(system: GramSystem) -> Tuple[float, float]:
    """Measured extreme eigenvalues of A (stand-in for the lower bound theta)."""
    eigenvalues = eigvalsh(system.matrix)
    return float(eigenvalues[0]), float(eigenvalues[-1])


# ============================================================================
# DECAY FITS
# ============================================================================

class DecayFit(BaseModel):
    """Least-squares fit |v(d)| ~ amplitude * exp(-rate * d) in log space."""
    model_config = ConfigDict(frozen=True)

    amplitude: float = Field(gt=0)
    rate: float
    residual: float = Field(ge=0)
    noise_floor: float = Field(gt=0)
    samples: int = Field(ge=0)

    def envelope(self, distance: ArrayLike, factor: Optional[float] = None,
                 rate_scale: Optional[float] = None) -> np.ndarray:
        """Loose envelope factor * amplitude * exp(-rate_scale * rate * d)."""
        factor = numerics.envelope_factor if factor is None else factor
        rate_scale = numerics.envelope_rate_scale if rate_scale is None else rate_scale
        d = np.abs(np.asarray(distance, dtype=float))
        return factor * self.amplitude * np.exp(-rate_scale * self.rate * d)


def fit_exponential_decay(distances: ArrayLike, magnitudes: ArrayLike,
                          noise_floor: Optional[float] = None) -> DecayFit:
    """Fit log|v| = intercept + slope * d over samples above the noise floor."""
    floor = numerics.noise_floor if noise_floor is None else float(noise_floor)
    d = np.abs(np.asarray(distances, dtype=float))
    v = np.abs(np.asarray(magnitudes, dtype=float))
    keep = v > floor
    if np.count_nonzero(keep) < 4:
        raise InsufficientData(
            f"only {int(np.count_nonzero(keep))} samples above noise floor {floor:g}; need 4"
        )
    d, logv = d[keep], np.log(v[keep])
    slope, intercept = np.polyfit(d, logv, 1)
    residual = float(np.sqrt(np.mean((logv - (intercept + slope * d)) ** 2)))
    return DecayFit(amplitude=float(math.exp(intercept)), rate=float(-slope),
                    residual=residual, noise_floor=floor, samples=int(d.size))


def central_inverse_column(system: GramSystem) -> Tuple[np.ndarray, np.ndarray]:
    """Central column of A^{-1} and the signed index offsets s from its centre."""
    centre = system.size // 2
    unit = np.zeros(system.size)
    unit[centre] = 1.0
    column = solve(system, unit)
    return np.arange(system.size) - centre, column


def measure_inverse_decay(system: GramSystem, noise_floor: Optional[float] = None) -> DecayFit:
    """
    Fit the off-diagonal decay of the central column of A^{-1}.

    Only the central half of the indices enters the fit, away from the
    truncation edges.
    """
    if system.size < 7:
        raise ParameterError(f"decay fit needs at least 7 nodes, got {system.size}", param="n")
    offsets, column = central_inverse_column(system)
    keep = np.abs(offsets) <= (system.size - 1) // 4
    fit = fit_exponential_decay(offsets[keep], column[keep], noise_floor)
    logger.debug(f"inverse decay {system.window.descriptor}, lambda={system.lam:g}: "
                 f"rate={fit.rate:.6g}, amplitude={fit.amplitude:.6g}, rms={fit.residual:.3g}")
    return fit
