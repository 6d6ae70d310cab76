"""
The Gaussian interpolation operator on a node window.

    I(x) = sum_j a_j exp(-lambda (x - x_j)^2),    A a = (data_j)_j

Interpolants are immutable; evaluation is a pure function of (coeffs, x) and
splits x-grids into fixed blocks, so a threaded sweep reproduces the serial
result bit-for-bit.
"""

import concurrent.futures as cf
import math
from typing import Callable, List, Literal, Optional, Tuple, Union

import numpy as np
from numpy.typing import ArrayLike
from pydantic import BaseModel, ConfigDict, Field
from scipy.integrate import simpson

from src.config import numerics
from src.core.bandlimited import BandlimitedFunction
from src.core.errors import DimensionMismatch, ParameterError, ZeroData
from src.core.gram import DecayFit, GramSystem, assemble, fit_exponential_decay, solve
from src.core.kernel import Real, ScaleParameter, as_finite, check_lambda, gaussian_ft
from src.core.nodes import NodeWindow
from src.utils.logger import get_logger

logger = get_logger("gaussinterp")

_BLOCK = 2048


class GaussianInterpolant(BaseModel):
    """(lambda, window, coefficients) triple with the data it interpolates."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    window: NodeWindow
    lam: ScaleParameter
    coeffs: np.ndarray = Field(repr=False)
    data: np.ndarray = Field(repr=False)
    source: Literal["from_function", "from_sequence"]
    function_id: Optional[str] = None

    def __call__(self, x: ArrayLike) -> Real:
        return evaluate(self, x)

    @property
    def spectrum(self) -> "InterpolantSpectrum":
        return InterpolantSpectrum(interpolant=self)

    def node_residual(self) -> float:
        """max_k |I(x_k) - data_k|."""
        return float(np.max(np.abs(np.asarray(evaluate(self, self.window.x)) - self.data)))


class InterpolantSpectrum(BaseModel):
    """Fourier transform of an interpolant, sqrt(pi/lambda) e^{-u^2/4lambda} Psi(u)."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    interpolant: GaussianInterpolant

    def __call__(self, u: ArrayLike) -> Union[complex, np.ndarray]:
        return spectrum_value(self, u)


# ============================================================================
# CONSTRUCTION
# ============================================================================

def _system_for(window: NodeWindow, lam: float, system: Optional[GramSystem]) -> GramSystem:
    if system is None:
        return assemble(window, lam)
    if system.size != window.size or system.lam != lam:
        raise DimensionMismatch(
            f"Gram system ({system.size} nodes, lambda={system.lam:g}) does not belong to "
            f"{window.descriptor} with lambda={lam:g}"
        )
    return system


def _coefficients(window: NodeWindow, lam: float, data: np.ndarray,
                  system: Optional[GramSystem]) -> np.ndarray:
    # zero data has the unique solution a = 0; no factorization is needed
    if not np.any(data):
        logger.debug(f"zero data on {window.descriptor}; coefficients are exactly zero")
        return np.zeros_like(data)
    return solve(_system_for(window, lam, system), data)


def interpolate_function(f: Callable[[np.ndarray], ArrayLike], window: NodeWindow, lam: float,
                         system: Optional[GramSystem] = None) -> GaussianInterpolant:
    """Interpolate f at the nodes of ``window``."""
    lam = check_lambda(lam)
    data = np.asarray(f(window.x), dtype=float).reshape(window.size)
    if not np.all(np.isfinite(data)):
        raise ParameterError("samples of f at the nodes are not finite", param="fn")
    coeffs = _coefficients(window, lam, data, system)
    function_id = f.function_id if isinstance(f, BandlimitedFunction) else None
    return GaussianInterpolant(window=window, lam=lam, coeffs=coeffs, data=data,
                               source="from_function", function_id=function_id)


def interpolate_sequence(y: ArrayLike, window: NodeWindow, lam: float,
                         system: Optional[GramSystem] = None) -> GaussianInterpolant:
    """Interpolate the data vector y given directly at the nodes."""
    lam = check_lambda(lam)
    data = np.asarray(y, dtype=float)
    if data.shape != (window.size,):
        raise DimensionMismatch(f"data has shape {data.shape}, window has {window.size} nodes")
    if not np.all(np.isfinite(data)):
        raise ParameterError("data must be finite", param="y")
    coeffs = _coefficients(window, lam, data, system)
    return GaussianInterpolant(window=window, lam=lam, coeffs=coeffs, data=data,
                               source="from_sequence")


def fundamental_function(window: NodeWindow, lam: float, l: int,
                         system: Optional[GramSystem] = None) -> GaussianInterpolant:
    """L_l, the interpolant of the unit vector at the node labelled l."""
    position = window.position(l)
    unit = np.zeros(window.size)
    unit[position] = 1.0
    return interpolate_sequence(unit, window, lam, system)


# ============================================================================
# EVALUATION
# ============================================================================

def _evaluate_block(nodes: np.ndarray, coeffs: np.ndarray, lam: float, x: np.ndarray) -> np.ndarray:
    diff = np.subtract.outer(x, nodes)
    return np.exp(-lam * (diff * diff)) @ coeffs


def evaluate(interp: GaussianInterpolant, x: ArrayLike, workers: Optional[int] = None) -> Real:
    """
    Evaluate sum_j a_j exp(-lambda (x - x_j)^2) at x.

    With ``workers`` > 1 the fixed-size blocks of a flattened grid are spread
    over a thread pool; block boundaries never depend on the worker count.
    """
    arr = as_finite(x)
    flat = arr.reshape(-1)
    nodes, coeffs, lam = interp.window.x, interp.coeffs, interp.lam
    blocks = [flat[i:i + _BLOCK] for i in range(0, flat.size, _BLOCK)] or [flat]

    if workers is not None and workers > 1 and len(blocks) > 1:
        with cf.ThreadPoolExecutor(max_workers=workers) as executor:
            futures = [executor.submit(_evaluate_block, nodes, coeffs, lam, b) for b in blocks]
            parts = [fut.result() for fut in futures]
    else:
        parts = [_evaluate_block(nodes, coeffs, lam, b) for b in blocks]

    values = np.concatenate(parts).reshape(arr.shape)
    return float(values) if np.ndim(x) == 0 else values


def evaluation_grid(window: NodeWindow, fraction: Optional[float] = None,
                    step: Optional[float] = None) -> np.ndarray:
    """
    Points mid + k*step, |k| <= K, covering ``fraction`` of the window span.

    The midpoint is always a grid point. The default step is min(q, 1) / 20.
    """
    fraction = numerics.central_fraction if fraction is None else float(fraction)
    if not (0.0 < fraction <= 1.0):
        raise ParameterError(f"fraction must lie in (0, 1], got {fraction!r}", param="fraction")
    step = default_step(window) if step is None else float(step)
    if not math.isfinite(step) or step <= 0.0:
        raise ParameterError(f"step must be positive, got {step!r}", param="step")
    a, b = window.central_interval(fraction)
    mid = 0.5 * (a + b)
    k_max = int(math.floor((0.5 * (b - a)) / step + 1e-9))
    return mid + step * np.arange(-k_max, k_max + 1, dtype=float)


def default_step(window: NodeWindow) -> float:
    return min(window.q, 1.0) / numerics.grid_divisor


# ============================================================================
# SPECTRUM
# ============================================================================

def periodic_factor(interp: GaussianInterpolant, u: ArrayLike) -> Union[complex, np.ndarray]:
    """Psi(u) = sum_j a_j e^{-i x_j u}."""
    arr = as_finite(u, "u")
    values = np.exp(-1j * np.multiply.outer(arr, interp.window.x)) @ interp.coeffs
    return complex(values) if np.ndim(u) == 0 else values


def restricted_factor(interp: GaussianInterpolant, u: ArrayLike) -> Union[complex, np.ndarray]:
    """Psi restricted to [-pi, pi], zero outside."""
    arr = as_finite(u, "u")
    values = np.where(np.abs(arr) <= np.pi, periodic_factor(interp, arr), 0.0 + 0.0j)
    return complex(values) if np.ndim(u) == 0 else values


def spectrum_value(spec: InterpolantSpectrum, u: ArrayLike) -> Union[complex, np.ndarray]:
    """sqrt(pi/lambda) e^{-u^2/(4 lambda)} sum_j a_j e^{-i x_j u}."""
    interp = spec.interpolant
    arr = as_finite(u, "u")
    values = np.asarray(gaussian_ft(interp.lam, arr)) * periodic_factor(interp, arr)
    return complex(values) if np.ndim(u) == 0 else values


# ============================================================================
# NORMS AND DECAY
# ============================================================================

def _lp_norm_values(values: np.ndarray, x: np.ndarray, p: float) -> float:
    if math.isinf(p):
        return float(np.max(np.abs(values)))
    return float(simpson(np.abs(values) ** p, x=x) ** (1.0 / p))


def check_p(p: Union[float, str]) -> float:
    """Accept 1, 2 or inf (also the strings '1', '2', 'inf')."""
    try:
        value = float(p)
    except (TypeError, ValueError) as e:
        raise ParameterError(f"p must be 1, 2 or inf, got {p!r}", param="p") from e
    if value not in (1.0, 2.0, math.inf):
        raise ParameterError(f"p must be 1, 2 or inf, got {p!r}", param="p")
    return value


def lp_norm_ratio(window: NodeWindow, lam: float, y: ArrayLike, p: Union[float, str],
                  system: Optional[GramSystem] = None) -> float:
    """
    ||I(y, .)||_{L_p} / ||y||_{l_p}.

    The L_p norm is a Simpson quadrature (grid maximum for p = inf) over the
    window span with step q/20; tails outside the span are ignored.
    """
    p = check_p(p)
    data = np.asarray(y, dtype=float)
    if not np.any(data):
        raise ZeroData("lp_norm_ratio needs a nonzero data vector")
    interp = interpolate_sequence(data, window, lam, system)
    a, b = window.span
    panels = int(math.ceil((b - a) / (window.q / numerics.grid_divisor)))
    panels += panels % 2
    x = np.linspace(a, b, panels + 1)
    values = np.asarray(evaluate(interp, x))
    if math.isinf(p):
        denominator = float(np.max(np.abs(data)))
    else:
        denominator = float(np.sum(np.abs(data) ** p) ** (1.0 / p))
    return _lp_norm_values(values, x, p) / denominator


def fundamental_decay_samples(interp: GaussianInterpolant, fraction: Optional[float] = None,
                              samples_per_interval: int = 21) -> Tuple[np.ndarray, np.ndarray]:
    """
    Maxima of |I| over each node interval inside the central part of the window.

    Returns (distances, maxima), distances measured from the argmax to the
    node carrying the unit datum.
    """
    window = interp.window
    a, b = window.central_interval(fraction if fraction is not None else numerics.central_fraction)
    centre = window.x[int(np.argmax(np.abs(interp.data)))]
    x = window.x
    distances: List[float] = []
    maxima: List[float] = []
    for left, right in zip(x[:-1], x[1:]):
        if left < a or right > b:
            continue
        t = np.linspace(left, right, samples_per_interval)
        values = np.abs(np.asarray(evaluate(interp, t)))
        k = int(np.argmax(values))
        distances.append(abs(float(t[k]) - centre))
        maxima.append(float(values[k]))
    return np.asarray(distances), np.asarray(maxima)


def measure_fundamental_decay(window: NodeWindow, lam: float, l: int = 0,
                              system: Optional[GramSystem] = None) -> DecayFit:
    """Fit |L_l(x)| ~ beta e^{-rho |x - x_l|} on the central half-window."""
    fundamental = fundamental_function(window, lam, l, system)
    distances, maxima = fundamental_decay_samples(fundamental)
    fit = fit_exponential_decay(distances, maxima)
    logger.debug(f"fundamental decay {window.descriptor}, lambda={lam:g}, l={l}: "
                 f"rho={fit.rate:.6g}, beta={fit.amplitude:.6g}")
    return fit
