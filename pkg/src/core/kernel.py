"""The Gaussian kernel g_lambda(x) = exp(-lambda x^2), its Fourier transform and tail bounds."""

import math
from typing import Annotated, Union

import numpy as np
from numpy.typing import ArrayLike
from pydantic import Field

from src.core.errors import ParameterError

# Positive, finite scaling of the squared argument
ScaleParameter = Annotated[float, Field(gt=0, allow_inf_nan=False)]

Real = Union[float, np.ndarray]


def check_lambda(lam: float, name: str = "lambda") -> float:
    """Validate a scale parameter and return it as a float."""
    try:
        value = float(lam)
    except (TypeError, ValueError) as e:
        raise ParameterError(f"{name} must be a real number, got {lam!r}", param=name) from e
    if not math.isfinite(value) or value <= 0.0:
        raise ParameterError(f"{name} must be positive and finite, got {lam!r}", param=name)
    return value


def as_finite(x: ArrayLike, name: str = "x") -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ParameterError(f"{name} must be finite", param=name)
    return arr


def _scalar_or_array(result: np.ndarray, like: ArrayLike) -> Real:
    return float(result) if np.ndim(like) == 0 else result


def gaussian(lam: float, x: ArrayLike) -> Real:
    """
    Evaluate exp(-lam * x**2).

    Even in x bit-for-bit. Underflows to exactly 0 once lam*x**2 exceeds ~745;
    callers treat that as exact band truncation.
    """
    lam = check_lambda(lam)
    arr = as_finite(x)
    return _scalar_or_array(np.exp(-lam * (arr * arr)), x)


def gaussian_ft(lam: float, u: ArrayLike) -> Real:
    """Fourier transform sqrt(pi/lam) * exp(-u**2 / (4 lam)) of the Gaussian."""
    lam = check_lambda(lam)
    arr = as_finite(u, "u")
    return _scalar_or_array(math.sqrt(math.pi / lam) * np.exp(-(arr * arr) / (4.0 * lam)), u)


def kappa(alpha: float) -> float:
    """
    Tail bound 2 e^{-alpha} / (1 - e^{-alpha}).

    Dominates sum_{l != 0} exp(-alpha (2|l| - 1)^2) for every alpha > 0.
    """
    alpha = check_lambda(alpha, "alpha")
    return 2.0 * math.exp(-alpha) / -math.expm1(-alpha)


def gaussian_symbol(lam: float, theta: ArrayLike) -> Real:
    """
    Symbol sum_k exp(-lam k^2) e^{i k theta} of the integer-node Gram matrix.

    Real and 2*pi-periodic. Every eigenvalue of a finite section
    [exp(-lam (j - k)^2)] lies in [symbol(pi), symbol(0)].
    """
    lam = check_lambda(lam)
    arr = as_finite(theta, "theta")
    # exp(-lam k^2) < 1e-18 beyond this
    k_max = int(math.ceil(math.sqrt(42.0 / lam)))
    k = np.arange(1, k_max + 1, dtype=float)
    weights = np.exp(-lam * k * k)
    total = 1.0 + 2.0 * np.cos(np.multiply.outer(arr, k)) @ weights
    return _scalar_or_array(np.asarray(total), theta)
