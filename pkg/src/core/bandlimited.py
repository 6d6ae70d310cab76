"""
Paley-Wiener test functions: spectrum supported in [-pi, pi], exact evaluation.

Every function is a BandlimitedFunction carrying its kind, parameters, known
L2 norm (or None) and an evaluator that accepts scalars or numpy arrays.
"""

import math
from typing import Any, Callable, Dict, Literal, Optional, Sequence, Tuple

import numpy as np
from numpy.typing import ArrayLike
from pydantic import BaseModel, ConfigDict, Field
from scipy.integrate import simpson

from src.config import numerics
from src.core.errors import DivergentDerivative, ParameterError
from src.core.kernel import Real
from src.utils.logger import get_logger

logger = get_logger("gaussinterp")

FunctionKind = Literal["sinc", "shifted_sinc_combo", "fejer_square", "trig_spectrum", "higgins_g"]


class BandlimitedFunction(BaseModel):
    """Evaluable function whose Fourier transform vanishes outside [-pi, pi]."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kind: FunctionKind
    params: Dict[str, Any] = Field(default_factory=dict)
    l2_norm: Optional[float] = Field(default=None, ge=0)
    evaluator: Callable[[np.ndarray], np.ndarray] = Field(exclude=True, repr=False)

    def __call__(self, x: ArrayLike) -> Real:
        arr = np.asarray(x, dtype=float)
        values = np.asarray(self.evaluator(arr), dtype=float)
        return float(values) if np.ndim(x) == 0 else values

    @property
    def function_id(self) -> str:
        """Stable textual identifier, e.g. ``shifted_sinc_combo(shifts=0,3;weights=3,4)``."""
        if not self.params:
            return self.kind
        body = ";".join(f"{k}={_format_param(v)}" for k, v in sorted(self.params.items()))
        return f"{self.kind}({body})"

    def scaled(self, factor: float) -> "BandlimitedFunction":
        """Return factor * self (still bandlimited)."""
        norm = None if self.l2_norm is None else abs(factor) * self.l2_norm
        base = self.evaluator
        params = dict(self.params, scale=factor * self.params.get("scale", 1.0))
        return BandlimitedFunction(
            kind=self.kind, params=params, l2_norm=norm,
            evaluator=lambda x: factor * base(x),
        )


def _format_param(value: Any) -> str:
    if isinstance(value, (list, tuple)):
        return ",".join(_format_param(v) for v in value)
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _sinpi(x: np.ndarray) -> np.ndarray:
    """sin(pi x) with exact zeros at integers (argument reduced by rint)."""
    n = np.rint(x)
    frac = x - n  # exact for |x| < 2**52
    sign = np.where(np.fmod(n, 2.0) == 0.0, 1.0, -1.0)
    return sign * np.sin(np.pi * frac)


def sinc(x: ArrayLike) -> Real:
    """
    sin(pi x) / (pi x) with sinc(0) = 1.

    For |x| < 1e-6 the series 1 - (pi x)^2/6 + (pi x)^4/120 is used.
    """
    arr = np.asarray(x, dtype=float)
    px = np.pi * arr
    small = np.abs(arr) < numerics.sinc_series_cutoff
    safe = np.where(small, 1.0, px)
    series = 1.0 - px ** 2 / 6.0 + px ** 4 / 120.0
    result = np.where(small, series, _sinpi(arr) / safe)
    return float(result) if np.ndim(x) == 0 else result


def sinc_function() -> BandlimitedFunction:
    """The cardinal sine itself, with unit L2 norm."""
    return BandlimitedFunction(kind="sinc", l2_norm=1.0, evaluator=lambda x: sinc(x))


def pw_combo(shifts: Sequence[float], weights: Sequence[float]) -> BandlimitedFunction:
    """
    Finite combination x -> sum_k w_k sinc(x - tau_k).

    Integer shifts are orthonormal, so the norm is sqrt(sum w_k^2) when the
    shifts are distinct integers; otherwise the norm is left unknown.
    """
    tau = np.asarray(shifts, dtype=float)
    w = np.asarray(weights, dtype=float)
    if tau.ndim != 1 or w.ndim != 1 or tau.shape != w.shape:
        raise ParameterError(
            f"shifts and weights must have equal lengths, got {tau.size} and {w.size}",
            param="weights",
        )
    if tau.size == 0:
        raise ParameterError("at least one shift is required", param="shifts")
    if not (np.all(np.isfinite(tau)) and np.all(np.isfinite(w))):
        raise ParameterError("shifts and weights must be finite", param="shifts")

    norm: Optional[float] = None
    if np.all(tau == np.rint(tau)) and np.unique(tau).size == tau.size:
        norm = float(math.sqrt(float(np.sum(w * w))))

    def evaluate(x: np.ndarray) -> np.ndarray:
        return np.asarray(sinc(np.subtract.outer(x, tau))) @ w

    return BandlimitedFunction(
        kind="shifted_sinc_combo",
        params={"shifts": [float(t) for t in tau], "weights": [float(v) for v in w]},
        l2_norm=norm,
        evaluator=evaluate,
    )


def fejer_square() -> BandlimitedFunction:
    """sinc(x/2)^2: triangular spectrum on [-pi, pi], norm sqrt(4/3)."""
    return BandlimitedFunction(
        kind="fejer_square",
        l2_norm=math.sqrt(4.0 / 3.0),
        evaluator=lambda x: np.asarray(sinc(x / 2.0)) ** 2,
    )


def trig_spectrum_function(coeffs: Sequence[complex]) -> BandlimitedFunction:
    """
    Function with spectrum F(x) = sum_{m=-M..M} c_m e^{imx} on [-pi, pi].

    By the inversion formula f(t) = sum_m c_m sinc(t + m). The output is real
    exactly when F is Hermitian, F(-x) = conj(F(x)); in this basis that means
    real coefficients, so any nonzero imaginary part is rejected.
    """
    c = np.asarray(coeffs, dtype=complex)
    if c.ndim != 1 or c.size % 2 != 1:
        raise ParameterError("coefficients must be indexed -M..M (odd length)", param="coeffs")
    scale = max(1.0, float(np.max(np.abs(c))))
    if np.any(np.abs(c.imag) > 1e-12 * scale):
        raise ParameterError(
            "spectrum is not Hermitian: coefficients must be real for a real-valued function",
            param="coeffs",
        )
    real = c.real.copy()
    m_max = (real.size - 1) // 2
    m = np.arange(-m_max, m_max + 1, dtype=float)

    def evaluate(t: np.ndarray) -> np.ndarray:
        return np.asarray(sinc(np.add.outer(t, m))) @ real

    return BandlimitedFunction(
        kind="trig_spectrum",
        params={"coeffs": [float(v) for v in real]},
        l2_norm=float(math.sqrt(float(np.sum(real * real)))),
        evaluator=evaluate,
    )


def check_kadec_parameter(c: float) -> float:
    value = float(c)
    if not math.isfinite(value) or value == 0.0 or abs(value) >= 0.5:
        raise ParameterError(f"Kadec parameter must satisfy 0 < |c| < 1/2, got {c!r}", param="c")
    return value


def kadec_node(c: float, l: int) -> float:
    """x_l = l + c^2 / l for l != 0, x_0 = 0."""
    if l == 0:
        return 0.0
    return l + c * c / l


def higgins_g(c: float) -> Tuple[Callable[[ArrayLike], Real], Callable[[int], BandlimitedFunction]]:
    """
    Closed-form generating function for the nodes x_j = j + c^2/j.

        G(x) = x [cos(pi sqrt(x^2 - 4c^2)) - cos(pi x)] / (2 sinh(pi c))

    For x^2 < 4c^2 the root is imaginary and the first cosine becomes
    cosh(pi sqrt(4c^2 - x^2)). Returns (G, factory) where factory(l) builds
    G_l(x) = G(x) / ((x - x_l) G'(x_l)), with G_l(x_m) = delta_lm.
    """
    c = check_kadec_parameter(c)
    denom = 2.0 * math.sinh(math.pi * c)
    four_c2 = 4.0 * c * c

    def big_g(x: ArrayLike) -> Real:
        arr = np.asarray(x, dtype=float)
        s2 = arr * arr - four_c2
        root = np.sqrt(np.abs(s2))
        first = np.where(s2 >= 0.0, np.cos(np.pi * root), np.cosh(np.pi * root))
        values = arr * (first - np.cos(np.pi * arr)) / denom
        return float(values) if np.ndim(x) == 0 else values

    def derivative(x0: float) -> float:
        h = numerics.fd_step

        def central(step: float) -> float:
            return (big_g(x0 + step) - big_g(x0 - step)) / (2.0 * step)

        # Richardson: cancels the O(h^2) term
        return (4.0 * central(h / 2.0) - central(h)) / 3.0

    def factory(l: int) -> BandlimitedFunction:
        l = int(l)
        x_l = kadec_node(c, l)
        slope = derivative(x_l)
        if abs(slope) < numerics.derivative_floor:
            raise DivergentDerivative(f"|G'(x_{l})| = {abs(slope):.3e} is below the derivative floor")
        logger.debug(f"higgins_g c={c} l={l}: x_l={x_l:.12g}, G'(x_l)={slope:.12g}")

        def evaluate(x: np.ndarray) -> np.ndarray:
            offset = x - x_l
            near = np.abs(offset) < 1e-9
            safe = np.where(near, 1.0, offset)
            return np.where(near, 1.0, np.asarray(big_g(x)) / (safe * slope))

        return BandlimitedFunction(kind="higgins_g", params={"c": c, "l": l}, evaluator=evaluate)

    return big_g, factory


def l2_error(
    f: Callable[[np.ndarray], ArrayLike],
    g: Callable[[np.ndarray], ArrayLike],
    interval: Tuple[float, float],
    step: float,
) -> float:
    """Composite-Simpson approximation of (int_a^b |f - g|^2)^(1/2)."""
    a, b = float(interval[0]), float(interval[1])
    if not (math.isfinite(a) and math.isfinite(b)) or a >= b:
        raise ParameterError(f"interval must satisfy a < b, got ({a}, {b})", param="interval")
    if not math.isfinite(step) or step <= 0.0:
        raise ParameterError(f"step must be positive, got {step}", param="step")
    n = int(math.ceil((b - a) / step))
    n += n % 2  # Simpson needs an even number of panels
    x = np.linspace(a, b, n + 1)
    diff = np.asarray(f(x), dtype=float) - np.asarray(g(x), dtype=float)
    if not np.all(np.isfinite(diff)):
        raise ParameterError("non-finite samples in l2_error", param="f")
    return float(math.sqrt(max(simpson(diff * diff, x=x), 0.0)))


def zero_function(x: np.ndarray) -> np.ndarray:
    """The zero function, convenient as the second argument of l2_error."""
    return np.zeros_like(np.asarray(x, dtype=float))


def _parse_floats(text: str, key: str) -> list:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        raise ParameterError(f"cannot parse {key}={text!r}", param="fn") from e


def parse_function_spec(spec: str) -> BandlimitedFunction:
    """
    Build a test function from a selector string.

    Examples: ``kind=sinc``, ``kind=combo;shifts=0,3;weights=3,4``,
    ``kind=fejer``, ``kind=trig;coeffs=0.5,1,0.5``, ``kind=higgins;c=0.2;l=0``.
    A bare element is the kind: ``sinc`` and ``higgins;c=0.2`` are accepted.
    """
    fields: Dict[str, str] = {}
    for part in spec.split(";"):
        part = part.strip()
        if not part:
            continue
        key, value = part.split("=", 1) if "=" in part else ("kind", part)
        key = key.strip()
        if not key or key in fields:
            raise ParameterError(f"malformed function spec element {part!r}", param="fn")
        fields[key] = value.strip()

    kind = fields.get("kind", "sinc")
    if kind == "sinc":
        return sinc_function()
    if kind == "combo":
        return pw_combo(_parse_floats(fields.get("shifts", ""), "shifts"),
                        _parse_floats(fields.get("weights", ""), "weights"))
    if kind == "fejer":
        return fejer_square()
    if kind == "trig":
        return trig_spectrum_function(_parse_floats(fields.get("coeffs", ""), "coeffs"))
    if kind == "higgins":
        c_values = _parse_floats(fields.get("c", ""), "c")
        if len(c_values) != 1:
            raise ParameterError("higgins requires exactly one c", param="fn")
        try:
            l = int(fields.get("l", "0"))
        except ValueError as e:
            raise ParameterError(f"cannot parse l={fields.get('l')!r}", param="fn") from e
        _, factory = higgins_g(c_values[0])
        return factory(l)
    raise ParameterError(f"unknown function kind {kind!r}", param="fn")
