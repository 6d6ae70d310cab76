"""
Finite symmetric truncations of bi-infinite node sequences.

Jitter and random data come from a counter-based splitmix64 generator so
every window is bit-reproducible from (seed, counters):

    splitmix64(s):  z = (s + 0x9E3779B97F4A7C15) mod 2^64
                    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 mod 2^64
                    z = (z ^ (z >> 27)) * 0x94D049BB133111EB mod 2^64
                    return z ^ (z >> 31)

    key(seed, c1, c2, ...) = splitmix64(... splitmix64(splitmix64(seed) ^ c1) ^ c2 ...)
    uniform = (key >> 11) * 2^-53          in [0, 1)

Negative counters are reduced modulo 2^64 before mixing.
"""

import csv
import io
import json
import math
from typing import Any, Dict, List, Literal, Optional, Sequence, Tuple

import numpy as np
from numpy.typing import ArrayLike
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy.linalg import eigvalsh

from src.core.bandlimited import check_kadec_parameter, kadec_node, sinc
from src.core.errors import IndexOutOfRange, NonIncreasingError, ParameterError
from src.utils.logger import get_logger

logger = get_logger("gaussinterp")

Family = Literal["uniform", "kadec", "jittered", "punctured", "explicit"]

_MASK64 = (1 << 64) - 1
_GOLDEN_GAMMA = 0x9E3779B97F4A7C15


# ============================================================================
# COUNTER-BASED GENERATOR
# ============================================================================

def splitmix64(state: int) -> int:
    """One splitmix64 step on a 64-bit state; returns the mixed output."""
    z = (state + _GOLDEN_GAMMA) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def counter_uniform(seed: int, *counters: int) -> float:
    """Deterministic uniform draw in [0, 1) keyed by (seed, counters)."""
    z = splitmix64(int(seed) & _MASK64)
    for counter in counters:
        z = splitmix64(z ^ (int(counter) & _MASK64))
    return (z >> 11) * 2.0 ** -53


def rademacher(seed: int, trial: int, n: int) -> np.ndarray:
    """±1 vector of length n for the given (seed, trial)."""
    return np.array(
        [1.0 if counter_uniform(seed, trial, j) < 0.5 else -1.0 for j in range(n)]
    )


# ============================================================================
# WINDOW MODEL
# ============================================================================

def validate_window(nodes: ArrayLike) -> Tuple[float, float]:
    """Return the tightest spacing bounds (q, Q) of an increasing node sequence."""
    x = np.asarray(nodes, dtype=float)
    if x.ndim != 1 or x.size < 2:
        raise ParameterError("a window needs at least 2 nodes", param="nodes")
    if not np.all(np.isfinite(x)):
        raise ParameterError("nodes must be finite", param="nodes")
    gaps = np.diff(x)
    bad = np.flatnonzero(gaps <= 0.0)
    if bad.size:
        i = int(bad[0])
        raise NonIncreasingError(i, float(x[i]), float(x[i + 1]))
    return float(gaps.min()), float(gaps.max())


def _centered_labels(n: int) -> List[int]:
    return [k - (n - 1) // 2 for k in range(n)]


def _punctured_labels(n: int) -> List[int]:
    half = n // 2
    return list(range(-half, 0)) + list(range(1, half + 1))


class NodeWindow(BaseModel):
    """
    Immutable strictly increasing node window.

    ``labels`` are the integer indices j of the underlying bi-infinite
    sequence (-N..N, or -N..-1, 1..N for the punctured family); q and Q are
    recomputed from the nodes, never taken from a generator.
    """
    model_config = ConfigDict(frozen=True)

    family: Family
    params: Dict[str, Any] = Field(default_factory=dict)
    nodes: Tuple[float, ...]
    labels: Tuple[int, ...]
    q: float = Field(gt=0)
    Q: float = Field(gt=0)

    @model_validator(mode="after")
    def _check_consistency(self) -> "NodeWindow":
        if len(self.labels) != len(self.nodes):
            raise ParameterError("labels and nodes differ in length", param="labels")
        if len(self.nodes) >= 2:
            validate_window(self.nodes)
        return self

    @property
    def x(self) -> np.ndarray:
        return np.asarray(self.nodes, dtype=float)

    @property
    def size(self) -> int:
        return len(self.nodes)

    @property
    def half_width(self) -> int:
        return max(abs(label) for label in self.labels)

    @property
    def span(self) -> Tuple[float, float]:
        return self.nodes[0], self.nodes[-1]

    def central_interval(self, fraction: float = 0.5) -> Tuple[float, float]:
        """Interval of the given fraction of the span, centred on its midpoint."""
        a, b = self.span
        mid = 0.5 * (a + b)
        half = 0.5 * fraction * (b - a)
        return mid - half, mid + half

    def position(self, label: int) -> int:
        """Array position of a node label."""
        try:
            return self.labels.index(int(label))
        except ValueError:
            raise IndexOutOfRange(
                f"label {label} not in window [{self.labels[0]}, {self.labels[-1]}]"
            ) from None

    @property
    def descriptor(self) -> str:
        body = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.family}({body})" if body else self.family

    # ---- serialization ----

    def to_json_document(self) -> Dict[str, Any]:
        return {"family": self.family, "params": dict(self.params), "nodes": list(self.nodes)}

    def to_json(self) -> str:
        return json.dumps(self.to_json_document(), sort_keys=True)

    @classmethod
    def from_json_document(cls, doc: Dict[str, Any]) -> "NodeWindow":
        family = doc.get("family", "explicit")
        nodes = [float(v) for v in doc["nodes"]]
        labels = _punctured_labels(len(nodes)) if family == "punctured" else _centered_labels(len(nodes))
        return _make_window(family, dict(doc.get("params", {})), nodes, labels)

    @classmethod
    def from_json(cls, text: str) -> "NodeWindow":
        return cls.from_json_document(json.loads(text))

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\r\n")
        writer.writerow(["x"])
        for value in self.nodes:
            writer.writerow([f"{value:.17g}"])
        return buffer.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "NodeWindow":
        rows = [r for r in csv.reader(io.StringIO(text)) if r and not r[0].startswith("#")]
        if rows and rows[0][0].strip() == "x":
            rows = rows[1:]
        return explicit_nodes([float(r[0]) for r in rows])


def _make_window(family: str, params: Dict[str, Any], nodes: Sequence[float],
                 labels: Sequence[int]) -> NodeWindow:
    values = tuple(float(v) for v in nodes)
    if len(values) >= 2:
        q, big_q = validate_window(values)
    else:
        # A single node has no gaps; nominal unit spacing
        q, big_q = 1.0, 1.0
    return NodeWindow(family=family, params=params, nodes=values,
                      labels=tuple(int(j) for j in labels), q=q, Q=big_q)


def _check_half_width(n: int, minimum: int = 1) -> int:
    if isinstance(n, bool) or int(n) != n or int(n) < minimum:
        raise ParameterError(f"N must be an integer >= {minimum}, got {n!r}", param="n")
    return int(n)


# ============================================================================
# GENERATORS
# ============================================================================

def uniform_nodes(n: int) -> NodeWindow:
    """x_j = j for j in -N..N."""
    n = _check_half_width(n)
    labels = list(range(-n, n + 1))
    return _make_window("uniform", {"n": n}, [float(j) for j in labels], labels)


def kadec_nodes(n: int, c: float) -> NodeWindow:
    """x_0 = 0, x_j = j + c^2/j, x_{-j} = -x_j; a Kadec-1/4 perturbation of the integers."""
    n = _check_half_width(n)
    c = check_kadec_parameter(c)
    positive = [kadec_node(c, j) for j in range(1, n + 1)]
    offset = max(abs(x - j) for j, x in enumerate(positive, start=1))
    assert offset <= c * c + 1e-12 < 0.25, "Kadec bound violated"
    nodes = [-x for x in reversed(positive)] + [0.0] + positive
    return _make_window("kadec", {"n": n, "c": c}, nodes, range(-n, n + 1))


def jittered_nodes(n: int, delta: float, seed: int) -> NodeWindow:
    """x_j = j + u_j with u_j = delta * (2 U(seed, j) - 1), |u_j| <= delta."""
    n = _check_half_width(n)
    delta = float(delta)
    if not math.isfinite(delta) or delta < 0.0 or delta >= 0.5:
        raise ParameterError(f"jitter must satisfy 0 <= delta < 1/2, got {delta!r}", param="delta")
    seed = int(seed)
    labels = list(range(-n, n + 1))
    nodes = [j + delta * (2.0 * counter_uniform(seed, j) - 1.0) for j in labels]
    return _make_window("jittered", {"n": n, "delta": delta, "seed": seed}, nodes, labels)


def punctured_integer_nodes(n: int) -> NodeWindow:
    """The integers -N..N with the origin removed; quasi-uniform but not Riesz."""
    n = _check_half_width(n, minimum=2)
    labels = list(range(-n, 0)) + list(range(1, n + 1))
    return _make_window("punctured", {"n": n}, [float(j) for j in labels], labels)


def explicit_nodes(values: Sequence[float]) -> NodeWindow:
    """Window from user-supplied, strictly increasing nodes."""
    nodes = [float(v) for v in values]
    if not nodes:
        raise ParameterError("at least one node is required", param="nodes")
    return _make_window("explicit", {}, nodes, _centered_labels(len(nodes)))


def make_window(family: str, n: int, c: Optional[float] = None,
                delta: Optional[float] = None, seed: int = 0) -> NodeWindow:
    """Build a window by family name; used by the CLI and the experiment runners."""
    if family == "uniform":
        return uniform_nodes(n)
    if family == "kadec":
        if c is None:
            raise ParameterError("kadec windows need c", param="c")
        return kadec_nodes(n, c)
    if family == "jittered":
        if delta is None:
            raise ParameterError("jittered windows need delta", param="delta")
        return jittered_nodes(n, delta, seed)
    if family == "punctured":
        return punctured_integer_nodes(n)
    raise ParameterError(f"unknown window family {family!r}", param="window")


# ============================================================================
# RIESZ BOUNDS
# ============================================================================

def riesz_bounds_estimate(window: NodeWindow) -> Tuple[float, float]:
    """
    Extreme eigenvalues of S(j, k) = sinc(x_j - x_k).

    S is the Gram matrix of the exponentials e^{-i x_j t} on [-pi, pi]
    (normalized), so its spectrum on the truncated window is a heuristic
    proxy for the Riesz bounds (B^-2, B^2) of the infinite sequence.
    """
    x = window.x
    if x.size < 2:
        raise ParameterError("Riesz bounds need at least 2 nodes", param="nodes")
    gram = np.asarray(sinc(np.subtract.outer(x, x)))
    eigenvalues = eigvalsh(gram)
    lower, upper = float(eigenvalues[0]), float(eigenvalues[-1])
    logger.debug(f"Riesz estimate for {window.descriptor}: [{lower:.6g}, {upper:.6g}]")
    return lower, upper
