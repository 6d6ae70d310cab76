"""Structured experiment reports and their CSV/JSON table layouts."""

from typing import Any, ClassVar, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field


class ExperimentReport(BaseModel):
    """Base class: a fixed header, one table row per cell, and a summary."""
    model_config = ConfigDict(frozen=True)

    experiment: ClassVar[str] = "experiment"
    header: ClassVar[Tuple[str, ...]] = ()
    threshold_note: ClassVar[str] = ""

    def table(self) -> List[List[Any]]:
        raise NotImplementedError

    def summary(self) -> Dict[str, Any]:
        return {}

    def comments(self) -> List[str]:
        lines = [f"experiment: {self.experiment}"]
        lines.extend(f"{key}: {value}" for key, value in self.summary().items())
        if self.threshold_note:
            lines.append(f"note: {self.threshold_note}")
        return lines


# ============================================================================
# CONVERGENCE
# ============================================================================

class ConvergenceRow(BaseModel):
    lam: float = Field(description="Scaling parameter")
    l2_error: float = Field(description="Simpson L2 error on the central half-window")
    sup_error: float = Field(description="Grid maximum of |f - I| on the central half-window")
    node_residual: float = Field(description="max_k |I(x_k) - f(x_k)|")
    max_abs_coeff: float = Field(description="max_j |a_j|")


class ConvergenceReport(ExperimentReport):
    experiment: ClassVar[str] = "converge"
    header: ClassVar[Tuple[str, ...]] = ("lambda", "l2_error", "sup_error", "node_residual", "max_abs_coeff")
    threshold_note: ClassVar[str] = (
        "monotone flags test strict decrease only; no rate in lambda is asserted"
    )

    function_id: str
    window_descriptor: str
    rows: List[ConvergenceRow]
    monotone_l2: bool
    monotone_sup: bool

    def table(self) -> List[List[Any]]:
        return [[r.lam, r.l2_error, r.sup_error, r.node_residual, r.max_abs_coeff] for r in self.rows]

    def summary(self) -> Dict[str, Any]:
        return {"function": self.function_id, "window": self.window_descriptor,
                "monotone_l2": str(self.monotone_l2).lower(),
                "monotone_sup": str(self.monotone_sup).lower()}


class GridConvergenceRow(BaseModel):
    lam: float
    sup_error: float
    max_abs_coeff: float


class GridConvergenceReport(ExperimentReport):
    experiment: ClassVar[str] = "grid2d-converge"
    header: ClassVar[Tuple[str, ...]] = ("lambda", "sup_error", "max_abs_coeff")
    threshold_note: ClassVar[str] = "decrease tested with 1e-12 slack on a finite tensor grid"

    function_id: str
    window_descriptor: str
    rows: List[GridConvergenceRow]
    monotone: bool

    def table(self) -> List[List[Any]]:
        return [[r.lam, r.sup_error, r.max_abs_coeff] for r in self.rows]

    def summary(self) -> Dict[str, Any]:
        return {"function": self.function_id, "window": self.window_descriptor,
                "monotone": str(self.monotone).lower()}


# ============================================================================
# BOUNDEDNESS
# ============================================================================

class BoundednessRow(BaseModel):
    function_id: str
    lam: float
    ratio: float = Field(description="||I(f)|| / ||f|| on the central half-window")
    interpolant_norm: float
    function_norm: float


class BoundednessReport(ExperimentReport):
    experiment: ClassVar[str] = "bounded"
    header: ClassVar[Tuple[str, ...]] = ("function_id", "lambda", "ratio", "interpolant_norm", "function_norm")
    threshold_note: ClassVar[str] = "bounded means max ratio / min ratio below the spread cap (proxy threshold)"

    window_descriptor: str
    rows: List[BoundednessRow]
    max_ratio: float
    min_ratio: float
    spread: float
    bounded: bool

    def table(self) -> List[List[Any]]:
        return [[r.function_id, r.lam, r.ratio, r.interpolant_norm, r.function_norm] for r in self.rows]

    def summary(self) -> Dict[str, Any]:
        return {"window": self.window_descriptor, "max_ratio": f"{self.max_ratio:.17g}",
                "spread": f"{self.spread:.17g}", "bounded": str(self.bounded).lower()}


# ============================================================================
# COUNTEREXAMPLE / LEVINSON
# ============================================================================

class CounterexampleRow(BaseModel):
    lam: float
    sup_error: float
    max_abs_coeff: float


class CounterexampleReport(ExperimentReport):
    experiment: ClassVar[str] = "counterexample"
    header: ClassVar[Tuple[str, ...]] = ("lambda", "sup_error", "max_abs_coeff")
    threshold_note: ClassVar[str] = "the lost sample f(0) = 1 is never recovered: sup_error stays at 1"

    window_descriptor: str
    rows: List[CounterexampleRow]

    @property
    def never_recovered(self) -> bool:
        return all(abs(r.sup_error - 1.0) <= 1e-6 for r in self.rows)

    def table(self) -> List[List[Any]]:
        return [[r.lam, r.sup_error, r.max_abs_coeff] for r in self.rows]

    def summary(self) -> Dict[str, Any]:
        return {"window": self.window_descriptor, "never_recovered": str(self.never_recovered).lower()}


class LevinsonRow(BaseModel):
    lam: float
    sup_distance: float = Field(description="Grid maximum of |L_l - G_l| on the central half-window")
    node_distance: float = Field(description="max over nodes of |L_l - G_l|")


class LevinsonReport(ExperimentReport):
    experiment: ClassVar[str] = "levinson"
    header: ClassVar[Tuple[str, ...]] = ("lambda", "sup_distance", "node_distance")
    threshold_note: ClassVar[str] = "monotone flag tests strict decrease of sup_distance only"

    c: float
    n: int
    l: int
    rows: List[LevinsonRow]
    monotone: bool

    def table(self) -> List[List[Any]]:
        return [[r.lam, r.sup_distance, r.node_distance] for r in self.rows]

    def summary(self) -> Dict[str, Any]:
        return {"c": self.c, "n": self.n, "l": self.l, "monotone": str(self.monotone).lower()}


# ============================================================================
# LP SWEEP / DECAY / RIESZ
# ============================================================================

class LpRow(BaseModel):
    n: int
    p: float
    max_ratio: float
    mean_ratio: float


class LpSweepReport(ExperimentReport):
    experiment: ClassVar[str] = "lpsweep"
    header: ClassVar[Tuple[str, ...]] = ("n", "p", "max_ratio", "mean_ratio")
    threshold_note: ClassVar[str] = "bounded means max_ratio moves by less than 20% from smallest to largest N"

    family: str
    lam: float
    trials: int
    seed: int
    rows: List[LpRow]
    growth: Dict[str, float] = Field(description="Relative growth of max_ratio per p")
    bounded: bool

    def table(self) -> List[List[Any]]:
        return [[r.n, r.p, r.max_ratio, r.mean_ratio] for r in self.rows]

    def summary(self) -> Dict[str, Any]:
        summary: Dict[str, Any] = {"family": self.family, "lambda": self.lam,
                                   "trials": self.trials, "seed": self.seed}
        summary.update({f"growth_p{p}": f"{g:.17g}" for p, g in sorted(self.growth.items())})
        summary["bounded"] = str(self.bounded).lower()
        return summary


class DecayRow(BaseModel):
    family: str
    lam: float
    target: str = Field(description="inverse (columns of A^-1) or fundamental (L_l)")
    rate: Optional[float] = None
    amplitude: Optional[float] = None
    residual: Optional[float] = None
    samples: int = 0
    min_eigenvalue: float = Field(description="measured smallest eigenvalue of A, reported in place of theta")
    max_eigenvalue: float
    flagged: bool = False
    note: str = ""


class DecayReport(ExperimentReport):
    experiment: ClassVar[str] = "decay"
    header: ClassVar[Tuple[str, ...]] = ("family", "lambda", "target", "rate", "amplitude",
                                         "residual", "samples", "min_eigenvalue", "max_eigenvalue",
                                         "flagged", "note")
    threshold_note: ClassVar[str] = "rates are fitted, not certified; flagged rows had too few entries above the noise floor"

    n: int
    rows: List[DecayRow]

    @property
    def all_rates_positive(self) -> bool:
        return all(r.rate is not None and r.rate > 0 for r in self.rows if not r.flagged)

    def table(self) -> List[List[Any]]:
        return [[r.family, r.lam, r.target, r.rate, r.amplitude, r.residual, r.samples,
                 r.min_eigenvalue, r.max_eigenvalue, r.flagged, r.note]
                for r in self.rows]

    def summary(self) -> Dict[str, Any]:
        return {"n": self.n, "all_rates_positive": str(self.all_rates_positive).lower()}


class RieszRow(BaseModel):
    window: str
    size: int
    q: float
    Q: float
    lower: float
    upper: float


class RieszReport(ExperimentReport):
    experiment: ClassVar[str] = "riesz"
    header: ClassVar[Tuple[str, ...]] = ("window", "size", "q", "Q", "lower", "upper")
    threshold_note: ClassVar[str] = "extreme eigenvalues of the truncated sinc Gram; a heuristic for the Riesz bounds"

    rows: List[RieszRow]

    def table(self) -> List[List[Any]]:
        return [[r.window, r.size, r.q, r.Q, r.lower, r.upper] for r in self.rows]
