"""
Experiment drivers.

Each experiment is split into independent cells (one per lambda, N or
family). Cells run on a thread pool and are gathered in submission order, so
the emitted rows never depend on scheduling.
"""

import concurrent.futures as cf
import math
from typing import Callable, Dict, List, Optional, Sequence, Tuple, TypeVar

import numpy as np

from src.config import numerics, settings
from src.core.bandlimited import BandlimitedFunction, higgins_g, l2_error, sinc_function, zero_function
from src.core.errors import InsufficientData, ParameterError, ZeroData
from src.core.gram import assemble, measure_inverse_decay, spectral_bounds
from src.core.interp1d import (
    check_p,
    default_step,
    evaluation_grid,
    fundamental_function,
    interpolate_function,
    lp_norm_ratio,
    measure_fundamental_decay,
)
from src.core.interp2d import interpolate_product, sup_grid_error
from src.core.kernel import check_lambda
from src.core.nodes import (
    NodeWindow,
    kadec_nodes,
    make_window,
    punctured_integer_nodes,
    rademacher,
    riesz_bounds_estimate,
)
from src.experiments.reports import (
    BoundednessReport,
    BoundednessRow,
    ConvergenceReport,
    ConvergenceRow,
    CounterexampleReport,
    CounterexampleRow,
    DecayReport,
    DecayRow,
    GridConvergenceReport,
    GridConvergenceRow,
    LevinsonReport,
    LevinsonRow,
    LpRow,
    LpSweepReport,
    RieszReport,
    RieszRow,
)
from src.utils.logger import get_logger

logger = get_logger("gaussinterp")

T = TypeVar("T")
R = TypeVar("R")


# ============================================================================
# HELPERS
# ============================================================================

def map_cells(func: Callable[[T], R], cells: Sequence[T], max_workers: Optional[int] = None) -> List[R]:
    """Apply func to every cell, concurrently, returning results in cell order."""
    cells = list(cells)
    workers = settings.MAX_WORKERS if max_workers is None else max_workers
    if workers <= 1 or len(cells) <= 1:
        return [func(cell) for cell in cells]
    with cf.ThreadPoolExecutor(max_workers=min(workers, len(cells))) as executor:
        futures = [executor.submit(func, cell) for cell in cells]
        return [fut.result() for fut in futures]


def check_lambdas(lambdas: Sequence[float], decreasing: bool = False,
                  ceiling: bool = False) -> List[float]:
    values = [check_lambda(lam, "lambdas") for lam in lambdas]
    if not values:
        raise ParameterError("at least one lambda is required", param="lambdas")
    if decreasing and any(b >= a for a, b in zip(values, values[1:])):
        raise ParameterError(f"lambdas must be strictly decreasing, got {values}", param="lambdas")
    if ceiling and max(values) > numerics.lambda_ceiling:
        raise ParameterError(
            f"lambdas must not exceed {numerics.lambda_ceiling:g} here, got {max(values):g}",
            param="lambdas",
        )
    return values


def strictly_decreasing(values: Sequence[float], slack: float = 0.0) -> bool:
    return all(b < a + slack for a, b in zip(values, values[1:]))


def lp_growth(rows: Sequence[LpRow], ps: Sequence[float]) -> Tuple[Dict[str, float], bool]:
    """Relative change of max_ratio from the smallest to the largest N, and whether it stays in tolerance."""
    growth = {}
    for p in ps:
        series = [r.max_ratio for r in rows if r.p == p]
        growth[format(p, "g")] = series[-1] / series[0] - 1.0
    # shrinking ratios count against the tolerance too
    return growth, all(abs(g) < numerics.lp_growth_tolerance for g in growth.values())


def _check_riesz_family(window: NodeWindow) -> None:
    if window.family == "punctured":
        raise ParameterError("the punctured integers are not a Riesz-basis family", param="window")
    if window.family == "jittered" and window.params.get("delta", 0.0) >= 0.25:
        raise ParameterError("jittered windows need delta < 1/4 here", param="delta")


def _sup_error(f: Callable, g: Callable, grid: np.ndarray) -> float:
    return float(np.max(np.abs(np.asarray(f(grid)) - np.asarray(g(grid)))))


# ============================================================================
# CONVERGENCE
# ============================================================================

def run_convergence(f: BandlimitedFunction, window: NodeWindow,
                    lambdas: Sequence[float]) -> ConvergenceReport:
    """L2 and sup errors of I_lambda(f) on the central half-window for decreasing lambda."""
    lambdas = check_lambdas(lambdas, decreasing=True, ceiling=True)
    _check_riesz_family(window)
    interval = window.central_interval()
    step = default_step(window)
    grid = evaluation_grid(window)
    logger.info(f"Starting convergence experiment: {f.function_id} on {window.descriptor}, "
                f"{len(lambdas)} lambdas")

    def cell(lam: float) -> ConvergenceRow:
        interp = interpolate_function(f, window, lam)
        row = ConvergenceRow(
            lam=lam,
            l2_error=l2_error(f, interp, interval, step),
            sup_error=_sup_error(f, interp, grid),
            node_residual=interp.node_residual(),
            max_abs_coeff=float(np.max(np.abs(interp.coeffs))),
        )
        logger.debug(f"converge lambda={lam:g}: l2={row.l2_error:.6g}, sup={row.sup_error:.6g}")
        return row

    rows = map_cells(cell, lambdas)
    report = ConvergenceReport(
        function_id=f.function_id,
        window_descriptor=window.descriptor,
        rows=rows,
        monotone_l2=strictly_decreasing([r.l2_error for r in rows]),
        monotone_sup=strictly_decreasing([r.sup_error for r in rows]),
    )
    if not (report.monotone_l2 and report.monotone_sup):
        logger.warning(f"Convergence on {window.descriptor} is not monotone "
                       f"(l2={report.monotone_l2}, sup={report.monotone_sup})")
    logger.info("Convergence experiment finished")
    return report


def run_grid_convergence(f: BandlimitedFunction, window: NodeWindow, lambdas: Sequence[float],
                         h: Optional[BandlimitedFunction] = None) -> GridConvergenceReport:
    """Sup-grid error of the tensor interpolant of f (x) h on window x window."""
    lambdas = check_lambdas(lambdas, decreasing=True, ceiling=True)
    _check_riesz_family(window)
    h = f if h is None else h
    grid = evaluation_grid(window)
    function_id = f.function_id if h is f else f"{f.function_id}*{h.function_id}"
    logger.info(f"Starting 2D convergence experiment: {function_id} on {window.descriptor}")

    def cell(lam: float) -> GridConvergenceRow:
        interp = interpolate_product(f, h, window, window, lam)
        return GridConvergenceRow(lam=lam, sup_error=sup_grid_error(interp, f, h, grid, grid),
                                  max_abs_coeff=float(np.max(np.abs(interp.coeff_matrix))))

    rows = map_cells(cell, lambdas)
    return GridConvergenceReport(
        function_id=function_id,
        window_descriptor=window.descriptor,
        rows=rows,
        monotone=strictly_decreasing([r.sup_error for r in rows], slack=1e-12),
    )


# ============================================================================
# BOUNDEDNESS
# ============================================================================

def run_uniform_boundedness(fs: Sequence[BandlimitedFunction], window: NodeWindow,
                            lambdas: Sequence[float]) -> BoundednessReport:
    """Ratios ||I_lambda(f)|| / ||f|| (central half-window, Simpson) for every (f, lambda)."""
    fs = list(fs)
    if not fs:
        raise ParameterError("at least one test function is required", param="fn")
    lambdas = check_lambdas(lambdas, ceiling=True)
    interval = window.central_interval()
    step = default_step(window)
    logger.info(f"Starting boundedness experiment: {len(fs)} functions on {window.descriptor}")

    def cell(lam: float) -> List[BoundednessRow]:
        system = assemble(window, lam)
        rows = []
        for f in fs:
            interp = interpolate_function(f, window, lam, system)
            f_norm = l2_error(f, zero_function, interval, step)
            if f_norm == 0.0:
                raise ZeroData(f"{f.function_id} vanishes on the measurement interval")
            i_norm = l2_error(interp, zero_function, interval, step)
            rows.append(BoundednessRow(function_id=f.function_id, lam=lam, ratio=i_norm / f_norm,
                                       interpolant_norm=i_norm, function_norm=f_norm))
        return rows

    per_lambda = map_cells(cell, lambdas)
    # function-major order
    rows = [per_lambda[j][i] for i in range(len(fs)) for j in range(len(lambdas))]
    ratios = [r.ratio for r in rows]
    max_ratio, min_ratio = max(ratios), min(ratios)
    spread = max_ratio / min_ratio if min_ratio > 0 else math.inf
    bounded = spread < numerics.boundedness_spread_cap
    if not bounded:
        logger.warning(f"Ratio spread {spread:.3g} exceeds cap {numerics.boundedness_spread_cap:g}")
    return BoundednessReport(window_descriptor=window.descriptor, rows=rows, max_ratio=max_ratio,
                             min_ratio=min_ratio, spread=spread, bounded=bounded)


# ============================================================================
# COUNTEREXAMPLE / LEVINSON
# ============================================================================

def run_counterexample(n: int, lambdas: Sequence[float]) -> CounterexampleReport:
    """Interpolate sinc on the integers without the origin: every sample is 0."""
    lambdas = check_lambdas(lambdas)
    window = punctured_integer_nodes(n)
    f = sinc_function()
    grid = evaluation_grid(window)
    logger.info(f"Starting counterexample experiment on {window.descriptor}")

    def cell(lam: float) -> CounterexampleRow:
        interp = interpolate_function(f, window, lam)
        return CounterexampleRow(lam=lam, sup_error=_sup_error(f, interp, grid),
                                 max_abs_coeff=float(np.max(np.abs(interp.coeffs))))

    return CounterexampleReport(window_descriptor=window.descriptor, rows=map_cells(cell, lambdas))


def run_levinson_comparison(c: float, n: int, l: int,
                            lambdas: Sequence[float]) -> LevinsonReport:
    """Distance between the Gaussian fundamental function L_l and the closed-form G_l."""
    lambdas = check_lambdas(lambdas, decreasing=True, ceiling=True)
    window = kadec_nodes(n, c)
    window.position(l)  # IndexOutOfRange before any work
    _, factory = higgins_g(c)
    g_l = factory(l)
    grid = evaluation_grid(window)
    logger.info(f"Starting Levinson comparison: c={c}, N={n}, l={l}")

    def cell(lam: float) -> LevinsonRow:
        fundamental = fundamental_function(window, lam, l)
        return LevinsonRow(lam=lam, sup_distance=_sup_error(g_l, fundamental, grid),
                           node_distance=_sup_error(g_l, fundamental, window.x))

    rows = map_cells(cell, lambdas)
    return LevinsonReport(c=float(c), n=int(n), l=int(l), rows=rows,
                          monotone=strictly_decreasing([r.sup_distance for r in rows]))


# ============================================================================
# LP SWEEP / DECAY / RIESZ
# ============================================================================

def run_lp_sweep(family: str, lam: float, ns: Sequence[int], ps: Sequence[float],
                 trials: int, seed: int = 0, c: Optional[float] = None,
                 delta: Optional[float] = None) -> LpSweepReport:
    """Max and mean of lp_norm_ratio over Rademacher data vectors, per (N, p)."""
    lam = check_lambda(lam)
    if isinstance(trials, bool) or int(trials) != trials or trials < 1:
        raise ParameterError(f"trials must be a positive integer, got {trials!r}", param="trials")
    ns = [int(n) for n in ns]
    if not ns or any(b <= a for a, b in zip(ns, ns[1:])):
        raise ParameterError(f"ns must be a nonempty increasing list, got {ns}", param="ns")
    ps = [check_p(p) for p in ps]
    if not ps:
        raise ParameterError("at least one p is required", param="p")
    logger.info(f"Starting lp sweep: {family}, lambda={lam:g}, N in {ns}, {trials} trials")

    def cell(n: int) -> List[LpRow]:
        window = make_window(family, n, c=c, delta=delta, seed=seed)
        system = assemble(window, lam)
        ratios = {p: [] for p in ps}
        for trial in range(int(trials)):
            y = rademacher(seed, trial, window.size)
            for p in ps:
                ratios[p].append(lp_norm_ratio(window, lam, y, p, system))
        return [LpRow(n=n, p=p, max_ratio=max(ratios[p]), mean_ratio=float(np.mean(ratios[p])))
                for p in ps]

    rows = [row for group in map_cells(cell, ns) for row in group]
    growth, bounded = lp_growth(rows, ps)
    if not bounded:
        logger.warning(f"lp ratios move by more than {numerics.lp_growth_tolerance:.0%}: {growth}")
    return LpSweepReport(family=family, lam=lam, trials=int(trials), seed=int(seed), rows=rows,
                         growth=growth, bounded=bounded)


def run_decay_study(families: Sequence[str], lambdas: Sequence[float], n: int,
                    c: float = 0.2, delta: float = 0.2, seed: int = 0) -> DecayReport:
    """DecayFit of the central inverse column and of the central fundamental function."""
    if isinstance(n, bool) or int(n) != n or n < 10:
        raise ParameterError(f"decay study needs N >= 10, got {n!r}", param="n")
    families = list(families)
    if not families:
        raise ParameterError("at least one window family is required", param="families")
    lambdas = check_lambdas(lambdas)
    cells = [(family, lam) for family in families for lam in lambdas]
    logger.info(f"Starting decay study: {families} x {lambdas}, N={n}")

    def fit_row(family: str, lam: float, target: str, fit_fn: Callable, bounds: Tuple[float, float]) -> DecayRow:
        lower, upper = bounds
        try:
            fit = fit_fn()
        except InsufficientData as e:
            logger.warning(f"decay {family} lambda={lam:g} {target}: {e}")
            return DecayRow(family=family, lam=lam, target=target, min_eigenvalue=lower,
                            max_eigenvalue=upper, flagged=True, note=str(e))
        return DecayRow(family=family, lam=lam, target=target, rate=fit.rate,
                        amplitude=fit.amplitude, residual=fit.residual, samples=fit.samples,
                        min_eigenvalue=lower, max_eigenvalue=upper)

    def cell(spec) -> List[DecayRow]:
        family, lam = spec
        window = make_window(family, int(n), c=c, delta=delta, seed=seed)
        system = assemble(window, lam)
        bounds = spectral_bounds(system)
        centre = window.labels[window.size // 2]
        return [
            fit_row(family, lam, "inverse", lambda: measure_inverse_decay(system), bounds),
            fit_row(family, lam, "fundamental",
                    lambda: measure_fundamental_decay(window, lam, centre, system), bounds),
        ]

    rows = [row for group in map_cells(cell, cells) for row in group]
    return DecayReport(n=int(n), rows=rows)


def run_riesz_sweep(family: str, ns: Sequence[int], c: Optional[float] = None,
                    delta: Optional[float] = None, seed: int = 0) -> RieszReport:
    """Sinc-Gram eigenvalue bounds for a family across window sizes."""
    ns = [int(n) for n in ns]
    if not ns:
        raise ParameterError("at least one N is required", param="ns")

    def cell(n: int) -> RieszRow:
        window = make_window(family, n, c=c, delta=delta, seed=seed)
        lower, upper = riesz_bounds_estimate(window)
        return RieszRow(window=window.descriptor, size=window.size, q=window.q, Q=window.Q,
                        lower=lower, upper=upper)

    return RieszReport(rows=map_cells(cell, ns))
