"""
gaussinterp command line.

    gaussinterp converge --window uniform --n 40 --fn kind=sinc --lambdas 1,0.5,0.25,0.1 --out r.csv
    gaussinterp counterexample --n 20 --lambdas 1,0.1 --out c.csv
    gaussinterp --config saved_run.json

Every output file echoes the full RunConfig, and ``--config`` replays such a
document. Exit codes: 0 success, 2 usage error, 1 numerical failure.
"""

import argparse
import math
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Literal, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from src import __version__
from src.config import settings
from src.core import (
    BandlimitedFunction,
    GaussInterpError,
    IndexOutOfRange,
    ParameterError,
    assemble,
    central_inverse_column,
    evaluate2d_grid,
    evaluation_grid,
    fundamental_function,
    interpolate_function,
    interpolate_product,
    make_window,
    parse_function_spec,
    spectrum_value,
)
from src.experiments import (
    ExperimentReport,
    run_convergence,
    run_counterexample,
    run_decay_study,
    run_levinson_comparison,
    run_lp_sweep,
    run_riesz_sweep,
    run_uniform_boundedness,
)
from src.utils.export import write_matrix_csv, write_table
from src.utils.logger import get_logger, setup_logger

logger = get_logger("gaussinterp")

Command = Literal["interp", "fundamental", "spectrum", "converge", "bounded", "decay",
                  "lpsweep", "grid2d", "counterexample", "levinson", "riesz"]
COMMANDS: Tuple[str, ...] = Command.__args__

Table = Tuple[Sequence[str], List[List[Any]], List[str]]


class RunConfig(BaseModel):
    """Complete, serializable description of one CLI run."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    command: Command
    window: str = Field(default="uniform", description="Node family")
    n: int = Field(default=20, description="Window half-width N")
    c: Optional[float] = Field(default=None, description="Kadec parameter")
    delta: Optional[float] = Field(default=None, description="Jitter amplitude")
    seed: int = 0
    lam: Optional[float] = Field(default=None, description="Single scaling parameter")
    lambdas: List[float] = Field(default_factory=list)
    fns: List[str] = Field(default_factory=lambda: ["kind=sinc"])
    l: int = 0
    ps: List[str] = Field(default_factory=lambda: ["1", "2", "inf"])
    ns: List[int] = Field(default_factory=list)
    trials: int = 20
    families: List[str] = Field(default_factory=list)
    umax: float = 2.0 * math.pi
    step: Optional[float] = None
    out: Optional[str] = None
    coeffs_out: Optional[str] = None
    matrix_out: Optional[str] = None
    column_out: Optional[str] = None
    format: Literal["csv", "json"] = "csv"


# ============================================================================
# ARGUMENT PARSING
# ============================================================================

def _float_list(text: str) -> List[float]:
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _lambda_list(text: str) -> List[float]:
    values = _float_list(text)
    if any(not math.isfinite(v) or v <= 0.0 for v in values):
        raise argparse.ArgumentTypeError(f"lambdas must be strictly positive, got {text!r}")
    return values


def _int_list(text: str) -> List[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {text!r}")


def _str_list(text: str) -> List[str]:
    return [v.strip() for v in text.split(",") if v.strip()]


def _common_arguments() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--window", default="uniform",
                        choices=["uniform", "kadec", "jittered", "punctured"], help="Node family.")
    common.add_argument("--n", type=int, default=20, help="Window half-width N (default: 20).")
    common.add_argument("--c", type=float, default=None, help="Kadec parameter, 0 < |c| < 1/2.")
    common.add_argument("--delta", type=float, default=None, help="Jitter amplitude, 0 <= delta < 1/2.")
    common.add_argument("--seed", type=int, default=0, help="Seed of the counter-based generator.")
    common.add_argument("--lambda", dest="lam", type=float, default=None, help="Scaling parameter.")
    common.add_argument("--lambdas", type=_lambda_list, default=[], help="Comma-separated lambdas.")
    common.add_argument("--fn", dest="fns", action="append", default=None,
                        help="Test function, e.g. 'kind=combo;shifts=0,3;weights=3,4' (repeatable).")
    common.add_argument("--l", type=int, default=0, help="Node label of a fundamental function.")
    common.add_argument("--p", dest="ps", type=_str_list, default=["1", "2", "inf"],
                        help="Comma-separated subset of 1,2,inf.")
    common.add_argument("--ns", type=_int_list, default=[], help="Comma-separated half-widths.")
    common.add_argument("--trials", type=int, default=20, help="Random data vectors per cell.")
    common.add_argument("--families", type=_str_list, default=[], help="Comma-separated families.")
    common.add_argument("--umax", type=float, default=2.0 * math.pi, help="Frequency range for spectrum.")
    common.add_argument("--step", type=float, default=None, help="Evaluation grid step.")
    common.add_argument("--out", default=None, help="Output file (default: stdout).")
    common.add_argument("--coeffs-out", dest="coeffs_out", default=None,
                        help="Also dump the coefficient vector (interp) or matrix (grid2d).")
    common.add_argument("--matrix-out", dest="matrix_out", default=None,
                        help="Also dump the Gram matrix (decay, one family and lambda).")
    common.add_argument("--column-out", dest="column_out", default=None,
                        help="Also dump the central inverse column (decay, one family and lambda).")
    common.add_argument("--format", default="csv", choices=["csv", "json"], help="Output format.")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gaussinterp",
        description="Gaussian-kernel interpolation of bandlimited functions and its experiments.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", default=None, help="Replay a saved RunConfig JSON document.")
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    common = _common_arguments()
    for name in COMMANDS:
        subparsers.add_parser(name, parents=[common], help=f"run '{name}'")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    fields = {name: getattr(args, name) for name in RunConfig.model_fields if hasattr(args, name)}
    if fields.get("fns") is None:
        fields.pop("fns", None)
    return RunConfig(**fields)


def load_config(path: str) -> RunConfig:
    return RunConfig.model_validate_json(Path(path).read_text(encoding="utf-8"))


# ============================================================================
# COMMANDS
# ============================================================================

def _functions(cfg: RunConfig) -> List[BandlimitedFunction]:
    try:
        return [parse_function_spec(spec) for spec in cfg.fns]
    except ParameterError as e:
        raise ParameterError(str(e), param="fn") from e


def _single_function(cfg: RunConfig) -> BandlimitedFunction:
    fs = _functions(cfg)
    if len(fs) != 1:
        raise ParameterError(f"'{cfg.command}' takes exactly one --fn", param="fn")
    return fs[0]


def _require_lambda(cfg: RunConfig) -> float:
    if cfg.lam is None:
        raise ParameterError(f"'{cfg.command}' requires --lambda", param="lambda")
    return cfg.lam


def _window(cfg: RunConfig):
    return make_window(cfg.window, cfg.n, c=cfg.c, delta=cfg.delta, seed=cfg.seed)


def _report_table(report: ExperimentReport) -> Table:
    return report.header, report.table(), report.comments()


def cmd_interp(cfg: RunConfig) -> Table:
    window = _window(cfg)
    f = _single_function(cfg)
    interp = interpolate_function(f, window, _require_lambda(cfg))
    x = evaluation_grid(window, fraction=1.0, step=cfg.step)
    values = interp(x)
    if cfg.coeffs_out:
        write_matrix_csv(interp.coeffs, settings.resolve_output(cfg.coeffs_out),
                         comments=[f"coefficients of {f.function_id} on {window.descriptor}"])
    comments = [f"function: {f.function_id}", f"window: {window.descriptor}",
                f"node_residual: {interp.node_residual():.17g}"]
    return ("x", "value"), [[float(a), float(v)] for a, v in zip(x, values)], comments


def cmd_fundamental(cfg: RunConfig) -> Table:
    window = _window(cfg)
    fundamental = fundamental_function(window, _require_lambda(cfg), cfg.l)
    x = evaluation_grid(window, fraction=1.0, step=cfg.step)
    values = fundamental(x)
    return ("x", "value"), [[float(a), float(v)] for a, v in zip(x, values)], \
        [f"window: {window.descriptor}", f"l: {cfg.l}"]


def cmd_spectrum(cfg: RunConfig) -> Table:
    window = _window(cfg)
    f = _single_function(cfg)
    interp = interpolate_function(f, window, _require_lambda(cfg))
    u = np.linspace(-cfg.umax, cfg.umax, 401)
    values = spectrum_value(interp.spectrum, u)
    rows = [[float(a), float(v.real), float(v.imag)] for a, v in zip(u, values)]
    return ("u", "re", "im"), rows, [f"function: {f.function_id}", f"window: {window.descriptor}"]


def cmd_grid2d(cfg: RunConfig) -> Table:
    window = _window(cfg)
    f = _single_function(cfg)
    interp = interpolate_product(f, f, window, window, _require_lambda(cfg))
    step = cfg.step if cfg.step is not None else min(window.q, 1.0) / 2.0
    grid = evaluation_grid(window, step=step)
    values = evaluate2d_grid(interp, grid, grid)
    if cfg.coeffs_out:
        write_matrix_csv(interp.coeff_matrix, settings.resolve_output(cfg.coeffs_out),
                         comments=[f"coefficient matrix of {f.function_id} (x) {f.function_id}",
                                   f"window: {window.descriptor}"])
    fx = np.asarray(f(grid))
    rows = []
    for i, x in enumerate(grid):
        for j, y in enumerate(grid):
            value = float(values[i, j])
            rows.append([float(x), float(y), value, abs(float(fx[i] * fx[j]) - value)])
    return ("x", "y", "value", "error"), rows, [f"function: {f.function_id} (x) {f.function_id}",
                                                 f"window: {window.descriptor}"]


def cmd_converge(cfg: RunConfig) -> Table:
    return _report_table(run_convergence(_single_function(cfg), _window(cfg), cfg.lambdas))


def cmd_bounded(cfg: RunConfig) -> Table:
    return _report_table(run_uniform_boundedness(_functions(cfg), _window(cfg), cfg.lambdas))


def _dump_system(cfg: RunConfig, families: List[str], c: float, delta: float) -> None:
    param = "matrix-out" if cfg.matrix_out else "column-out"
    if len(families) != 1 or len(cfg.lambdas) != 1:
        raise ParameterError("matrix dumps need exactly one family and one lambda", param=param)
    window = make_window(families[0], cfg.n, c=c, delta=delta, seed=cfg.seed)
    lam = cfg.lambdas[0]
    system = assemble(window, lam)
    described = f"{window.descriptor}, lambda={lam:.17g}"
    if cfg.matrix_out:
        write_matrix_csv(system.matrix, settings.resolve_output(cfg.matrix_out),
                         comments=[f"gram matrix on {described}"])
    if cfg.column_out:
        offsets, column = central_inverse_column(system)
        write_matrix_csv(column, settings.resolve_output(cfg.column_out),
                         comments=[f"central inverse column on {described}",
                                   f"offsets: {int(offsets[0])}..{int(offsets[-1])}"])


def cmd_decay(cfg: RunConfig) -> Table:
    families = cfg.families or [cfg.window]
    c = 0.2 if cfg.c is None else cfg.c
    delta = 0.2 if cfg.delta is None else cfg.delta
    if cfg.matrix_out or cfg.column_out:
        _dump_system(cfg, families, c, delta)
    return _report_table(run_decay_study(families, cfg.lambdas, cfg.n, c=c, delta=delta, seed=cfg.seed))


def cmd_lpsweep(cfg: RunConfig) -> Table:
    ns = cfg.ns or [cfg.n]
    return _report_table(run_lp_sweep(cfg.window, _require_lambda(cfg), ns, cfg.ps, cfg.trials,
                                      seed=cfg.seed, c=cfg.c, delta=cfg.delta))


def cmd_counterexample(cfg: RunConfig) -> Table:
    return _report_table(run_counterexample(cfg.n, cfg.lambdas))


def cmd_levinson(cfg: RunConfig) -> Table:
    if cfg.c is None:
        raise ParameterError("'levinson' requires --c", param="c")
    return _report_table(run_levinson_comparison(cfg.c, cfg.n, cfg.l, cfg.lambdas))


def cmd_riesz(cfg: RunConfig) -> Table:
    ns = cfg.ns or [cfg.n]
    return _report_table(run_riesz_sweep(cfg.window, ns, c=cfg.c, delta=cfg.delta, seed=cfg.seed))


HANDLERS: Dict[str, Callable[[RunConfig], Table]] = {
    "interp": cmd_interp,
    "fundamental": cmd_fundamental,
    "spectrum": cmd_spectrum,
    "converge": cmd_converge,
    "bounded": cmd_bounded,
    "decay": cmd_decay,
    "lpsweep": cmd_lpsweep,
    "grid2d": cmd_grid2d,
    "counterexample": cmd_counterexample,
    "levinson": cmd_levinson,
    "riesz": cmd_riesz,
}


def run(cfg: RunConfig) -> None:
    """Execute one configured command and write its table."""
    logger.info(f"Running '{cfg.command}'")
    header, rows, comments = HANDLERS[cfg.command](cfg)
    out = settings.resolve_output(cfg.out) if cfg.out else None
    write_table(header, rows, out, fmt=cfg.format, config=cfg.model_dump(mode="json"),
                comments=comments)


# ============================================================================
# ENTRY POINTS
# ============================================================================

def _usage_error(parser: argparse.ArgumentParser, message: str) -> int:
    parser.print_usage(sys.stderr)
    sys.stderr.write(f"{parser.prog}: error: {message}\n")
    return 2


def parse_and_dispatch(argv: Optional[Sequence[str]] = None) -> int:
    """Parse argv, run the command and map failures onto exit codes."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    try:
        cfg = load_config(args.config) if args.config else None
        if cfg is None:
            if args.command is None:
                return _usage_error(parser, "a command or --config is required")
            cfg = config_from_args(args)
    except OSError as e:
        return _usage_error(parser, f"argument --config: {e}")
    except ValidationError as e:
        return _usage_error(parser, f"invalid configuration: {e.errors()[0]['msg']}")

    setup_logger(
        name="gaussinterp",
        log_level=settings.LOG_LEVEL,
        log_dir=settings.LOG_DIR,
        max_bytes=settings.LOG_MAX_BYTES,
        backup_count=settings.LOG_BACKUP_COUNT,
    )

    try:
        run(cfg)
    except (ParameterError, IndexOutOfRange) as e:
        param = getattr(e, "param", None) or ("l" if isinstance(e, IndexOutOfRange) else None)
        prefix = f"argument --{param}: " if param else ""
        return _usage_error(parser, f"{prefix}{e}")
    except GaussInterpError as e:
        logger.error(f"'{cfg.command}' failed: {type(e).__name__}: {e}", exc_info=True)
        sys.stderr.write(f"{type(e).__name__}: {e}\n")
        return 1
    return 0


def main() -> None:
    sys.exit(parse_and_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
