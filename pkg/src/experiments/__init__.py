from src.experiments.reports import (
    BoundednessReport,
    ConvergenceReport,
    CounterexampleReport,
    DecayReport,
    ExperimentReport,
    GridConvergenceReport,
    LevinsonReport,
    LpSweepReport,
    RieszReport,
)
from src.experiments.runners import (
    check_lambdas,
    map_cells,
    run_convergence,
    run_counterexample,
    run_decay_study,
    run_grid_convergence,
    run_levinson_comparison,
    run_lp_sweep,
    run_riesz_sweep,
    run_uniform_boundedness,
)

__all__ = [
    "BoundednessReport",
    "ConvergenceReport",
    "CounterexampleReport",
    "DecayReport",
    "ExperimentReport",
    "GridConvergenceReport",
    "LevinsonReport",
    "LpSweepReport",
    "RieszReport",
    "check_lambdas",
    "map_cells",
    "run_convergence",
    "run_counterexample",
    "run_decay_study",
    "run_grid_convergence",
    "run_levinson_comparison",
    "run_lp_sweep",
    "run_riesz_sweep",
    "run_uniform_boundedness",
]
