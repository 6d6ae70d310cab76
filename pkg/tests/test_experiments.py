import math

import numpy as np
import pytest

from src.config import settings
from src.core import (
    IndexOutOfRange,
    ParameterError,
    fejer_square,
    gaussian_symbol,
    jittered_nodes,
    kadec_nodes,
    pw_combo,
    punctured_integer_nodes,
    sinc_function,
    uniform_nodes,
)
from src.experiments import (
    ConvergenceReport,
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
from src.experiments.reports import LpRow
from src.experiments.runners import lp_growth

LAMBDAS = [1.0, 0.5, 0.25, 0.1]


class TestHelpers:
    def test_map_cells_keeps_order(self):
        cells = list(range(12))
        assert map_cells(lambda k: k * k, cells, max_workers=1) == map_cells(lambda k: k * k, cells, max_workers=4)
        assert map_cells(lambda k: k * k, cells, max_workers=4) == [k * k for k in cells]

    def test_check_lambdas(self):
        assert check_lambdas([1, 0.5]) == [1.0, 0.5]
        with pytest.raises(ParameterError) as exc:
            check_lambdas([0.5, 1.0], decreasing=True)
        assert exc.value.param == "lambdas"
        with pytest.raises(ParameterError):
            check_lambdas([2.0, 1.0], ceiling=True)
        with pytest.raises(ParameterError):
            check_lambdas([])
        with pytest.raises(ParameterError):
            check_lambdas([1.0, -0.1])


class TestConvergence:
    @pytest.mark.parametrize("window", [uniform_nodes(40), kadec_nodes(40, 0.2)], ids=["uniform", "kadec"])
    def test_errors_decrease_with_lambda(self, window):
        report = run_convergence(sinc_function(), window, LAMBDAS)
        assert [r.lam for r in report.rows] == LAMBDAS
        assert report.monotone_l2 and report.monotone_sup
        assert report.rows[-1].l2_error < 0.5 * report.rows[0].l2_error
        assert report.rows[-1].sup_error < 0.5 * report.rows[0].sup_error
        assert all(r.node_residual < 1e-6 for r in report.rows)

    def test_table_layout(self):
        report = run_convergence(fejer_square(), uniform_nodes(10), [1.0, 0.5])
        assert ConvergenceReport.header[0] == "lambda"
        table = report.table()
        assert len(table) == 2 and len(table[0]) == len(ConvergenceReport.header)
        assert report.comments()[0] == "experiment: converge"

    def test_requires_decreasing_lambdas(self):
        with pytest.raises(ParameterError) as exc:
            run_convergence(sinc_function(), uniform_nodes(10), [0.5, 1.0])
        assert exc.value.param == "lambdas"

    def test_rejects_non_riesz_windows(self):
        with pytest.raises(ParameterError) as exc:
            run_convergence(sinc_function(), punctured_integer_nodes(10), [1.0])
        assert exc.value.param == "window"
        with pytest.raises(ParameterError) as exc:
            run_convergence(sinc_function(), jittered_nodes(10, 0.3, 0), [1.0])
        assert exc.value.param == "delta"

    def test_independent_of_worker_count(self, monkeypatch):
        window = kadec_nodes(15, 0.2)
        monkeypatch.setattr(settings, "MAX_WORKERS", 1)
        serial = run_convergence(sinc_function(), window, [1.0, 0.5, 0.25])
        monkeypatch.setattr(settings, "MAX_WORKERS", 4)
        threaded = run_convergence(sinc_function(), window, [1.0, 0.5, 0.25])
        assert serial.table() == threaded.table()


class TestGridConvergence:
    def test_sup_error_decreases(self):
        report = run_grid_convergence(sinc_function(), uniform_nodes(20), LAMBDAS)
        assert report.monotone
        assert report.rows[-1].sup_error < 0.5 * report.rows[0].sup_error
        assert report.function_id == "sinc"

    def test_mixed_product_id(self):
        report = run_grid_convergence(sinc_function(), uniform_nodes(6), [1.0], h=fejer_square())
        assert report.function_id == "sinc*fejer_square"
        assert len(report.rows) == 1


class TestBoundedness:
    def test_ratios_stay_bounded(self):
        fs = [sinc_function(), pw_combo([0, 3], [3, 4]), fejer_square()]
        report = run_uniform_boundedness(fs, uniform_nodes(40), LAMBDAS)
        assert len(report.rows) == len(fs) * len(LAMBDAS)
        assert [r.function_id for r in report.rows[:4]] == ["sinc"] * 4
        assert [r.lam for r in report.rows[:4]] == LAMBDAS
        assert report.max_ratio <= 3.0
        assert report.bounded
        for i in range(len(fs)):
            block = report.rows[4 * i:4 * i + 4]
            assert block[-1].ratio <= 1.5 * block[0].ratio

    def test_needs_functions(self):
        with pytest.raises(ParameterError):
            run_uniform_boundedness([], uniform_nodes(10), [1.0])


class TestCounterexample:
    def test_origin_is_never_recovered(self):
        report = run_counterexample(20, [1.0, 0.1, 0.01])
        assert all(r.max_abs_coeff == 0.0 for r in report.rows)
        assert all(r.sup_error == pytest.approx(1.0, abs=1e-15) for r in report.rows)
        assert report.never_recovered
        assert report.summary()["never_recovered"] == "true"


class TestLevinson:
    def test_matches_closed_form_at_nodes(self):
        report = run_levinson_comparison(0.2, 20, 0, [1.0, 0.5, 0.25])
        assert all(r.node_distance < 1e-8 for r in report.rows)

    def test_distance_decreases(self):
        report = run_levinson_comparison(0.2, 20, 0, LAMBDAS)
        assert report.monotone

    def test_large_c_runs(self):
        report = run_levinson_comparison(0.45, 20, 1, [1.0, 0.5])
        assert len(report.rows) == 2
        assert all(np.isfinite(r.sup_distance) for r in report.rows)

    def test_label_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            run_levinson_comparison(0.2, 10, 11, [1.0])


class TestLpSweep:
    def test_ratios_do_not_grow(self):
        report = run_lp_sweep("uniform", 1.0, [10, 20, 40], ["1", "2", "inf"], trials=20, seed=3)
        assert len(report.rows) == 9
        assert set(report.growth) == {"1", "2", "inf"}
        assert all(abs(g) < 0.2 for g in report.growth.values())
        assert report.bounded

    def test_deterministic(self):
        first = run_lp_sweep("kadec", 1.0, [5, 10], [2], trials=5, seed=11, c=0.2)
        second = run_lp_sweep("kadec", 1.0, [5, 10], [2], trials=5, seed=11, c=0.2)
        assert first.table() == second.table()

    def test_shrinking_ratios_are_not_bounded(self):
        rows = [LpRow(n=10, p=2.0, max_ratio=1.0, mean_ratio=0.9),
                LpRow(n=40, p=2.0, max_ratio=0.5, mean_ratio=0.4)]
        growth, bounded = lp_growth(rows, [2.0])
        assert growth == {"2": pytest.approx(-0.5)}
        assert not bounded

    def test_small_changes_are_bounded(self):
        rows = [LpRow(n=10, p=math.inf, max_ratio=1.0, mean_ratio=1.0),
                LpRow(n=40, p=math.inf, max_ratio=0.9, mean_ratio=0.9)]
        growth, bounded = lp_growth(rows, [math.inf])
        assert set(growth) == {"inf"}
        assert bounded

    @pytest.mark.parametrize("kwargs, param", [
        ({"trials": 0}, "trials"),
        ({"ns": [20, 10]}, "ns"),
        ({"ps": [3]}, "p"),
    ])
    def test_rejects_bad_arguments(self, kwargs, param):
        arguments = {"family": "uniform", "lam": 1.0, "ns": [5, 10], "ps": [2], "trials": 2}
        arguments.update(kwargs)
        with pytest.raises(ParameterError) as exc:
            run_lp_sweep(**arguments)
        assert exc.value.param == param


class TestDecayStudy:
    def test_rates_positive_across_families(self):
        report = run_decay_study(["uniform", "kadec", "jittered"], [0.25, 1.0], 20, seed=7)
        assert len(report.rows) == 12
        assert not any(r.flagged for r in report.rows)
        assert report.all_rates_positive
        uniform = {(r.lam, r.target): r.rate for r in report.rows if r.family == "uniform"}
        kadec = {(r.lam, r.target): r.rate for r in report.rows if r.family == "kadec"}
        for key, rate in uniform.items():
            assert kadec[key] == pytest.approx(rate, rel=0.5)

    def test_large_lambda_is_flagged(self):
        report = run_decay_study(["uniform"], [50.0], 20)
        inverse = [r for r in report.rows if r.target == "inverse"]
        assert inverse[0].flagged and inverse[0].rate is None
        assert "noise floor" in inverse[0].note

    def test_rows_carry_spectral_bounds(self):
        report = run_decay_study(["uniform", "kadec"], [1.0], 10)
        assert all(0.0 < r.min_eigenvalue <= r.max_eigenvalue for r in report.rows)
        uniform = [r for r in report.rows if r.family == "uniform"]
        assert uniform[0].min_eigenvalue >= float(gaussian_symbol(1.0, np.pi)) - 1e-12
        assert uniform[0].max_eigenvalue <= float(gaussian_symbol(1.0, 0.0)) + 1e-12

    def test_needs_ten_nodes(self):
        with pytest.raises(ParameterError) as exc:
            run_decay_study(["uniform"], [1.0], 5)
        assert exc.value.param == "n"


class TestRieszSweep:
    def test_uniform_rows(self):
        report = run_riesz_sweep("uniform", [5, 10])
        assert [r.size for r in report.rows] == [11, 21]
        assert all(r.lower == pytest.approx(1.0, abs=1e-12) for r in report.rows)

    def test_kadec_rows(self):
        report = run_riesz_sweep("kadec", [5, 20], c=0.2)
        assert report.rows[1].lower <= report.rows[0].lower + 1e-9
        assert report.rows[1].lower > 0.5
