import math

import numpy as np
import pytest
from pydantic import ValidationError

from src.core import (
    DimensionMismatch,
    FactorizationFailure,
    GramSystem,
    IndexOutOfRange,
    InsufficientData,
    ParameterError,
    assemble,
    central_inverse_column,
    explicit_nodes,
    fit_exponential_decay,
    gaussian_symbol,
    inverse_column,
    jittered_nodes,
    kadec_nodes,
    measure_inverse_decay,
    sinc,
    solve,
    spectral_bounds,
    uniform_nodes,
)


class TestAssemble:
    def test_three_node_matrix(self):
        system = assemble(explicit_nodes([0.0, 1.0, 3.0]), 0.5)
        e = math.exp
        expected = np.array([
            [1.0, e(-0.5), e(-4.5)],
            [e(-0.5), 1.0, e(-2.0)],
            [e(-4.5), e(-2.0), 1.0],
        ])
        np.testing.assert_allclose(system.matrix, expected, rtol=1e-15, atol=0)
        assert system.storage == "dense"

    def test_symmetric_unit_diagonal(self, riesz_window20):
        system = assemble(riesz_window20, 0.25)
        np.testing.assert_array_equal(system.matrix, system.matrix.T)
        np.testing.assert_array_equal(np.diag(system.matrix), np.ones(system.size))

    def test_single_node(self):
        system = assemble(explicit_nodes([0.0]), 1.0)
        assert system.size == 1
        np.testing.assert_array_equal(solve(system, [2.0]), [2.0])

    @pytest.mark.parametrize("lam", [0.0, -0.5, math.nan])
    def test_rejects_bad_lambda(self, uniform20, lam):
        with pytest.raises(ParameterError):
            assemble(uniform20, lam)

    def test_model_rejects_infinite_lambda(self, uniform20):
        system = assemble(uniform20, 1.0)
        with pytest.raises(ValidationError):
            GramSystem(**{**dict(system), "lam": math.inf})

    def test_spectrum_sits_above_symbol_minimum(self, uniform20):
        lam = 1.0
        system = assemble(uniform20, lam)
        lower, upper = spectral_bounds(system)
        floor = gaussian_symbol(lam, math.pi)
        assert floor - 1e-12 <= lower <= 1.05 * floor
        assert upper <= gaussian_symbol(lam, 0.0) + 1e-12
        assert system.min_pivot > 0.0

    @staticmethod
    def _window(family, n):
        return {
            "uniform": lambda: uniform_nodes(n),
            "kadec": lambda: kadec_nodes(n, 0.2),
            "jittered": lambda: jittered_nodes(n, 0.2, 7),
        }[family]()

    @pytest.mark.parametrize("lam", [0.25, 1.0])
    @pytest.mark.parametrize("n", [5, 20])
    @pytest.mark.parametrize("family", ["uniform", "kadec", "jittered"])
    def test_factorizes_riesz_windows(self, family, n, lam):
        system = assemble(self._window(family, n), lam)
        assert system.min_pivot > 0.0

    @pytest.mark.parametrize("n", [5, 20])
    @pytest.mark.parametrize("family", ["uniform", "kadec", "jittered"])
    def test_small_lambda_factors_or_fails_cleanly(self, family, n):
        # the smallest eigenvalue sits near machine epsilon here
        try:
            system = assemble(self._window(family, n), 0.05)
        except FactorizationFailure:
            return
        assert system.min_pivot > 0.0

    def test_factorization_failure(self):
        with pytest.raises(FactorizationFailure):
            assemble(uniform_nodes(40), 0.001)


class TestBanded:
    def test_cutoff_selects_banded_storage(self):
        system = assemble(uniform_nodes(30), 1.0, band_cutoff=1e-14)
        assert system.storage == "banded"
        assert system.bandwidth == 5

    def test_zero_cutoff_stays_dense(self):
        assert assemble(uniform_nodes(30), 1.0).storage == "dense"

    def test_banded_solution_matches_dense(self):
        window = uniform_nodes(30)
        rhs = np.asarray(sinc(window.x / 1.5))
        dense = solve(assemble(window, 1.0), rhs)
        banded = solve(assemble(window, 1.0, band_cutoff=1e-14), rhs)
        np.testing.assert_allclose(banded, dense, rtol=0, atol=1e-12 * np.max(np.abs(dense)))

    @pytest.mark.parametrize("cutoff", [-1e-16, 1e-10])
    def test_rejects_cutoff_out_of_range(self, cutoff):
        with pytest.raises(ParameterError) as exc:
            assemble(uniform_nodes(5), 1.0, band_cutoff=cutoff)
        assert exc.value.param == "band_cutoff"


class TestSolve:
    def test_zero_rhs_returns_zeros(self, uniform20):
        system = assemble(uniform20, 1.0)
        result = solve(system, np.zeros(system.size))
        np.testing.assert_array_equal(result, np.zeros(system.size))

    def test_dimension_mismatch(self, uniform20):
        system = assemble(uniform20, 1.0)
        with pytest.raises(DimensionMismatch):
            solve(system, np.ones(system.size + 1))
        with pytest.raises(DimensionMismatch):
            solve(system, np.ones((system.size, 2, 2)))

    def test_two_by_two_cofactor_inverse(self):
        system = assemble(explicit_nodes([0.0, 1.0]), 1.0)
        e = math.exp(-1.0)
        expected = np.array([1.0, -e]) / (1.0 - e * e)
        np.testing.assert_allclose(inverse_column(system, 0), expected, rtol=1e-14)

    def test_three_by_three_cofactor_inverse(self):
        system = assemble(explicit_nodes([0.0, 1.0, 3.0]), 0.5)
        a = system.matrix
        cofactors = np.empty((3, 3))
        for i in range(3):
            for j in range(3):
                minor = np.delete(np.delete(a, i, axis=0), j, axis=1)
                cofactors[i, j] = (-1) ** (i + j) * (minor[0, 0] * minor[1, 1] - minor[0, 1] * minor[1, 0])
        determinant = float(a[0] @ cofactors[0])
        expected = cofactors.T / determinant
        np.testing.assert_allclose(solve(system, np.eye(3)), expected, rtol=0, atol=1e-12)

    @pytest.mark.parametrize("lam", [0.25, 1.0])
    def test_residual(self, riesz_window20, rng, lam):
        system = assemble(riesz_window20, lam)
        rhs = rng.standard_normal(system.size)
        coeffs = solve(system, rhs)
        residual = system.matrix @ coeffs - rhs
        assert np.max(np.abs(residual)) <= 1e-8 * np.max(np.abs(rhs))

    def test_matrix_rhs(self, kadec20, rng):
        system = assemble(kadec20, 0.5)
        rhs = rng.standard_normal((system.size, 3))
        block = solve(system, rhs)
        for k in range(3):
            np.testing.assert_allclose(block[:, k], solve(system, rhs[:, k]), rtol=1e-10, atol=1e-10)

    def test_inverse_is_symmetric(self, kadec20):
        system = assemble(kadec20, 1.0)
        inverse = solve(system, np.eye(system.size))
        np.testing.assert_allclose(inverse, inverse.T, rtol=0, atol=1e-10 * np.max(np.abs(inverse)))


class TestInverseColumn:
    def test_nearly_diagonal_for_large_lambda(self, uniform20):
        system = assemble(uniform20, 50.0)
        column = inverse_column(system, 3)
        position = uniform20.position(3)
        assert column[position] == pytest.approx(1.0, abs=1e-15)
        others = np.delete(column, position)
        assert np.max(np.abs(others)) < 1e-20

    def test_alternating_signs(self, uniform20):
        system = assemble(uniform20, 1.0)
        column = inverse_column(system, 0)
        centre = uniform20.position(0)
        signs = np.sign(column[centre - 4:centre + 5])
        np.testing.assert_array_equal(signs, [1, -1, 1, -1, 1, -1, 1, -1, 1])

    def test_label_out_of_range(self, uniform20):
        system = assemble(uniform20, 1.0)
        with pytest.raises(IndexOutOfRange):
            inverse_column(system, 21)

    def test_central_column(self, uniform20):
        system = assemble(uniform20, 1.0)
        offsets, column = central_inverse_column(system)
        assert offsets[0] == -20 and offsets[-1] == 20
        np.testing.assert_allclose(column, inverse_column(system, 0), rtol=0, atol=0)


class TestDecayFit:
    def test_synthetic_exponential(self):
        d = np.arange(10, dtype=float)
        fit = fit_exponential_decay(d, 3.0 * np.exp(-0.7 * d))
        assert fit.rate == pytest.approx(0.7, abs=1e-12)
        assert fit.amplitude == pytest.approx(3.0, rel=1e-12)
        assert fit.residual < 1e-12
        assert fit.samples == 10

    def test_envelope(self):
        d = np.arange(10, dtype=float)
        fit = fit_exponential_decay(d, 3.0 * np.exp(-0.7 * d))
        np.testing.assert_allclose(fit.envelope([0.0, 2.0]), 30.0 * np.exp(-0.56 * np.array([0.0, 2.0])),
                                   rtol=1e-10)
        assert fit.envelope(1.0, factor=1.0, rate_scale=1.0) == pytest.approx(3.0 * math.exp(-0.7), rel=1e-10)

    def test_samples_below_floor_are_dropped(self):
        d = np.arange(10, dtype=float)
        v = np.exp(-d)
        v[6:] = 1e-20
        fit = fit_exponential_decay(d, v)
        assert fit.samples == 6
        assert fit.rate == pytest.approx(1.0, abs=1e-10)

    def test_insufficient_data(self):
        with pytest.raises(InsufficientData):
            fit_exponential_decay([0.0, 1.0, 2.0, 3.0], [1.0, 0.1, 0.0, 0.0])


class TestInverseDecay:
    @pytest.mark.parametrize("lam", [0.5, 1.0])
    def test_rate_tracks_lambda(self, uniform20, lam):
        fit = measure_inverse_decay(assemble(uniform20, lam))
        assert fit.rate == pytest.approx(lam, rel=0.2)
        assert fit.residual < 0.5

    def test_entries_respect_envelope(self, uniform20):
        system = assemble(uniform20, 1.0)
        fit = measure_inverse_decay(system)
        offsets, column = central_inverse_column(system)
        keep = np.abs(offsets) <= 10
        assert np.all(np.abs(column[keep]) <= fit.envelope(offsets[keep]))

    def test_rate_stable_in_window_size(self):
        small = measure_inverse_decay(assemble(uniform_nodes(10), 1.0))
        large = measure_inverse_decay(assemble(uniform_nodes(20), 1.0))
        assert abs(small.rate - large.rate) < 0.05 * large.rate

    def test_large_lambda_has_no_tail(self, uniform20):
        with pytest.raises(InsufficientData):
            measure_inverse_decay(assemble(uniform20, 50.0))

    def test_needs_seven_nodes(self):
        with pytest.raises(ParameterError) as exc:
            measure_inverse_decay(assemble(uniform_nodes(2), 1.0))
        assert exc.value.param == "n"
