import math

import numpy as np
import pytest
from scipy.integrate import trapezoid
from pydantic import TypeAdapter, ValidationError
from scipy.linalg import eigvalsh

from src.core import ParameterError, ScaleParameter, gaussian, gaussian_ft, gaussian_symbol, kappa, uniform_nodes


class TestGaussian:
    def test_known_values(self):
        assert gaussian(1.0, 0.0) == 1.0
        assert gaussian(1.0, 1.0) == pytest.approx(0.36787944117, abs=1e-11)
        assert gaussian(0.25, 2.0) == pytest.approx(0.36787944117, abs=1e-11)

    def test_even_bit_exact(self, rng):
        x = rng.uniform(-30, 30, size=200)
        for lam in (0.05, 0.25, 1.0, 7.5):
            np.testing.assert_array_equal(gaussian(lam, x), gaussian(lam, -x))

    def test_range(self, rng):
        values = gaussian(0.5, rng.uniform(-5, 5, size=100))
        assert np.all(values > 0.0) and np.all(values <= 1.0)

    def test_underflow_is_exact_zero(self):
        assert gaussian(1.0, 40.0) == 0.0

    @pytest.mark.parametrize("lam", [0.0, -1.0, math.inf, math.nan])
    def test_rejects_bad_lambda(self, lam):
        with pytest.raises(ParameterError):
            gaussian(lam, 1.0)

    def test_rejects_non_finite_x(self):
        with pytest.raises(ParameterError):
            gaussian(1.0, math.nan)
        with pytest.raises(ParameterError):
            gaussian(1.0, np.array([0.0, math.inf]))


class TestGaussianFourierTransform:
    def test_known_values(self):
        assert gaussian_ft(1.0, 0.0) == pytest.approx(1.77245385091, abs=1e-10)
        assert gaussian_ft(0.25, 0.0) == pytest.approx(3.54490770181, abs=1e-10)
        assert gaussian_ft(1.0, 2.0) == pytest.approx(0.6520493321732922, abs=1e-12)
        assert gaussian_ft(1.0, 2.0) == pytest.approx(math.sqrt(math.pi) * math.exp(-1.0), rel=1e-15)

    @pytest.mark.parametrize("lam", [0.25, 1.0, 2.0])
    def test_matches_quadrature(self, lam):
        half = 50.0 / math.sqrt(lam)
        x = np.linspace(-half, half, 20001)
        g = np.exp(-lam * x * x)
        for u in (0.0, 0.5, 1.0, 2.0, 3.0):
            numeric = trapezoid(g * np.cos(u * x), x)
            assert numeric == pytest.approx(gaussian_ft(lam, u), abs=1e-6)

    def test_rejects_bad_lambda(self):
        with pytest.raises(ParameterError):
            gaussian_ft(0.0, 1.0)


class TestKappa:
    def test_known_values(self):
        assert kappa(math.log(2.0)) == pytest.approx(2.0, abs=1e-12)
        assert kappa(1.0) == pytest.approx(1.16395341373, abs=1e-10)

    @pytest.mark.parametrize("alpha", [0.1, 0.5, 1.0, 5.0, 10.0])
    def test_dominates_partial_sums(self, alpha):
        l = np.arange(1, 101, dtype=float)
        partial = 2.0 * float(np.sum(np.exp(-alpha * (2.0 * l - 1.0) ** 2)))
        assert partial <= kappa(alpha)

    def test_strictly_decreasing(self):
        values = [kappa(a) for a in (0.05, 0.1, 0.5, 1.0, 2.0, 5.0, 20.0)]
        assert all(b < a for a, b in zip(values, values[1:]))

    @pytest.mark.parametrize("alpha", [0.0, -0.5])
    def test_rejects_non_positive(self, alpha):
        with pytest.raises(ParameterError):
            kappa(alpha)


class TestSymbol:
    @pytest.mark.parametrize("lam", [0.25, 1.0])
    def test_poisson_summation(self, lam):
        theta = np.linspace(-math.pi, math.pi, 41)
        m = np.arange(-6, 7, dtype=float)
        poisson = math.sqrt(math.pi / lam) * np.exp(
            -np.add.outer(theta, 2.0 * math.pi * m) ** 2 / (4.0 * lam)
        ).sum(axis=1)
        np.testing.assert_allclose(gaussian_symbol(lam, theta), poisson, rtol=1e-12, atol=1e-13)

    def test_brackets_uniform_gram_spectrum(self):
        lam = 1.0
        x = uniform_nodes(10).x
        eigenvalues = eigvalsh(np.exp(-lam * np.subtract.outer(x, x) ** 2))
        assert eigenvalues[0] >= gaussian_symbol(lam, math.pi) - 1e-12
        assert eigenvalues[-1] <= gaussian_symbol(lam, 0.0) + 1e-12

    def test_scalar_in_scalar_out(self):
        assert isinstance(gaussian_symbol(0.5, 1.0), float)


class TestScaleParameter:
    def test_accepts_positive_finite(self):
        assert TypeAdapter(ScaleParameter).validate_python(0.05) == 0.05

    @pytest.mark.parametrize("lam", [0.0, -1.0, math.nan, math.inf])
    def test_rejects_out_of_range(self, lam):
        with pytest.raises(ValidationError):
            TypeAdapter(ScaleParameter).validate_python(lam)
