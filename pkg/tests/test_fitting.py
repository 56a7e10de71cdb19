import numpy as np
import pytest

from mwgates.fitting import DegenerateFitError, FitResult, fit_abs_sinusoid, fit_quadratic

TWO_PI = 2 * np.pi
CURVATURE = 0.06 / 657.0**2


def quad_model(z):
    return 0.52 * (1 - CURVATURE * (z - 957.0) ** 2)


class TestFitQuadratic:
    def test_noiseless_round_trip(self):
        z = np.linspace(157.0, 1757.0, 9)
        fit = fit_quadratic(z, quad_model(z))
        assert fit.value("z0") == pytest.approx(957.0, abs=1e-8)
        assert fit.value("peak") == pytest.approx(0.52, abs=1e-10)
        assert fit.value("curvature") == pytest.approx(CURVATURE, rel=1e-8)
        assert fit.residual_norm < 1e-10

    def test_constant_data_degenerate(self):
        z = np.linspace(0.0, 10.0, 9)
        with pytest.raises(DegenerateFitError, match="curvature"):
            fit_quadratic(z, np.full(9, 0.5))

    def test_collinear_data_degenerate(self):
        z = np.linspace(0.0, 10.0, 9)
        with pytest.raises(DegenerateFitError, match="curvature"):
            fit_quadratic(z, 0.1 * z + 3.0)

    def test_too_few_distinct_points(self):
        with pytest.raises(DegenerateFitError, match="distinct"):
            fit_quadratic(np.array([1.0, 1.0, 2.0]), np.array([0.1, 0.1, 0.2]))

    def test_seeded_one_percent_noise(self):
        rng = np.random.default_rng(12345)
        z = np.linspace(157.0, 1757.0, 50)
        y = quad_model(z) * (1 + 0.01 * rng.standard_normal(z.size))
        fit = fit_quadratic(z, y)
        assert abs(fit.value("z0") - 957.0) <= 15.0
        assert all(c >= 0 for c in fit.covariance_diag)

    def test_result_serializes(self):
        z = np.linspace(0.0, 100.0, 11)
        fit = fit_quadratic(z, 1.0 - 1e-4 * (z - 50.0) ** 2)
        d = fit.to_dict()
        assert d["model"] == "quadratic"
        assert set(d["parameters"]) == {"z0", "peak", "curvature"}
        assert d["parameters"]["z0"]["unit"] == "um"


class TestFitAbsSinusoid:
    def test_clock_sweep_recovers_generator(self):
        phi = np.linspace(0.0, TWO_PI, 97)
        y = 0.52 * np.abs(np.sin(phi / 2.0))
        fit = fit_abs_sinusoid(phi, y)
        assert fit.value("amplitude") == pytest.approx(0.52, abs=1e-10)
        offset = fit.value("phase_offset")
        assert min(offset, TWO_PI - offset) < 1e-8
        assert fit.residual_norm < 1e-10

    def test_sigma_sweep_zero_at_pi(self):
        phi = np.linspace(0.0, TWO_PI, 97)
        y = 0.24 * np.abs(np.cos(phi / 2.0))
        fit = fit_abs_sinusoid(phi, y)
        assert fit.value("phase_offset") == pytest.approx(np.pi, abs=1e-8)
        assert fit.residual_norm < 1e-10

    def test_zero_amplitude_degenerate(self):
        phi = np.linspace(0.0, TWO_PI, 20)
        with pytest.raises(DegenerateFitError, match="amplitude"):
            fit_abs_sinusoid(phi, np.zeros(20))

    def test_short_span_rejected(self):
        phi = np.linspace(0.0, np.pi, 20)
        with pytest.raises(DegenerateFitError, match="span"):
            fit_abs_sinusoid(phi, np.abs(np.sin(phi / 2)))

    def test_too_few_samples(self):
        with pytest.raises(DegenerateFitError, match="4 samples"):
            fit_abs_sinusoid(np.array([0.0, 2.0, 4.0]), np.array([0.1, 0.9, 0.4]))

    def test_small_noise_stays_close(self):
        rng = np.random.default_rng(5)
        phi = np.linspace(0.0, TWO_PI, 61)
        y = 0.5 * np.abs(np.sin((phi - 1.0) / 2.0)) + 0.002 * rng.standard_normal(61)
        fit = fit_abs_sinusoid(phi, y)
        assert fit.value("amplitude") == pytest.approx(0.5, abs=0.02)
        assert fit.value("phase_offset") == pytest.approx(1.0, abs=0.05)


class TestFitResult:
    def test_covariance_length_checked(self):
        with pytest.raises(ValueError, match="covariance"):
            FitResult(
                model="quadratic",
                parameters={"a": {"value": 1.0, "unit": ""}},
                residual_norm=0.0,
                covariance_diag=(1.0, 2.0),
            )

    def test_residual_must_be_finite(self):
        with pytest.raises(ValueError, match="finite"):
            FitResult(
                model="m",
                parameters={"a": {"value": 1.0, "unit": ""}},
                residual_norm=float("nan"),
                covariance_diag=(1.0,),
            )
