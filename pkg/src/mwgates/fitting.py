"""Least-squares models for the generated datasets.

Two fit families: a vertex-form parabola for axial Rabi profiles and a
rectified sinusoid A |sin((phi - phi0)/2)| for polarization sweeps. Both
recover generator parameters exactly on noiseless model data.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares


class DegenerateFitError(ValueError):
    """Raised when the data cannot constrain the requested model."""


@dataclass(frozen=True)
class FitResult:
    """Fitted model parameters with units, residual norm, and covariance."""

    model: str
    parameters: dict  # name -> {"value": float, "unit": str}
    residual_norm: float
    covariance_diag: tuple

    def __post_init__(self):
        if not np.isfinite(self.residual_norm):
            raise ValueError("residual norm must be finite")
        if len(self.covariance_diag) != len(self.parameters):
            raise ValueError("covariance diagonal length must match parameter count")

    def value(self, name: str) -> float:
        return self.parameters[name]["value"]

    def to_dict(self) -> dict:
        return {
            "model": self.model,
            "parameters": self.parameters,
            "residual_norm": self.residual_norm,
            "covariance_diag": list(self.covariance_diag),
        }


def _parameter_covariance(jac: np.ndarray, residuals: np.ndarray) -> np.ndarray:
    """Gauss-Newton covariance, sigma^2 (J^T J)^-1."""
    m, p = jac.shape
    dof = max(m - p, 1)
    sigma2 = float(residuals @ residuals) / dof
    return sigma2 * np.linalg.pinv(jac.T @ jac)


def fit_quadratic(z: np.ndarray, y: np.ndarray) -> FitResult:
    """Fit y(z) = peak * (1 - curvature * (z - z0)^2) by linear least squares.

    z in micrometers, y in MHz. Exact (residual < 1e-10) on noiseless
    parabolic data; rejects constant or collinear data, where the vertex is
    undefined.
    """
    z = np.asarray(z, dtype=float)
    y = np.asarray(y, dtype=float)
    if z.shape != y.shape or z.ndim != 1:
        raise ValueError("z and y must be 1-D arrays of equal length")
    if np.unique(z).size < 3:
        raise DegenerateFitError("need at least 3 distinct z values for a parabola")

    zc = z - z.mean()
    design = np.column_stack([zc**2, zc, np.ones_like(zc)])
    coeffs, *_ = np.linalg.lstsq(design, y, rcond=None)
    a, b, c = coeffs

    scale = max(float(np.max(np.abs(y))), 1e-30)
    span2 = max(float(np.max(np.abs(zc))), 1.0) ** 2
    if abs(a) * span2 < 1e-9 * scale:
        raise DegenerateFitError(
            "data have no resolvable curvature; the vertex position is undefined"
        )

    z0 = float(-b / (2.0 * a) + z.mean())
    peak = float(c - b**2 / (4.0 * a))
    if peak == 0.0:
        raise DegenerateFitError("fitted peak value is zero; curvature is undefined")
    curvature = float(-a / peak)

    residuals = design @ coeffs - y
    # Covariance of (z0, peak, curvature) from the linear-coefficient
    # covariance via the transform Jacobian.
    d_z0 = np.array([b / (2 * a**2), -1.0 / (2 * a), 0.0])
    d_peak = np.array([b**2 / (4 * a**2), -b / (2 * a), 1.0])
    d_curv = (-np.array([1.0, 0.0, 0.0]) * peak + a * d_peak) / peak**2
    transform = np.vstack([d_z0, d_peak, d_curv])
    cov_vertex = transform @ _parameter_covariance(design, residuals) @ transform.T

    return FitResult(
        model="quadratic",
        parameters={
            "z0": {"value": z0, "unit": "um"},
            "peak": {"value": peak, "unit": "MHz"},
            "curvature": {"value": curvature, "unit": "1/um^2"},
        },
        residual_norm=float(np.linalg.norm(residuals)),
        covariance_diag=tuple(np.abs(np.diag(cov_vertex))),
    )


def fit_abs_sinusoid(phi: np.ndarray, y: np.ndarray) -> FitResult:
    """Fit y(phi) = A |sin((phi - phi0) / 2)| over a sweep of phi (rad).

    Solved in closed form through the linearization y^2 = A^2/2 (1 -
    cos(phi - phi0)), then polished on the rectified model itself. Requires
    at least 4 samples spanning more than pi; rejects zero-amplitude data.
    """
    phi = np.asarray(phi, dtype=float)
    y = np.asarray(y, dtype=float)
    if phi.shape != y.shape or phi.ndim != 1:
        raise ValueError("phi and y must be 1-D arrays of equal length")
    if phi.size < 4:
        raise DegenerateFitError("need at least 4 samples")
    if np.max(phi) - np.min(phi) <= np.pi:
        raise DegenerateFitError("phi samples must span more than pi")

    design = np.column_stack([np.ones_like(phi), np.cos(phi), np.sin(phi)])
    c0, c1, c2 = np.linalg.lstsq(design, y**2, rcond=None)[0]
    if c0 <= 0 or 2.0 * c0 <= np.hypot(c1, c2) * 1e-12:
        raise DegenerateFitError("zero-amplitude data; the sinusoid phase is undefined")
    amp0 = float(np.sqrt(2.0 * c0))
    phi0_0 = float(np.arctan2(-c2, -c1))

    def residuals(p):
        a, p0 = p
        return a * np.abs(np.sin((phi - p0) / 2.0)) - y

    sol = least_squares(residuals, x0=[amp0, phi0_0], method="lm")
    amp, phi0 = float(sol.x[0]), float(sol.x[1])
    if amp < 0:
        amp, phi0 = -amp, phi0 + 2.0 * np.pi
    phi0 = float(phi0 % (2.0 * np.pi))
    if amp <= 0 or amp < 1e-12 * max(float(np.max(np.abs(y))), 1e-30):
        raise DegenerateFitError("fitted amplitude is zero")

    res = residuals([amp, phi0])
    cov_diag = np.abs(np.diag(_parameter_covariance(sol.jac, res)))
    return FitResult(
        model="abs-sinusoid",
        parameters={
            "amplitude": {"value": amp, "unit": "MHz"},
            "phase_offset": {"value": phi0, "unit": "rad"},
        },
        residual_norm=float(np.linalg.norm(res)),
        covariance_diag=tuple(cov_diag),
    )
