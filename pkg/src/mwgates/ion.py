"""Four-level ground-manifold dynamics in the rotating frame.

Level ordering is fixed as [F0_m0, F1_m-1, F1_m0, F1_m+1]; the qubit lives
on indices 0 (down) and 2 (up). The Hamiltonian keeps only terms that
survive the rotating-wave approximation at the drive frequency: a clock
coupling to F1_m0 and sigma couplings to F1_m-/+1, with the F=1 sublevels
split by the static-field Zeeman shift.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import HamiltonianSegment, StateVector, evolve_piecewise, ket
from .field import MU_B_MHZ_PER_MT, TWO_PI

DOWN_INDEX = 0
UP_INDEX = 2
F1_INDICES = (1, 2, 3)


def zeeman_splitting(static_field_mt: float, mu_b_mhz_per_mt: float = MU_B_MHZ_PER_MT) -> float:
    """Linear F=1 Zeeman splitting (rad/s) of a static field, g_F = 1."""
    return TWO_PI * mu_b_mhz_per_mt * 1e6 * static_field_mt


@dataclass(frozen=True)
class HyperfineSystem:
    """Static level structure: qubit splitting, Zeeman splitting, field."""

    omega_hf: float = TWO_PI * 12.64e9  # rad/s
    static_field: float = 0.74  # mT, along y
    delta_zeeman: float | None = None  # rad/s; derived from static_field if None

    def __post_init__(self):
        if self.delta_zeeman is None:
            object.__setattr__(self, "delta_zeeman", zeeman_splitting(self.static_field))
        if self.delta_zeeman < 0:
            raise ValueError("delta_zeeman must be >= 0")


@dataclass(frozen=True)
class TransitionDrive:
    """Complex Rabi amplitudes (rad/s) of the three allowed transitions.

    The phase of each entry is the drive phase seen by that transition;
    magnitudes are the on-resonance Rabi frequencies.
    """

    clock: complex
    sigma_plus: complex = 0.0
    sigma_minus: complex = 0.0

    def __post_init__(self):
        for name in ("clock", "sigma_plus", "sigma_minus"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} Rabi amplitude must be finite")

    def scaled(self, factor: complex) -> "TransitionDrive":
        return TransitionDrive(
            self.clock * factor, self.sigma_plus * factor, self.sigma_minus * factor
        )

    def max_rabi(self) -> float:
        return max(abs(self.clock), abs(self.sigma_plus), abs(self.sigma_minus))


@dataclass(frozen=True)
class DetectionModel:
    """Two-parameter state misclassification map."""

    p_dark_given_bright: float = 0.0
    p_bright_given_dark: float = 0.0

    def __post_init__(self):
        for name in ("p_dark_given_bright", "p_bright_given_dark"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {p!r}")


def rwa_hamiltonian(
    drive: TransitionDrive,
    detuning: float,
    system: HyperfineSystem,
    duration: float = 0.0,
) -> HamiltonianSegment:
    """Rotating-frame 4x4 Hamiltonian segment (rad/s) for a square pulse.

    Diagonal (F0_m0, F1_m-1, F1_m0, F1_m+1) = (0, -(D + dz), -D, -(D - dz))
    with D the detuning from the clock line and dz the Zeeman splitting;
    each off-diagonal coupling is half the corresponding complex Rabi
    amplitude.
    """
    if not np.isfinite(detuning):
        raise ValueError("detuning must be finite")
    dz = system.delta_zeeman
    h = np.zeros((4, 4), dtype=complex)
    h[1, 1] = -(detuning + dz)
    h[2, 2] = -detuning
    h[3, 3] = -(detuning - dz)
    h[2, 0] = 0.5 * drive.clock
    h[3, 0] = 0.5 * drive.sigma_plus
    h[1, 0] = 0.5 * drive.sigma_minus
    h[0, 2] = np.conj(h[2, 0])
    h[0, 3] = np.conj(h[3, 0])
    h[0, 1] = np.conj(h[1, 0])
    return HamiltonianSegment(h, duration)


def f1_population(psi: StateVector) -> float:
    """Total population of the F=1 manifold (or of |up> for a 2-level state)."""
    if psi.dim == 2:
        p = psi.population(1)
    else:
        p = float(np.sum(psi.populations()[list(F1_INDICES)]))
    return min(max(p, 0.0), 1.0)


def sublevel_populations(psi: StateVector) -> np.ndarray:
    return psi.populations()


def drive_scan(
    durations,
    drive: TransitionDrive,
    detuning: float,
    system: HyperfineSystem,
) -> np.ndarray:
    """F=1 population vs pulse duration, starting from |down>."""
    psi0 = ket(DOWN_INDEX, dim=4)
    out = np.empty(len(durations))
    for i, t in enumerate(durations):
        seg = rwa_hamiltonian(drive, detuning, system, duration=float(t))
        out[i] = f1_population(evolve_piecewise([seg], psi0))
    return out


def spectrum_scan(
    detunings,
    drive: TransitionDrive,
    system: HyperfineSystem,
    pulse_time: float | None = None,
) -> np.ndarray:
    """F=1 population vs detuning for a fixed-duration square probe.

    The probe defaults to the pi time of the strongest line. Resonances sit
    at detunings 0 and -/+ the Zeeman splitting, up to line pulling of order
    Omega^2 / delta_zeeman.
    """
    if pulse_time is None:
        peak = drive.max_rabi()
        if peak <= 0.0:
            pulse_time = 0.0
        else:
            pulse_time = np.pi / peak
    psi0 = ket(DOWN_INDEX, dim=4)
    out = np.empty(len(detunings))
    for i, d in enumerate(detunings):
        seg = rwa_hamiltonian(drive, float(d), system, duration=pulse_time)
        out[i] = f1_population(evolve_piecewise([seg], psi0))
    return out


def spectrum_scan_sublevels(
    detunings,
    drive: TransitionDrive,
    system: HyperfineSystem,
    pulse_time: float | None = None,
) -> np.ndarray:
    """Per-level populations vs detuning, shape (len(detunings), 4)."""
    if pulse_time is None:
        peak = drive.max_rabi()
        pulse_time = np.pi / peak if peak > 0 else 0.0
    psi0 = ket(DOWN_INDEX, dim=4)
    out = np.empty((len(detunings), 4))
    for i, d in enumerate(detunings):
        seg = rwa_hamiltonian(drive, float(d), system, duration=pulse_time)
        out[i] = evolve_piecewise([seg], psi0).populations()
    return out


def apply_detection(p_true: float, model: DetectionModel) -> float:
    """Observed bright probability for a true F=1 population.

    Affine and monotone: p_obs = p (1 - p_dark|bright) + (1 - p) p_bright|dark.
    """
    if not 0.0 <= p_true <= 1.0:
        raise ValueError(f"p_true must lie in [0, 1], got {p_true!r}")
    return p_true * (1.0 - model.p_dark_given_bright) + (1.0 - p_true) * model.p_bright_given_dark


def invert_detection(p_obs: float, model: DetectionModel) -> float:
    """Algebraic inverse of ``apply_detection``; needs p10 + p01 < 1."""
    denom = 1.0 - model.p_dark_given_bright - model.p_bright_given_dark
    if denom <= 0.0:
        raise ValueError("detection map is not invertible: error rates sum to >= 1")
    return (p_obs - model.p_bright_given_dark) / denom
