"""Composite pulse sequences and their response to amplitude error.

Implements simple rotations plus the SK1 and BB1 broadband sequences that
cancel systematic pulse-amplitude error to first and second order. The
systematic error is multiplicative on pulse area (theta -> theta (1 + eps)),
equivalent to a fractional Rabi-frequency offset at fixed duration.

Sequence layouts (time order, correction phase p1 = arccos(-theta / 4 pi)):

    simple: R(theta, phi)
    sk1:    R(theta, phi), R(2pi, phi - p1), R(2pi, phi + p1)
    bb1:    R(pi, phi + p1), R(2pi, phi + 3 p1), R(pi, phi + p1), R(theta, phi)

Correction-after for SK1 and correction-before for BB1; either placement
gives the same error-cancellation order, as the scaling tests verify.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import SIGMA_X, SIGMA_Y, Unitary, compose, gate_fidelity, ket
from .ion import HyperfineSystem, TransitionDrive, f1_population, rwa_hamiltonian
from .core import evolve_piecewise

SEQUENCE_KINDS = ("simple", "sk1", "bb1")


@dataclass(frozen=True)
class Pulse:
    """One resonant rotation: pulse area theta (rad) about the phi axis."""

    theta: float
    phi: float

    def __post_init__(self):
        if self.theta < 0:
            raise ValueError(f"pulse area must be >= 0, got {self.theta!r}")


@dataclass(frozen=True)
class AmplitudeError:
    """Fractional systematic Rabi-frequency error; must exceed -1."""

    epsilon: float = 0.0

    def __post_init__(self):
        if not self.epsilon > -1.0:
            raise ValueError(f"epsilon must be > -1, got {self.epsilon!r}")


@dataclass(frozen=True)
class PulseSequence:
    """An ordered pulse list realizing a target rotation R(theta, phi)."""

    kind: str
    pulses: tuple[Pulse, ...]
    target_theta: float
    target_phi: float

    def total_area(self) -> float:
        return float(sum(p.theta for p in self.pulses))


def rotation(theta: float, phi: float) -> Unitary:
    """R(theta, phi) = exp[-i (theta/2) (cos phi sx + sin phi sy)]."""
    axis = np.cos(phi) * SIGMA_X + np.sin(phi) * SIGMA_Y
    mat = np.cos(theta / 2.0) * np.eye(2, dtype=complex) - 1j * np.sin(theta / 2.0) * axis
    return Unitary(mat)


def correction_phase(theta: float) -> float:
    """Correction-pulse phase arccos(-theta / 4 pi); needs theta <= 4 pi."""
    x = -theta / (4.0 * np.pi)
    if abs(x) > 1.0:
        raise ValueError(
            f"theta = {theta!r} exceeds 4 pi; the correction phase is undefined"
        )
    return float(np.arccos(x))


def build_sequence(kind: str, theta: float = np.pi, phi: float = 0.0) -> PulseSequence:
    """Construct the pulse list of one logical rotation of the given kind."""
    if kind not in SEQUENCE_KINDS:
        raise ValueError(f"unknown sequence kind {kind!r}; expected one of {SEQUENCE_KINDS}")
    if theta < 0:
        raise ValueError("target pulse area must be >= 0")
    if kind == "simple":
        pulses = (Pulse(theta, phi),)
    elif kind == "sk1":
        p1 = correction_phase(theta)
        pulses = (
            Pulse(theta, phi),
            Pulse(2.0 * np.pi, phi - p1),
            Pulse(2.0 * np.pi, phi + p1),
        )
    else:
        p1 = correction_phase(theta)
        pulses = (
            Pulse(np.pi, phi + p1),
            Pulse(2.0 * np.pi, phi + 3.0 * p1),
            Pulse(np.pi, phi + p1),
            Pulse(theta, phi),
        )
    return PulseSequence(kind=kind, pulses=pulses, target_theta=theta, target_phi=phi)


def sequence_unitary(seq: PulseSequence, error: AmplitudeError = AmplitudeError()) -> Unitary:
    """Composed qubit unitary of a sequence under a common amplitude error.

    Every pulse area is scaled by (1 + eps); the earliest pulse acts first.
    """
    scale = 1.0 + error.epsilon
    return compose([rotation(p.theta * scale, p.phi) for p in seq.pulses], dim=2)


def scaled_sequence_unitary(seq: PulseSequence, scale: float) -> Unitary:
    """Composed unitary with every pulse area multiplied by ``scale`` >= 0."""
    if scale < 0:
        raise ValueError("area scale must be >= 0")
    return compose([rotation(p.theta * scale, p.phi) for p in seq.pulses], dim=2)


def analytic_fidelity(kind: str, epsilon: float, n: int = 1) -> float:
    """Closed-form fidelity of n gates under amplitude error, clamped to [0, 1].

    simple: |cos(eps pi n / 2)|
    sk1:    1 - (15/128) pi^4 eps^4 n   (truncation; remainder O(eps^6))
    bb1:    1 - (5/1024) pi^6 eps^6 n   (truncation; remainder O(eps^8))
    """
    if kind not in SEQUENCE_KINDS:
        raise ValueError(f"unknown sequence kind {kind!r}; expected one of {SEQUENCE_KINDS}")
    if n < 0:
        raise ValueError("gate count must be >= 0")
    if kind == "simple":
        f = abs(np.cos(epsilon * np.pi * n / 2.0))
    elif kind == "sk1":
        f = 1.0 - (15.0 / 128.0) * np.pi**4 * epsilon**4 * n
    else:
        f = 1.0 - (5.0 / 1024.0) * np.pi**6 * epsilon**6 * n
    return float(min(max(f, 0.0), 1.0))


@dataclass(frozen=True)
class FourLevelContext:
    """Optional full-manifold setting for gate playback.

    ``drive`` holds the nominal (calibration-point) complex Rabi amplitudes;
    pulse durations are set from the nominal clock rate, while the actual
    amplitudes are scaled by (1 + eps), so the realized areas pick up the
    systematic error. Sigma couplings and detuning carry through unchanged.
    """

    system: HyperfineSystem
    drive: TransitionDrive
    detuning: float = 0.0


def _repeated_population_two_level(seq: PulseSequence, epsilon: float, n: int) -> float:
    gate = sequence_unitary(seq, AmplitudeError(epsilon)).matrix
    psi = np.array([1.0, 0.0], dtype=complex)
    for _ in range(n):
        psi = gate @ psi
    return min(max(float(abs(psi[1]) ** 2), 0.0), 1.0)


def _repeated_population_four_level(
    seq: PulseSequence, epsilon: float, n: int, ctx: FourLevelContext
) -> float:
    omega_nominal = abs(ctx.drive.clock)
    if omega_nominal <= 0:
        raise ValueError("four-level playback needs a nonzero nominal clock rate")
    segments = []
    for p in seq.pulses:
        duration = p.theta / omega_nominal
        pulse_drive = ctx.drive.scaled((1.0 + epsilon) * np.exp(1j * p.phi))
        segments.append(rwa_hamiltonian(pulse_drive, ctx.detuning, ctx.system, duration))
    psi = ket(0, dim=4)
    for _ in range(n):
        psi = evolve_piecewise(segments, psi)
    return f1_population(psi)


def repeated_gate_population(
    kind: str,
    n: int,
    epsilon: float,
    context: FourLevelContext | None = None,
    theta: float = np.pi,
    phi: float = 0.0,
) -> float:
    """F=1 population after n sequential logical gates from |down>.

    Defaults to the qubit-subspace composition; pass a ``FourLevelContext``
    to play the same pulse program on the full manifold. For simple pulses
    the two-level result equals sin^2(n (1 + eps) pi / 2) exactly.
    """
    if n < 0:
        raise ValueError("gate count must be >= 0")
    seq = build_sequence(kind, theta, phi)
    if context is None:
        return _repeated_population_two_level(seq, epsilon, n)
    return _repeated_population_four_level(seq, epsilon, n, context)


def excitation_profile(kind: str, scales: Sequence[float], theta: float = np.pi, phi: float = 0.0) -> np.ndarray:
    """Transfer population of one logical gate vs uniform area scaling.

    Every pulse area is multiplied by s (equivalently eps = s - 1); the
    returned array holds the F=1 transfer from |down> for each s. Simple
    pulses trace sin^2(s pi / 2); SK1 and BB1 are flat-topped around s = 1.
    """
    seq = build_sequence(kind, theta, phi)
    down = np.array([1.0, 0.0], dtype=complex)
    out = np.empty(len(scales))
    for i, s in enumerate(scales):
        u = scaled_sequence_unitary(seq, float(s)).matrix
        out[i] = min(max(float(abs((u @ down)[1]) ** 2), 0.0), 1.0)
    return out


def scaling_order(
    kind: str,
    eps_range: tuple[float, float] = (1e-3, 3e-2),
    points: int = 25,
    infidelity_floor: float = 1e-13,
) -> float:
    """Fitted log-log exponent of per-gate infidelity vs amplitude error.

    Samples eps log-uniformly over ``eps_range``, computes the numeric
    per-gate infidelity against the ideal target, drops points below
    ``infidelity_floor`` (double-precision noise), and fits the slope.
    Expected: 2 (simple), 4 (sk1), 6 (bb1).
    """
    seq = build_sequence(kind, np.pi, 0.0)
    target = rotation(np.pi, 0.0)
    eps = np.geomspace(eps_range[0], eps_range[1], points)
    infid = np.array(
        [1.0 - gate_fidelity(sequence_unitary(seq, AmplitudeError(float(e))), target) for e in eps]
    )
    mask = infid > infidelity_floor
    if mask.sum() < 4:
        raise ValueError(
            "infidelity is below the numeric floor across the sampled range; "
            "raise the lower end of eps_range"
        )
    slope = np.polyfit(np.log(eps[mask]), np.log(infid[mask]), 1)[0]
    return float(slope)
