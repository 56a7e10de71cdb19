"""Two-waveguide near-field microwave model.

Complex field phasors from the superposition of the two waveguide currents,
the standing-wave axial envelope, the polarization decomposition against the
static quantization field (along y), and the conversion of field components
into transition Rabi frequencies.

Conventions: the physical field is Re[B e^{i w t}] with B the complex phasor
returned here (mT). Axial positions are in micrometers, currents in amperes,
angular frequencies in rad/s.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

# Bohr magneton over Planck constant, MHz of Rabi frequency per mT of field
# on a unit-strength transition. One constants table for the whole package.
MU_B_MHZ_PER_MT = 13.996

TWO_PI = 2.0 * np.pi

# Anchors of the default axial calibration: peak at z0 = 957 um, 6% droop
# 657 um away (z = 300 um).
DEFAULT_Z0_UM = 957.0
DEFAULT_OMEGA_MAX = TWO_PI * 0.52e6  # rad/s
DEFAULT_CURVATURE_PER_UM2 = 0.06 / 657.0**2
# Guided wavelength making the cosine shape meet the same 6%-at-657-um anchor.
DEFAULT_LAMBDA_G_UM = TWO_PI * 657.0 / np.arccos(0.94)

DEFAULT_TRAP_EXTENT_UM = (0.0, 2000.0)


@dataclass(frozen=True)
class WaveguideMode:
    """Field-per-unit-current coefficients of one waveguide (mT/A)."""

    beta_x: float
    beta_y: float
    index: int

    def __post_init__(self):
        if self.index not in (1, 2):
            raise ValueError(f"waveguide index must be 1 or 2, got {self.index}")


def default_modes(beta_x: float = 0.08, beta_y: float = 0.17) -> tuple[WaveguideMode, WaveguideMode]:
    """The symmetric waveguide pair: equal beta_x, sign-flipped beta_y."""
    return (
        WaveguideMode(beta_x=beta_x, beta_y=beta_y, index=1),
        WaveguideMode(beta_x=beta_x, beta_y=-beta_y, index=2),
    )


@dataclass(frozen=True)
class DriveSettings:
    """Per-waveguide current amplitude and phase, plus the shared drive frequency."""

    current_1: float  # A, peak
    current_2: float  # A, peak
    phi_1: float = 0.0  # rad
    phi_2: float = 0.0  # rad
    omega_mw: float = TWO_PI * 12.64e9  # rad/s

    def __post_init__(self):
        for name in ("current_1", "current_2"):
            value = getattr(self, name)
            if not np.isfinite(value) or value < 0:
                raise ValueError(f"{name} must be a finite current >= 0 A, got {value!r}")
        object.__setattr__(self, "phi_1", float(self.phi_1) % TWO_PI)
        object.__setattr__(self, "phi_2", float(self.phi_2) % TWO_PI)

    @property
    def relative_phase(self) -> float:
        """phi_2 - phi_1, wrapped to [0, 2*pi)."""
        return (self.phi_2 - self.phi_1) % TWO_PI


@dataclass(frozen=True)
class RabiProfile:
    """Axial model of the qubit Rabi frequency Omega(z).

    ``shape`` selects the standing-wave envelope: ``quadratic`` (what the
    device calibration fits) or ``cosine`` (quarter-wave-terminated line,
    useful for extrapolation). ``traveling_fraction`` adds a constant floor
    for an unbalanced forward/backward wave; zero by default so it cannot
    affect calibrated runs.
    """

    z0: float = DEFAULT_Z0_UM  # um, antinode position
    omega_max: float = DEFAULT_OMEGA_MAX  # rad/s, peak qubit Rabi frequency
    shape: Literal["quadratic", "cosine"] = "quadratic"
    curvature: float = DEFAULT_CURVATURE_PER_UM2  # 1/um^2, quadratic shape
    lambda_g: float = DEFAULT_LAMBDA_G_UM  # um, cosine shape
    traveling_fraction: float = 0.0
    z_min: float = DEFAULT_TRAP_EXTENT_UM[0]  # um
    z_max: float = DEFAULT_TRAP_EXTENT_UM[1]  # um

    def __post_init__(self):
        if self.shape not in ("quadratic", "cosine"):
            raise ValueError(f"unknown profile shape {self.shape!r}")
        if not 0.0 <= self.traveling_fraction < 1.0:
            raise ValueError("traveling_fraction must lie in [0, 1)")
        if self.omega_max <= 0:
            raise ValueError("omega_max must be positive")
        if self.z_min >= self.z_max:
            raise ValueError("trap extent must satisfy z_min < z_max")

    def check_extent(self, z: float) -> None:
        if not (self.z_min <= z <= self.z_max):
            raise ValueError(
                f"z = {z} um outside the trap extent [{self.z_min}, {self.z_max}] um"
            )


def axial_scale(z: float, profile: RabiProfile) -> float:
    """Dimensionless standing-wave envelope s(z), with s(z0) = 1.

    Quadratic: s = 1 - c (z - z0)^2, rejected once it would reach zero
    (outside the model's validity). Cosine: |cos(2 pi (z - z0) / lambda_g)|
    blended with the traveling-wave floor f as (1 - f) |cos| + f.
    """
    profile.check_extent(z)
    d = z - profile.z0
    f = profile.traveling_fraction
    if profile.shape == "quadratic":
        s = 1.0 - profile.curvature * d * d
        if s <= 0.0:
            raise ValueError(
                f"quadratic envelope is non-positive at z = {z} um; "
                "outside the shape's validity range"
            )
        return (1.0 - f) * s + f
    return (1.0 - f) * abs(np.cos(TWO_PI * d / profile.lambda_g)) + f


def superpose_field(
    z: float,
    drive: DriveSettings,
    modes: tuple[WaveguideMode, WaveguideMode],
    profile: RabiProfile,
) -> tuple[complex, complex]:
    """Complex field phasors (B_x, B_y) in mT at axial position z.

    B_alpha = sum_k beta_alpha,k * I_k * s(z) * e^{i phi_k}; both waveguides
    share the axial envelope s(z).
    """
    s = axial_scale(z, profile)
    currents = (drive.current_1, drive.current_2)
    phases = (drive.phi_1, drive.phi_2)
    bx = 0.0 + 0.0j
    by = 0.0 + 0.0j
    for mode, current, phi in zip(modes, currents, phases):
        amp = current * s * np.exp(1j * phi)
        bx += mode.beta_x * amp
        by += mode.beta_y * amp
    return bx, by


@dataclass(frozen=True)
class PolarizationComponents:
    """Spherical decomposition of the field against the y quantization axis (mT)."""

    b_pi: complex
    b_sigma_plus: complex
    b_sigma_minus: complex

    def power(self) -> float:
        return float(
            abs(self.b_pi) ** 2 + abs(self.b_sigma_plus) ** 2 + abs(self.b_sigma_minus) ** 2
        )


def polarization_components(bx: complex, by: complex) -> PolarizationComponents:
    """Decompose (B_x, B_y) into pi and sigma+/- components.

    The quantization axis is y, so b_pi = B_y and the transverse plane is
    (x, z) with B_z = 0 in this geometry: b_sigma+/- = (B_x -/+ i B_z)/sqrt(2)
    = B_x/sqrt(2). The decomposition preserves total field power.
    """
    inv_sqrt2 = 1.0 / np.sqrt(2.0)
    return PolarizationComponents(
        b_pi=complex(by),
        b_sigma_plus=complex(bx) * inv_sqrt2,
        b_sigma_minus=complex(bx) * inv_sqrt2,
    )


def transition_rabi_phasors(
    z: float,
    drive: DriveSettings,
    modes: tuple[WaveguideMode, WaveguideMode],
    profile: RabiProfile,
    g_sigma: float = 1.0,
    mu_b_mhz_per_mt: float = MU_B_MHZ_PER_MT,
) -> tuple[complex, complex, complex]:
    """Complex Rabi amplitudes (clock, sigma+, sigma-) in rad/s at z.

    The clock rate is (mu_B/hbar) |b_pi|; the sigma rates are referenced to
    the transverse Cartesian amplitude, i.e. sqrt(2) * |b_sigma|, with the
    relative matrix-element factor ``g_sigma`` as a single calibration knob.
    With g_sigma = 1 the sigma/clock ratio of a single-waveguide drive equals
    |beta_x| / |beta_y|, matching how the mode coefficients are back-solved
    from measured Rabi ratios.
    """
    bx, by = superpose_field(z, drive, modes, profile)
    pol = polarization_components(bx, by)
    rad_per_mt = TWO_PI * mu_b_mhz_per_mt * 1e6
    clock = rad_per_mt * pol.b_pi
    sigma_plus = rad_per_mt * g_sigma * np.sqrt(2.0) * pol.b_sigma_plus
    sigma_minus = rad_per_mt * g_sigma * np.sqrt(2.0) * pol.b_sigma_minus
    return clock, sigma_plus, sigma_minus


def transition_rabi(
    z: float,
    drive: DriveSettings,
    modes: tuple[WaveguideMode, WaveguideMode],
    profile: RabiProfile,
    g_sigma: float = 1.0,
    mu_b_mhz_per_mt: float = MU_B_MHZ_PER_MT,
) -> tuple[float, float, float]:
    """Rabi frequency magnitudes (clock, sigma+, sigma-) in rad/s at z."""
    clock, sp, sm = transition_rabi_phasors(z, drive, modes, profile, g_sigma, mu_b_mhz_per_mt)
    return abs(clock), abs(sp), abs(sm)


def calibrated_balanced_current(
    omega_max: float,
    modes: tuple[WaveguideMode, WaveguideMode],
    mu_b_mhz_per_mt: float = MU_B_MHZ_PER_MT,
) -> float:
    """Per-waveguide current (A) that reaches the given peak clock Rabi rate.

    Assumes the balanced pi-polarized drive (equal currents, relative phase
    pi), where the y components of the two waveguides add: |B_y| =
    (|beta_y,1| + |beta_y,2|) * I at the antinode.
    """
    beta_sum = abs(modes[0].beta_y) + abs(modes[1].beta_y)
    peak_field_mt = (omega_max / TWO_PI) / (mu_b_mhz_per_mt * 1e6)
    return peak_field_mt / beta_sum


def attenuation_to_rabi(attenuation_db: float, omega_ref: float) -> float:
    """Rabi frequency after a source attenuation, linear regime only.

    Field amplitude scales as root power: Omega = Omega_ref * 10^(-A/20).
    """
    if attenuation_db < 0:
        raise ValueError("attenuation must be >= 0 dB")
    return omega_ref * 10.0 ** (-attenuation_db / 20.0)
