"""Desk-scale simulator for near-field microwave qubit control.

Subsystems: exact small-dimension evolution (``core``), the two-waveguide
field model (``field``), four-level hyperfine dynamics (``ion``), composite
pulse sequences (``pulses``), dataset fits (``fitting``), and the scenario
runner with its CLI (``config``, ``scenarios``, ``cli``).
"""

from .core import (
    HamiltonianSegment,
    StateVector,
    Unitary,
    compose,
    evolve_piecewise,
    gate_fidelity,
    ket,
    qubit_block,
)
from .field import (
    DriveSettings,
    PolarizationComponents,
    RabiProfile,
    WaveguideMode,
    attenuation_to_rabi,
    axial_scale,
    calibrated_balanced_current,
    default_modes,
    polarization_components,
    superpose_field,
    transition_rabi,
    transition_rabi_phasors,
)
from .ion import (
    DetectionModel,
    HyperfineSystem,
    TransitionDrive,
    apply_detection,
    drive_scan,
    f1_population,
    invert_detection,
    rwa_hamiltonian,
    spectrum_scan,
    zeeman_splitting,
)
from .pulses import (
    AmplitudeError,
    FourLevelContext,
    Pulse,
    PulseSequence,
    analytic_fidelity,
    build_sequence,
    correction_phase,
    excitation_profile,
    repeated_gate_population,
    rotation,
    scaling_order,
    sequence_unitary,
)
from .fitting import FitResult, fit_abs_sinusoid, fit_quadratic
from .config import default_config, resolve_config
from .scenarios import run_scenario, serialize_csv, write_csv

__version__ = "0.1.0"
