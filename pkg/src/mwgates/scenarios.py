"""Scenario runners that regenerate the figure datasets as CSV files.

Each scenario has a fixed column schema and a deterministic output: the same
resolved config and seed always produce byte-identical files. The runners
only wire module operations together and serialize; no physics lives here.

Column units: microseconds, MHz (Omega / 2 pi), micrometers, radians.
"""
from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass

import numpy as np

from . import config as cfg_mod
from .config import (
    InvalidParameterError,
    build_detection,
    build_drive,
    build_modes,
    build_profile,
    build_system,
    build_transition_drive,
    grid_values,
    log_grid_values,
)
from .field import TWO_PI, axial_scale, transition_rabi
from .ion import TransitionDrive, apply_detection, drive_scan, spectrum_scan
from .pulses import FourLevelContext, excitation_profile, repeated_gate_population, scaling_order

SCHEMAS = {
    "fig3b": ("t_us", "p_f1"),
    "fig3c": ("detuning_mhz", "p_f1"),
    "fig4b": ("phi_r_rad", "rabi_clock_mhz", "rabi_sigma_plus_mhz", "rabi_sigma_minus_mhz"),
    "fig5": ("z_um", "rabi_mhz"),
    "fig6": ("scale", "p_simple", "p_sk1", "p_bb1"),
    "fig7": ("z_um", "n", "p_f1"),
    "scaling-check": ("kind", "exponent"),
}

POPULATION_COLUMNS = {"p_f1", "p_simple", "p_sk1", "p_bb1"}


@dataclass(frozen=True)
class ScenarioResult:
    scenario: str
    config: dict
    columns: tuple[str, ...]
    rows: list[tuple]

    def column(self, name: str) -> np.ndarray:
        idx = self.columns.index(name)
        return np.array([row[idx] for row in self.rows])


def _mhz(omega_rad_per_s: float) -> float:
    return omega_rad_per_s / TWO_PI / 1e6


def _run_fig3b(cfg: dict) -> list[tuple]:
    p = cfg["params"]
    drive = build_transition_drive(cfg, p["z_um"])
    if not p["four_level"]:
        drive = TransitionDrive(clock=drive.clock)
    system = build_system(cfg)
    times_us = grid_values(p["t_us"])
    detuning = TWO_PI * p["detuning_mhz"] * 1e6
    populations = drive_scan(times_us * 1e-6, drive, detuning, system)
    return [(float(t), float(pop)) for t, pop in zip(times_us, populations)]


def _run_fig3c(cfg: dict) -> list[tuple]:
    p = cfg["params"]
    drive = build_transition_drive(cfg, p["z_um"], single_waveguide=p["single_waveguide"])
    system = build_system(cfg)
    detunings_mhz = grid_values(p["detuning_mhz"])
    probe = None if p["probe_time_us"] is None else p["probe_time_us"] * 1e-6
    populations = spectrum_scan(TWO_PI * detunings_mhz * 1e6, drive, system, pulse_time=probe)
    return [(float(d), float(pop)) for d, pop in zip(detunings_mhz, populations)]


def _run_fig4b(cfg: dict) -> list[tuple]:
    p = cfg["params"]
    modes = build_modes(cfg)
    profile = build_profile(cfg)
    base = build_drive(cfg)
    rows = []
    for phi_r in grid_values(p["phi_r_rad"]):
        drive = dataclasses.replace(base, phi_2=base.phi_1 + float(phi_r))
        clock, sp, sm = transition_rabi(p["z_um"], drive, modes, profile, cfg["field"]["g_sigma"])
        rows.append((float(phi_r), _mhz(clock), _mhz(sp), _mhz(sm)))
    return rows


def _run_fig5(cfg: dict) -> list[tuple]:
    p = cfg["params"]
    modes = build_modes(cfg)
    profile = build_profile(cfg)
    drive = build_drive(cfg)
    rows = []
    for z in grid_values(p["z_um"]):
        clock, _, _ = transition_rabi(float(z), drive, modes, profile, cfg["field"]["g_sigma"])
        rows.append((float(z), _mhz(clock)))
    return rows


def _run_fig6(cfg: dict) -> list[tuple]:
    p = cfg["params"]
    seq = cfg["sequence"]
    theta = seq["theta_over_pi"] * np.pi
    phi = seq["phi"]
    scales = grid_values(p["scale"])
    profiles = {
        kind: excitation_profile(kind, scales, theta=theta, phi=phi)
        for kind in ("simple", "sk1", "bb1")
    }
    return [
        (float(s), float(profiles["simple"][i]), float(profiles["sk1"][i]), float(profiles["bb1"][i]))
        for i, s in enumerate(scales)
    ]


def _run_fig7(cfg: dict) -> list[tuple]:
    p = cfg["params"]
    seq = cfg["sequence"]
    kind = seq["kind"]
    theta = seq["theta_over_pi"] * np.pi
    phi = seq["phi"]
    profile = build_profile(cfg)
    context = None
    if p["four_level"]:
        context = FourLevelContext(
            system=build_system(cfg),
            drive=build_transition_drive(cfg, profile.z0),
        )
    rows = []
    for z in grid_values(p["z_um"]):
        eps = axial_scale(float(z), profile) - 1.0
        for n in range(p["n_max"] + 1):
            pop = repeated_gate_population(kind, n, eps, context=context, theta=theta, phi=phi)
            rows.append((float(z), int(n), float(pop)))
    return rows


def _run_scaling_check(cfg: dict) -> list[tuple]:
    p = cfg["params"]
    eps = log_grid_values(p["epsilon"])
    rows = []
    for kind in ("simple", "sk1", "bb1"):
        slope = scaling_order(
            kind,
            eps_range=(float(eps[0]), float(eps[-1])),
            points=len(eps),
            infidelity_floor=p["infidelity_floor"],
        )
        rows.append((kind, float(slope)))
    return rows


_RUNNERS = {
    "fig3b": _run_fig3b,
    "fig3c": _run_fig3c,
    "fig4b": _run_fig4b,
    "fig5": _run_fig5,
    "fig6": _run_fig6,
    "fig7": _run_fig7,
    "scaling-check": _run_scaling_check,
}


def _apply_observation_model(rows: list[tuple], columns: tuple[str, ...], cfg: dict) -> list[tuple]:
    """Detection misclassification, then optional binomial shot noise.

    Both act on population columns only and leave everything else exact;
    with shots = 0 the populations are reported exactly.
    """
    detection = build_detection(cfg)
    shots = cfg["shots"]
    pop_idx = [i for i, c in enumerate(columns) if c in POPULATION_COLUMNS]
    if not pop_idx:
        return rows
    identity_map = (
        detection.p_dark_given_bright == 0.0 and detection.p_bright_given_dark == 0.0
    )
    if identity_map and shots == 0:
        return rows
    rng = np.random.default_rng(cfg["seed"])
    out = []
    for row in rows:
        row = list(row)
        for i in pop_idx:
            p = apply_detection(float(row[i]), detection)
            if shots > 0:
                p = rng.binomial(shots, p) / shots
            row[i] = float(p)
        out.append(tuple(row))
    return out


def run_scenario(cfg: dict) -> ScenarioResult:
    """Execute one resolved config; rows come back sorted on leading columns."""
    scenario = cfg["scenario"]
    if scenario not in _RUNNERS:
        raise InvalidParameterError(
            f"unknown scenario {scenario!r}; valid scenarios: {', '.join(cfg_mod.SCENARIOS)}"
        )
    cfg_mod.validate_config(cfg)
    columns = SCHEMAS[scenario]
    rows = _RUNNERS[scenario](cfg)
    rows = _apply_observation_model(rows, columns, cfg)
    return ScenarioResult(scenario=scenario, config=cfg, columns=columns, rows=rows)


# ---------------------------------------------------------------------------
# CSV serialization


def _format_value(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    return repr(float(value))


def serialize_csv(result: ScenarioResult) -> str:
    """Render a result to CSV text with the resolved config embedded."""
    header_json = json.dumps(result.config, sort_keys=True, separators=(",", ":"))
    lines = [
        f"# scenario: {result.scenario}",
        f"# config: {header_json}",
        ",".join(result.columns),
    ]
    for row in result.rows:
        lines.append(",".join(_format_value(v) for v in row))
    return "\n".join(lines) + "\n"


def write_csv(result: ScenarioResult, path) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(serialize_csv(result))


def read_csv(path) -> tuple[dict | None, tuple[str, ...], list[list[str]]]:
    """Read a scenario CSV: (embedded config or None, column names, raw rows)."""
    config = None
    columns: tuple[str, ...] | None = None
    rows: list[list[str]] = []
    with open(path, "r") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                stripped = line[1:].strip()
                if stripped.startswith("config:"):
                    config = json.loads(stripped[len("config:"):].strip())
                continue
            if columns is None:
                columns = tuple(part.strip() for part in line.split(","))
                continue
            rows.append(line.split(","))
    if columns is None:
        raise ValueError(f"{path}: no column header found")
    return config, columns, rows


def read_columns(path, names: tuple[str, ...]) -> tuple[np.ndarray, ...]:
    """Numeric columns by name from a scenario CSV."""
    _, columns, rows = read_csv(path)
    missing = [n for n in names if n not in columns]
    if missing:
        raise ValueError(f"{path}: missing columns {missing}; file has {list(columns)}")
    idx = [columns.index(n) for n in names]
    data = [np.array([float(row[i]) for row in rows]) for i in idx]
    return tuple(data)
