"""Configuration tree for scenario runs.

A run is described by a nested key-value tree (JSON on disk) with sections
``field``, ``drive``, ``ion``, ``sequence``, and a per-scenario ``params``
block. Unknown keys are rejected with their dotted path; every resolved
tree embeds scenario, seed, and shot settings so an output header can be
re-fed as a config file.

Sweep grids are inclusive (start, stop, points) triples; ``scaling-check``
interprets its epsilon grid logarithmically.
"""
from __future__ import annotations

import copy
import json
import math

import numpy as np

from . import field as field_mod
from . import ion as ion_mod
from .field import DriveSettings, RabiProfile, WaveguideMode, calibrated_balanced_current
from .ion import DetectionModel, HyperfineSystem

TWO_PI = 2.0 * math.pi

SCENARIOS = ("fig3b", "fig3c", "fig4b", "fig5", "fig6", "fig7", "scaling-check")


class UnknownKeyError(ValueError):
    """An override names a key that does not exist in the schema."""


class InvalidParameterError(ValueError):
    """A known key carries an unphysical or ill-typed value."""


def _scenario_param_defaults(scenario: str) -> dict:
    return {
        "fig3b": {
            "z_um": 300.0,
            "t_us": [0.0, 4.0, 401],
            "detuning_mhz": 0.0,
            "four_level": True,
        },
        "fig3c": {
            "z_um": 300.0,
            "detuning_mhz": [-15.0, 15.0, 601],
            "probe_time_us": None,
            "single_waveguide": 1,
        },
        "fig4b": {
            "z_um": 957.0,
            "phi_r_rad": [0.0, TWO_PI, 97],
        },
        "fig5": {
            "z_um": [157.0, 1757.0, 81],
        },
        "fig6": {
            "scale": [0.0, 2.0, 201],
        },
        "fig7": {
            "z_um": [157.0, 1757.0, 81],
            "n_max": 55,
            "four_level": False,
        },
        "scaling-check": {
            "epsilon": [1e-3, 3e-2, 25],
            "infidelity_floor": 1e-13,
        },
    }[scenario]


def default_config(scenario: str) -> dict:
    """The fully-resolved default tree for one scenario."""
    if scenario not in SCENARIOS:
        raise InvalidParameterError(
            f"unknown scenario {scenario!r}; valid scenarios: {', '.join(SCENARIOS)}"
        )
    return {
        "scenario": scenario,
        "seed": 0,
        "shots": 0,
        "field": {
            "beta_x": 0.08,
            "beta_y": 0.17,
            "z0_um": 957.0,
            "omega_max_mhz": 0.52,
            "shape": "quadratic",
            "curvature_per_um2": field_mod.DEFAULT_CURVATURE_PER_UM2,
            "lambda_g_um": field_mod.DEFAULT_LAMBDA_G_UM,
            "traveling_fraction": 0.0,
            "z_min_um": field_mod.DEFAULT_TRAP_EXTENT_UM[0],
            "z_max_um": field_mod.DEFAULT_TRAP_EXTENT_UM[1],
            "g_sigma": 1.0,
        },
        "drive": {
            "current_1_a": None,  # null -> calibrated from field.omega_max_mhz
            "current_2_a": None,
            "phi_1_rad": 0.0,
            "phi_2_rad": math.pi,
            "omega_mw_ghz": 12.64,
        },
        "ion": {
            "static_field_mt": 0.74,
            "delta_zeeman_mhz": None,  # null -> derived from static_field_mt
            "detection": {
                "p_dark_given_bright": 0.0,
                "p_bright_given_dark": 0.0,
            },
        },
        "sequence": {
            "kind": "simple",
            "theta_over_pi": 1.0,
            "phi": 0.0,
        },
        "params": _scenario_param_defaults(scenario),
    }


def merge_config(base: dict, override: dict, path: str = "") -> dict:
    """Deep-merge ``override`` into ``base``; unknown keys are rejected."""
    merged = copy.deepcopy(base)
    for key, value in override.items():
        dotted = f"{path}{key}"
        if key not in merged:
            raise UnknownKeyError(f"unknown configuration key: {dotted}")
        if isinstance(merged[key], dict) and isinstance(value, dict):
            merged[key] = merge_config(merged[key], value, path=f"{dotted}.")
        elif isinstance(merged[key], dict):
            raise InvalidParameterError(f"{dotted} must be a table of keys")
        else:
            merged[key] = copy.deepcopy(value)
    return merged


def parse_set_override(expr: str) -> dict:
    """Turn a ``--set a.b.c=value`` expression into a nested override dict.

    Values parse as JSON literals where possible, otherwise as strings.
    """
    if "=" not in expr:
        raise InvalidParameterError(f"--set expects key=value, got {expr!r}")
    dotted, raw = expr.split("=", 1)
    dotted = dotted.strip()
    if not dotted:
        raise InvalidParameterError(f"--set expects key=value, got {expr!r}")
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    tree: dict = {}
    node = tree
    parts = dotted.split(".")
    for part in parts[:-1]:
        node[part] = {}
        node = node[part]
    node[parts[-1]] = value
    return tree


def resolve_config(scenario: str, overrides: list[dict] | None = None, seed: int | None = None) -> dict:
    """Defaults merged with overrides, then validated; returns the resolved tree."""
    cfg = default_config(scenario)
    for override in overrides or []:
        override = dict(override)
        # a re-fed header carries scenario/seed/shots at top level; keep the
        # scenario pinned to the subcommand argument
        if override.get("scenario", scenario) != scenario:
            raise InvalidParameterError(
                f"config file is for scenario {override['scenario']!r}, not {scenario!r}"
            )
        override.pop("scenario", None)
        cfg = merge_config(cfg, override)
    if seed is not None:
        cfg["seed"] = int(seed)
    validate_config(cfg)
    return cfg


def _require_number(cfg_value, key: str, minimum=None, maximum=None, allow_none=False):
    if cfg_value is None:
        if allow_none:
            return None
        raise InvalidParameterError(f"{key} must be a number, got null")
    if isinstance(cfg_value, bool) or not isinstance(cfg_value, (int, float)):
        raise InvalidParameterError(f"{key} must be a number, got {cfg_value!r}")
    if not math.isfinite(cfg_value):
        raise InvalidParameterError(f"{key} must be finite, got {cfg_value!r}")
    if minimum is not None and cfg_value < minimum:
        raise InvalidParameterError(f"{key} must be >= {minimum}, got {cfg_value!r}")
    if maximum is not None and cfg_value > maximum:
        raise InvalidParameterError(f"{key} must be <= {maximum}, got {cfg_value!r}")
    return float(cfg_value)


def _require_grid(value, key: str):
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 3
        or isinstance(value[2], bool)
        or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
    ):
        raise InvalidParameterError(f"{key} must be an inclusive [start, stop, points] triple")
    start, stop, points = value
    if int(points) != points or points < 2:
        raise InvalidParameterError(f"{key} points must be an integer >= 2")
    if not (math.isfinite(start) and math.isfinite(stop)) or stop <= start:
        raise InvalidParameterError(f"{key} must have finite start < stop")
    return float(start), float(stop), int(points)


def grid_values(triple) -> np.ndarray:
    start, stop, points = triple
    return np.linspace(float(start), float(stop), int(points))


def log_grid_values(triple) -> np.ndarray:
    start, stop, points = triple
    return np.geomspace(float(start), float(stop), int(points))


def validate_config(cfg: dict) -> None:
    """Physical and structural validation of a resolved tree."""
    scenario = cfg["scenario"]
    if scenario not in SCENARIOS:
        raise InvalidParameterError(f"unknown scenario {scenario!r}")
    if isinstance(cfg["seed"], bool) or not isinstance(cfg["seed"], int) or cfg["seed"] < 0:
        raise InvalidParameterError("seed must be a non-negative integer")
    if isinstance(cfg["shots"], bool) or not isinstance(cfg["shots"], int) or cfg["shots"] < 0:
        raise InvalidParameterError("shots must be a non-negative integer")

    f = cfg["field"]
    _require_number(f["beta_x"], "field.beta_x", minimum=0.0)
    _require_number(f["beta_y"], "field.beta_y", minimum=0.0)
    _require_number(f["omega_max_mhz"], "field.omega_max_mhz", minimum=1e-12)
    _require_number(f["z0_um"], "field.z0_um")
    _require_number(f["curvature_per_um2"], "field.curvature_per_um2", minimum=0.0)
    _require_number(f["lambda_g_um"], "field.lambda_g_um", minimum=1e-9)
    _require_number(f["traveling_fraction"], "field.traveling_fraction", minimum=0.0)
    if f["traveling_fraction"] >= 1.0:
        raise InvalidParameterError("field.traveling_fraction must be < 1")
    if f["shape"] not in ("quadratic", "cosine"):
        raise InvalidParameterError(f"field.shape must be quadratic or cosine, got {f['shape']!r}")
    _require_number(f["z_min_um"], "field.z_min_um")
    _require_number(f["z_max_um"], "field.z_max_um")
    if f["z_min_um"] >= f["z_max_um"]:
        raise InvalidParameterError("field.z_min_um must be below field.z_max_um")
    _require_number(f["g_sigma"], "field.g_sigma", minimum=0.0)

    d = cfg["drive"]
    _require_number(d["current_1_a"], "drive.current_1_a", minimum=0.0, allow_none=True)
    _require_number(d["current_2_a"], "drive.current_2_a", minimum=0.0, allow_none=True)
    _require_number(d["phi_1_rad"], "drive.phi_1_rad")
    _require_number(d["phi_2_rad"], "drive.phi_2_rad")
    _require_number(d["omega_mw_ghz"], "drive.omega_mw_ghz", minimum=0.0)

    i = cfg["ion"]
    _require_number(i["static_field_mt"], "ion.static_field_mt", minimum=0.0)
    _require_number(i["delta_zeeman_mhz"], "ion.delta_zeeman_mhz", minimum=0.0, allow_none=True)
    det = i["detection"]
    _require_number(det["p_dark_given_bright"], "ion.detection.p_dark_given_bright", 0.0, 1.0)
    _require_number(det["p_bright_given_dark"], "ion.detection.p_bright_given_dark", 0.0, 1.0)

    s = cfg["sequence"]
    if s["kind"] not in ("simple", "sk1", "bb1"):
        raise InvalidParameterError(f"sequence.kind must be simple, sk1, or bb1, got {s['kind']!r}")
    theta = _require_number(s["theta_over_pi"], "sequence.theta_over_pi", minimum=0.0)
    if theta > 4.0:
        raise InvalidParameterError("sequence.theta_over_pi must be <= 4")
    _require_number(s["phi"], "sequence.phi")

    p = cfg["params"]
    if scenario == "fig3b":
        _require_number(p["z_um"], "params.z_um")
        _require_grid(p["t_us"], "params.t_us")
        _require_number(p["detuning_mhz"], "params.detuning_mhz")
        if not isinstance(p["four_level"], bool):
            raise InvalidParameterError("params.four_level must be true or false")
    elif scenario == "fig3c":
        _require_number(p["z_um"], "params.z_um")
        _require_grid(p["detuning_mhz"], "params.detuning_mhz")
        _require_number(p["probe_time_us"], "params.probe_time_us", minimum=0.0, allow_none=True)
        if p["single_waveguide"] not in (0, 1, 2):
            raise InvalidParameterError("params.single_waveguide must be 0 (both), 1, or 2")
    elif scenario == "fig4b":
        _require_number(p["z_um"], "params.z_um")
        _require_grid(p["phi_r_rad"], "params.phi_r_rad")
    elif scenario == "fig5":
        _require_grid(p["z_um"], "params.z_um")
    elif scenario == "fig6":
        _require_grid(p["scale"], "params.scale")
        if p["scale"][0] < 0:
            raise InvalidParameterError("params.scale must start at >= 0")
    elif scenario == "fig7":
        _require_grid(p["z_um"], "params.z_um")
        if isinstance(p["n_max"], bool) or not isinstance(p["n_max"], int) or p["n_max"] < 0:
            raise InvalidParameterError("params.n_max must be a non-negative integer")
        if not isinstance(p["four_level"], bool):
            raise InvalidParameterError("params.four_level must be true or false")
    elif scenario == "scaling-check":
        lo, hi, _ = _require_grid(p["epsilon"], "params.epsilon")
        if lo <= 0:
            raise InvalidParameterError("params.epsilon must start above 0")
        _require_number(p["infidelity_floor"], "params.infidelity_floor", minimum=0.0)


# ---------------------------------------------------------------------------
# builders: resolved tree -> domain objects


def build_modes(cfg: dict) -> tuple[WaveguideMode, WaveguideMode]:
    return field_mod.default_modes(cfg["field"]["beta_x"], cfg["field"]["beta_y"])


def build_profile(cfg: dict) -> RabiProfile:
    f = cfg["field"]
    return RabiProfile(
        z0=f["z0_um"],
        omega_max=TWO_PI * f["omega_max_mhz"] * 1e6,
        shape=f["shape"],
        curvature=f["curvature_per_um2"],
        lambda_g=f["lambda_g_um"],
        traveling_fraction=f["traveling_fraction"],
        z_min=f["z_min_um"],
        z_max=f["z_max_um"],
    )


def build_drive(cfg: dict, single_waveguide: int = 0) -> DriveSettings:
    """Drive settings; null currents calibrate the balanced pi-polarized drive.

    ``single_waveguide`` = 1 or 2 zeroes the other current (spectroscopy with
    one source); 0 keeps both.
    """
    d = cfg["drive"]
    profile = build_profile(cfg)
    modes = build_modes(cfg)
    default_current = calibrated_balanced_current(profile.omega_max, modes)
    i1 = default_current if d["current_1_a"] is None else float(d["current_1_a"])
    i2 = default_current if d["current_2_a"] is None else float(d["current_2_a"])
    if single_waveguide == 1:
        i2 = 0.0
    elif single_waveguide == 2:
        i1 = 0.0
    return DriveSettings(
        current_1=i1,
        current_2=i2,
        phi_1=d["phi_1_rad"],
        phi_2=d["phi_2_rad"],
        omega_mw=TWO_PI * d["omega_mw_ghz"] * 1e9,
    )


def build_system(cfg: dict) -> HyperfineSystem:
    i = cfg["ion"]
    dz = None if i["delta_zeeman_mhz"] is None else TWO_PI * i["delta_zeeman_mhz"] * 1e6
    return HyperfineSystem(static_field=i["static_field_mt"], delta_zeeman=dz)


def build_detection(cfg: dict) -> DetectionModel:
    det = cfg["ion"]["detection"]
    return DetectionModel(
        p_dark_given_bright=det["p_dark_given_bright"],
        p_bright_given_dark=det["p_bright_given_dark"],
    )


def build_transition_drive(cfg: dict, z_um: float, single_waveguide: int = 0) -> ion_mod.TransitionDrive:
    """Complex transition Rabi amplitudes at an axial position."""
    modes = build_modes(cfg)
    profile = build_profile(cfg)
    drive = build_drive(cfg, single_waveguide=single_waveguide)
    clock, sp, sm = field_mod.transition_rabi_phasors(
        z_um, drive, modes, profile, g_sigma=cfg["field"]["g_sigma"]
    )
    return ion_mod.TransitionDrive(clock=clock, sigma_plus=sp, sigma_minus=sm)
