"""Render mwgates scenario CSVs as figures.

Consumes the CSV contract of the mwgates CLI (column schemas below) and
produces static images, one per scenario. Rendering is read-only and
headless; inputs are never modified.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

# Column contract of the mwgates scenario datasets.
SCHEMAS = {
    "fig3b": ("t_us", "p_f1"),
    "fig3c": ("detuning_mhz", "p_f1"),
    "fig4b": ("phi_r_rad", "rabi_clock_mhz", "rabi_sigma_plus_mhz", "rabi_sigma_minus_mhz"),
    "fig5": ("z_um", "rabi_mhz"),
    "fig6": ("scale", "p_simple", "p_sk1", "p_bb1"),
    "fig7": ("z_um", "n", "p_f1"),
}

# Band of area scalings spanned by the +/-6% systematic amplitude error.
AMPLITUDE_ERROR_BAND = (0.94, 1.06)

MAX_FIG7_LINES = 7


class SchemaError(ValueError):
    """The CSV header does not match the scenario's column contract."""


@dataclass(frozen=True)
class PlotSpec:
    """One render job: scenario id, input CSV, output image path."""

    scenario: str
    csv_path: Path
    out_path: Path

    def __post_init__(self):
        if self.scenario not in SCHEMAS:
            raise ValueError(
                f"unknown scenario {self.scenario!r}; known: {', '.join(SCHEMAS)}"
            )
        object.__setattr__(self, "csv_path", Path(self.csv_path))
        object.__setattr__(self, "out_path", Path(self.out_path))


def load_table(scenario: str, csv_path) -> dict[str, np.ndarray]:
    """Read and validate a scenario CSV; returns column-name -> values."""
    expected = SCHEMAS[scenario]
    header = None
    rows = []
    with open(csv_path) as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            if header is None:
                header = tuple(part.strip() for part in line.split(","))
                continue
            rows.append(line.split(","))
    if header is None:
        raise SchemaError(
            f"{csv_path}: empty file; expected columns {','.join(expected)}"
        )
    if header != expected:
        raise SchemaError(
            f"{csv_path}: expected columns {','.join(expected)}, found {','.join(header)}"
        )
    if not rows:
        raise SchemaError(f"{csv_path}: no data rows under header {','.join(expected)}")
    data = np.array([[float(v) for v in row] for row in rows])
    return {name: data[:, i] for i, name in enumerate(expected)}


def _figure(xlabel, ylabel, title):
    fig, ax = plt.subplots(figsize=(5.4, 3.6))
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    return fig, ax


def _fig3b(table):
    fig, ax = _figure("pulse duration (us)", "F=1 population", "Rabi oscillation")
    ax.plot(table["t_us"], table["p_f1"], color="tab:blue")
    ax.set_ylim(-0.02, 1.02)
    return fig


def _fig3c(table):
    fig, ax = _figure("detuning (MHz)", "F=1 population", "Hyperfine spectrum")
    ax.plot(table["detuning_mhz"], table["p_f1"], color="tab:blue")
    ax.set_ylim(-0.02, 1.02)
    return fig


def _fig4b(table):
    fig, ax = _figure("relative phase (rad)", "Rabi frequency (MHz)", "Polarization sweep")
    ax.plot(table["phi_r_rad"], table["rabi_clock_mhz"], color="k", label="clock")
    ax.plot(table["phi_r_rad"], table["rabi_sigma_plus_mhz"], color="tab:red", label="sigma+")
    ax.plot(
        table["phi_r_rad"], table["rabi_sigma_minus_mhz"],
        color="tab:blue", linestyle="--", label="sigma-",
    )
    ax.legend(frameon=False)
    return fig


def _fig5(table):
    fig, ax = _figure("axial position (um)", "Rabi frequency (MHz)", "Axial profile")
    z, rabi = table["z_um"], table["rabi_mhz"]
    ax.plot(z, rabi, color="tab:blue")
    peak = int(np.argmax(rabi))
    ax.plot([z[peak]], [rabi[peak]], "v", color="tab:red")
    ax.annotate(
        f"peak at {z[peak]:.0f} um",
        xy=(z[peak], rabi[peak]),
        xytext=(0, -14),
        textcoords="offset points",
        ha="center",
    )
    return fig


def _fig6(table):
    fig, ax = _figure("pulse area scale", "F=1 population", "Excitation profiles")
    ax.axvspan(*AMPLITUDE_ERROR_BAND, color="0.85", zorder=0)
    ax.plot(table["scale"], table["p_simple"], color="k", label="simple")
    ax.plot(table["scale"], table["p_sk1"], color="tab:red", label="SK1")
    ax.plot(table["scale"], table["p_bb1"], color="tab:blue", label="BB1")
    ax.set_ylim(-0.02, 1.02)
    ax.legend(frameon=False, loc="lower right")
    return fig


def _fig7(table):
    fig, ax = _figure("axial position (um)", "F=1 population", "Sequential gates")
    counts = np.unique(table["n"].astype(int))
    counts = counts[counts > 0]
    if counts.size > MAX_FIG7_LINES:
        idx = np.unique(np.linspace(0, counts.size - 1, MAX_FIG7_LINES).round().astype(int))
        counts = counts[idx]
    cmap = plt.get_cmap("viridis")
    for i, n in enumerate(counts):
        mask = table["n"].astype(int) == n
        order = np.argsort(table["z_um"][mask])
        ax.plot(
            table["z_um"][mask][order],
            table["p_f1"][mask][order],
            color=cmap(i / max(counts.size - 1, 1)),
            label=f"n = {n}",
        )
    ax.set_ylim(-0.02, 1.02)
    ax.legend(frameon=False, fontsize=8, ncol=2, loc="lower center")
    return fig


_BUILDERS = {
    "fig3b": _fig3b,
    "fig3c": _fig3c,
    "fig4b": _fig4b,
    "fig5": _fig5,
    "fig6": _fig6,
    "fig7": _fig7,
}


def build_figure(scenario: str, table: dict[str, np.ndarray]):
    """Matplotlib figure for a validated table (exposed for inspection)."""
    return _BUILDERS[scenario](table)


def render(spec: PlotSpec) -> Path:
    """Validate the CSV, render, and write the image; returns the image path."""
    table = load_table(spec.scenario, spec.csv_path)
    fig = build_figure(spec.scenario, table)
    try:
        fig.savefig(spec.out_path, bbox_inches="tight")
    finally:
        plt.close(fig)
    return spec.out_path
