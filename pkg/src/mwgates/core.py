"""Exact small-dimension quantum evolution.

States, unitaries, and piecewise-constant Schrodinger propagation for the
2-level qubit subspace and the 4-level ground hyperfine manifold. Matrix
exponentials are exact (closed-form Pauli decomposition in 2D,
eigendecomposition of the Hermitian generator in 4D), so no integrator
error enters any downstream check.

All objects are immutable values; every function is pure.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

UNITARITY_TOL = 1e-10
HERMITICITY_TOL = 1e-12
NORM_TOL = 1e-9

QUBIT_LABELS = ("down", "up")
MANIFOLD_LABELS = ("F0_m0", "F1_m-1", "F1_m0", "F1_m+1")

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


class DimensionMismatchError(ValueError):
    """Raised when operands of a composition do not share one dimension."""


def _frozen_array(values, shape) -> np.ndarray:
    arr = np.array(values, dtype=complex)
    if arr.shape != shape:
        raise ValueError(f"expected array of shape {shape}, got {arr.shape}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class StateVector:
    """Normalized complex amplitude vector over a labeled level basis.

    Dimension (2 or 4) is fixed at construction. ``labels[i]`` names the
    level carrying ``amplitudes[i]``.
    """

    amplitudes: np.ndarray
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        arr = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if arr.shape[0] not in (2, 4):
            raise ValueError(f"state dimension must be 2 or 4, got {arr.shape[0]}")
        norm = float(np.sum(np.abs(arr) ** 2))
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state vector not normalized: sum |a|^2 = {norm!r}")
        labels = self.labels or (QUBIT_LABELS if arr.shape[0] == 2 else MANIFOLD_LABELS)
        if len(labels) != arr.shape[0]:
            raise ValueError("label count must match the state dimension")
        arr.setflags(write=False)
        object.__setattr__(self, "amplitudes", arr)
        object.__setattr__(self, "labels", tuple(labels))

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def population(self, index: int) -> float:
        return float(np.abs(self.amplitudes[index]) ** 2)

    def populations(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


def ket(index: int, dim: int = 2) -> StateVector:
    """Basis state |index> in the given dimension."""
    amps = np.zeros(dim, dtype=complex)
    amps[index] = 1.0
    return StateVector(amps)


@dataclass(frozen=True)
class Unitary:
    """A 2x2 or 4x4 unitary matrix, validated to ``UNITARITY_TOL`` on construction.

    Global phase is deliberately never normalized away: a 2*pi rotation is
    -I and must compose as such inside composite pulse sequences. Use
    phase-invariant metrics (``gate_fidelity``) for comparisons.
    """

    matrix: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        if mat.shape not in ((2, 2), (4, 4)):
            raise ValueError(f"unitary must be 2x2 or 4x4, got {mat.shape}")
        defect = np.max(np.abs(mat.conj().T @ mat - np.eye(mat.shape[0])))
        if defect >= UNITARITY_TOL:
            raise ValueError(f"matrix is not unitary: max |U^dag U - I| = {defect:.3e}")
        mat = mat.copy()
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def apply(self, psi: StateVector) -> StateVector:
        if psi.dim != self.dim:
            raise DimensionMismatchError(
                f"unitary dimension {self.dim} does not match state dimension {psi.dim}"
            )
        return StateVector(self.matrix @ psi.amplitudes, psi.labels)


def identity(dim: int = 2) -> Unitary:
    return Unitary(np.eye(dim, dtype=complex))


@dataclass(frozen=True)
class HamiltonianSegment:
    """A constant Hermitian generator (rad/s) applied for a fixed duration (s)."""

    matrix: np.ndarray
    duration: float

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        if mat.shape not in ((2, 2), (4, 4)):
            raise ValueError(f"Hamiltonian must be 2x2 or 4x4, got {mat.shape}")
        defect = np.max(np.abs(mat - mat.conj().T))
        if defect >= HERMITICITY_TOL:
            raise ValueError(f"segment is not Hermitian: max |H - H^dag| = {defect:.3e}")
        if not np.isfinite(self.duration) or self.duration < 0:
            raise ValueError(f"segment duration must be >= 0, got {self.duration!r}")
        mat = mat.copy()
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def expm_segment(segment: HamiltonianSegment) -> Unitary:
    """Exact exp(-i H t) for one segment.

    2x2: closed form via the Pauli decomposition H = b*I + a.sigma.
    4x4: eigendecomposition of the Hermitian generator.
    """
    h = segment.matrix
    t = segment.duration
    if t == 0.0:
        return identity(segment.dim)
    if segment.dim == 2:
        b = 0.5 * (h[0, 0] + h[1, 1]).real
        ax = h[1, 0].real
        ay = h[1, 0].imag
        az = 0.5 * (h[0, 0] - h[1, 1]).real
        amag = float(np.sqrt(ax * ax + ay * ay + az * az))
        phase = np.exp(-1j * b * t)
        if amag * t == 0.0:
            return Unitary(phase * np.eye(2, dtype=complex))
        nx, ny, nz = ax / amag, ay / amag, az / amag
        u = np.cos(amag * t) * np.eye(2, dtype=complex) - 1j * np.sin(amag * t) * (
            nx * SIGMA_X + ny * SIGMA_Y + nz * SIGMA_Z
        )
        return Unitary(phase * u)
    evals, evecs = np.linalg.eigh(h)
    u = (evecs * np.exp(-1j * evals * t)) @ evecs.conj().T
    return Unitary(u)


def compose(units: Sequence[Unitary], dim: int | None = None) -> Unitary:
    """Time-ordered product of unitaries, earliest factor first.

    ``compose([U1, U2, ..., Un])`` returns ``Un @ ... @ U2 @ U1``, i.e. the
    operator that applies ``U1`` first. An empty list gives the identity
    (dimension ``dim``, default 2).
    """
    units = list(units)
    if not units:
        return identity(dim or 2)
    d = units[0].dim
    if dim is not None and d != dim:
        raise DimensionMismatchError(f"factor 0 has dimension {d}, expected {dim}")
    total = units[0].matrix
    for i, u in enumerate(units[1:], start=1):
        if u.dim != d:
            raise DimensionMismatchError(
                f"factor {i} has dimension {u.dim}, expected {d}"
            )
        total = u.matrix @ total
    return Unitary(total)


def evolve_piecewise(segments: Iterable[HamiltonianSegment], psi0: StateVector) -> StateVector:
    """Propagate psi0 through a list of constant segments, earliest first.

    Each segment is applied with an exact matrix exponential; the norm is
    preserved to better than 1e-12 for any segment list.
    """
    psi = psi0
    for i, seg in enumerate(segments):
        if seg.dim != psi.dim:
            raise DimensionMismatchError(
                f"segment {i} has dimension {seg.dim}, expected {psi.dim}"
            )
        psi = expm_segment(seg).apply(psi)
    return psi


def propagator(segments: Iterable[HamiltonianSegment], dim: int = 2) -> Unitary:
    """Total time-ordered propagator of a segment list (earliest first)."""
    return compose([expm_segment(s) for s in segments], dim=dim)


def gate_fidelity(u: Unitary, v: Unitary) -> float:
    """|Tr(U^dag V)| / 2 between two qubit unitaries.

    Invariant under a global phase of either argument. Defined on the 2x2
    qubit block only; project 4x4 evolutions with ``qubit_block`` first.
    """
    if u.dim != 2 or v.dim != 2:
        raise ValueError("gate fidelity is defined on 2x2 unitaries; "
                         "project 4x4 evolutions onto the qubit block first")
    f = abs(np.trace(u.matrix.conj().T @ v.matrix)) / 2.0
    return min(float(f), 1.0)


def qubit_block(u: Unitary, indices: tuple[int, int] = (0, 2)) -> Unitary:
    """Extract the qubit 2x2 block of a 4x4 unitary.

    Default indices pick the |F=0,m=0> and |F=1,m=0> levels of the manifold
    ordering. Raises if leakage out of the block breaks unitarity.
    """
    if u.dim != 4:
        raise ValueError("qubit_block expects a 4x4 unitary")
    i, j = indices
    block = np.array(
        [[u.matrix[i, i], u.matrix[i, j]], [u.matrix[j, i], u.matrix[j, j]]],
        dtype=complex,
    )
    return Unitary(block)
