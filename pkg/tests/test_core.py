import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mwgates.core import (
    DimensionMismatchError,
    HamiltonianSegment,
    SIGMA_X,
    StateVector,
    Unitary,
    compose,
    evolve_piecewise,
    expm_segment,
    gate_fidelity,
    identity,
    ket,
    propagator,
    qubit_block,
)

TWO_PI = 2 * np.pi


def random_unitary(rng, dim=2):
    q, r = np.linalg.qr(rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim)))
    return Unitary(q * (np.diag(r) / np.abs(np.diag(r))))


def x_pulse():
    return expm_segment(HamiltonianSegment(0.5 * np.pi * SIGMA_X, 1.0))


class TestStateVector:
    def test_default_labels(self):
        assert ket(0, 2).labels == ("down", "up")
        assert ket(0, 4).labels == ("F0_m0", "F1_m-1", "F1_m0", "F1_m+1")

    def test_rejects_bad_dimension(self):
        with pytest.raises(ValueError, match="dimension"):
            StateVector(np.array([1.0, 0.0, 0.0]))

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError, match="normalized"):
            StateVector(np.array([1.0, 1.0]))

    def test_populations_bounded(self):
        psi = StateVector(np.array([0.6, 0.8j]))
        pops = psi.populations()
        assert np.all(pops >= 0) and np.all(pops <= 1)
        assert abs(pops.sum() - 1) < 1e-12


class TestUnitary:
    def test_rejects_non_unitary(self):
        with pytest.raises(ValueError, match="not unitary"):
            Unitary(np.array([[1.0, 0.1], [0.0, 1.0]]))

    def test_identity(self):
        assert np.allclose(identity(4).matrix, np.eye(4))


class TestCompose:
    def test_empty_is_identity(self):
        assert np.array_equal(compose([]).matrix, np.eye(2))
        assert np.array_equal(compose([], dim=4).matrix, np.eye(4))

    def test_x_squared_is_identity_up_to_phase(self):
        x = x_pulse()
        result = compose([x, x])
        assert gate_fidelity(result, identity(2)) == pytest.approx(1.0, abs=1e-12)

    def test_hundred_random_factors_stay_unitary(self):
        rng = np.random.default_rng(7)
        factors = [random_unitary(rng) for _ in range(100)]
        total = compose(factors).matrix
        defect = np.max(np.abs(total.conj().T @ total - np.eye(2)))
        assert defect < 1e-10

    def test_order_earliest_first(self):
        rng = np.random.default_rng(3)
        a, b = random_unitary(rng), random_unitary(rng)
        assert np.allclose(compose([a, b]).matrix, b.matrix @ a.matrix)

    def test_associativity(self):
        rng = np.random.default_rng(11)
        a, b, c = (random_unitary(rng) for _ in range(3))
        left = compose([compose([a, b]), c])
        flat = compose([a, b, c])
        assert np.max(np.abs(left.matrix - flat.matrix)) < 1e-12

    def test_dimension_mismatch_names_index(self):
        rng = np.random.default_rng(5)
        with pytest.raises(DimensionMismatchError, match="factor 1"):
            compose([random_unitary(rng, 2), random_unitary(rng, 4)])


class TestHamiltonianSegment:
    def test_rejects_non_hermitian(self):
        with pytest.raises(ValueError, match="Hermitian"):
            HamiltonianSegment(np.array([[0.0, 1.0], [0.5, 0.0]]), 1.0)

    def test_rejects_negative_duration(self):
        with pytest.raises(ValueError, match="duration"):
            HamiltonianSegment(SIGMA_X, -1e-9)


class TestEvolvePiecewise:
    def test_zero_hamiltonian_is_identity(self):
        psi0 = StateVector(np.array([0.6, 0.8]))
        psi = evolve_piecewise([HamiltonianSegment(np.zeros((2, 2)), 4.2)], psi0)
        assert np.allclose(psi.amplitudes, psi0.amplitudes)

    def test_resonant_pi_pulse(self):
        omega = TWO_PI * 1e6
        seg = HamiltonianSegment(0.5 * omega * SIGMA_X, np.pi / omega)
        psi = evolve_piecewise([seg], ket(0))
        assert psi.population(1) == pytest.approx(1.0, abs=1e-10)

    def test_detuned_drive_max_transfer(self):
        # oracle: generalized Rabi formula; max transfer = Omega^2/(Omega^2+Delta^2)
        omega = TWO_PI * 1e6
        delta = omega
        h = 0.5 * omega * SIGMA_X - 0.5 * delta * np.diag([1.0, -1.0])
        omega_eff = np.hypot(omega, delta)
        times = np.linspace(0.0, 1.2 * TWO_PI / omega_eff, 8001)
        best = max(
            evolve_piecewise([HamiltonianSegment(h, t)], ket(0)).population(1)
            for t in times
        )
        assert best == pytest.approx(0.5, abs=1e-6)
        exact = evolve_piecewise([HamiltonianSegment(h, np.pi / omega_eff)], ket(0))
        assert exact.population(1) == pytest.approx(0.5, abs=1e-10)

    def test_norm_preserved_random_segments(self):
        rng = np.random.default_rng(21)
        psi = ket(0, 4)
        segments = []
        for _ in range(50):
            a = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
            segments.append(HamiltonianSegment(a + a.conj().T, rng.uniform(0, 2.0)))
        psi = evolve_piecewise(segments, psi)
        assert abs(np.sum(np.abs(psi.amplitudes) ** 2) - 1.0) < 1e-12

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError, match="segment 0"):
            evolve_piecewise([HamiltonianSegment(np.zeros((4, 4)), 1.0)], ket(0, 2))

    def test_propagator_matches_state_path(self):
        rng = np.random.default_rng(2)
        segs = []
        for _ in range(5):
            a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
            segs.append(HamiltonianSegment(a + a.conj().T, rng.uniform(0, 1)))
        u = propagator(segs, dim=2)
        psi = evolve_piecewise(segs, ket(0))
        assert np.allclose(u.matrix @ ket(0).amplitudes, psi.amplitudes, atol=1e-12)


class TestGateFidelity:
    def test_self_fidelity(self):
        rng = np.random.default_rng(13)
        u = random_unitary(rng)
        assert gate_fidelity(u, u) == pytest.approx(1.0, abs=1e-12)

    def test_orthogonal_gates(self):
        assert gate_fidelity(identity(2), x_pulse()) == pytest.approx(0.0, abs=1e-12)

    def test_six_percent_overrotation(self):
        # |cos(0.06 pi / 2)| for a pi rotation overrotated by 6%
        over = expm_segment(HamiltonianSegment(0.5 * np.pi * 1.06 * SIGMA_X, 1.0))
        f = gate_fidelity(over, x_pulse())
        assert f == pytest.approx(0.99556196460308, abs=1e-12)

    @given(alpha=st.floats(0.0, TWO_PI))
    def test_global_phase_invariance(self, alpha):
        rng = np.random.default_rng(17)
        u, v = random_unitary(rng), random_unitary(rng)
        shifted = Unitary(np.exp(1j * alpha) * u.matrix)
        assert gate_fidelity(shifted, v) == pytest.approx(gate_fidelity(u, v), abs=1e-13)

    def test_rejects_four_level_without_projection(self):
        with pytest.raises(ValueError, match="qubit block"):
            gate_fidelity(identity(4), identity(4))

    def test_qubit_block_projection(self):
        h = np.zeros((4, 4), dtype=complex)
        omega = TWO_PI * 0.5e6
        h[2, 0] = h[0, 2] = 0.5 * omega
        u4 = expm_segment(HamiltonianSegment(h, np.pi / omega))
        block = qubit_block(u4)
        assert gate_fidelity(block, x_pulse()) == pytest.approx(1.0, abs=1e-10)
