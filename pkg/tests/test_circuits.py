import math

import numpy as np
import pytest

from qprotect.circuits import (
    CircuitDef,
    collective_rotation,
    compile_circuit,
    input_state,
    prep_circuit,
    transversal_hadamard,
    transversal_x,
)
from qprotect.linalg import GateSpec, StateVector

import _oracles

THETA = 2.0 * math.pi / 3.0


class TestPrepCircuit:
    def test_theta_zero_gives_all_plus(self):
        for n in (1, 2, 3):
            out = input_state(n, 0.0).amplitudes
            np.testing.assert_allclose(out, np.full(1 << n, (1 / math.sqrt(2)) ** n), atol=1e-12)

    def test_canonical_two_qubit_state(self):
        # cos(pi/3) = 1/2 weight on |++>, sin(pi/3) = sqrt(3)/2 on |-->
        out = input_state(2, THETA).amplitudes
        plus = np.full(4, 0.5)
        minus = np.array([0.5, -0.5, -0.5, 0.5])
        np.testing.assert_allclose(out, 0.5 * plus + (math.sqrt(3) / 2) * minus, atol=1e-12)

    @pytest.mark.parametrize("n", range(1, 7))
    @pytest.mark.parametrize("theta", [0.0, math.pi / 4.0, THETA, math.pi])
    def test_matches_closed_form(self, n, theta):
        got = input_state(n, theta).amplitudes
        np.testing.assert_allclose(got, _oracles.psi_closed_form(n, theta), atol=1e-12)

    def test_self_inverse_composition(self):
        c = prep_circuit(3, THETA)
        u = compile_circuit(c)
        np.testing.assert_allclose(u.conj().T @ u, np.eye(8), atol=1e-12)

    def test_rejects_empty_register(self):
        with pytest.raises(ValueError):
            prep_circuit(0, THETA)


class TestTransversalHadamard:
    @pytest.mark.parametrize("n", [1, 2, 4])
    def test_self_inverse(self, n):
        u = compile_circuit(transversal_hadamard(n))
        np.testing.assert_allclose(u @ u, np.eye(1 << n), atol=1e-12)

    def test_disentangles_protected_state(self):
        # H on each qubit turns the prepared state into cos|00>+sin|11>
        u = compile_circuit(transversal_hadamard(2))
        got = u @ input_state(2, THETA).amplitudes
        np.testing.assert_allclose(got, _oracles.ghz_closed_form(2, THETA), atol=1e-12)

    def test_single_qubit_plus_state(self):
        u = compile_circuit(transversal_hadamard(1))
        np.testing.assert_allclose(u @ [1.0, 0.0], [1 / math.sqrt(2)] * 2, atol=1e-15)


class TestCollectiveRotation:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_zero_angle_equals_transversal_hadamard(self, n):
        b0 = compile_circuit(collective_rotation(n, 0.0))
        d = compile_circuit(transversal_hadamard(n))
        np.testing.assert_allclose(b0, d, atol=1e-12)

    @pytest.mark.parametrize("xi", [-2.0, -0.5, 0.3, 1.7])
    def test_rotates_ghz_subspace(self, xi):
        # B(xi) (cos(a/2)|0..0> + sin(a/2)|1..1>) = prepared state at a + xi
        b = compile_circuit(collective_rotation(2, xi))
        got = b @ _oracles.ghz_closed_form(2, THETA)
        np.testing.assert_allclose(got, _oracles.psi_closed_form(2, THETA + xi), atol=1e-12)

    def test_overlap_follows_half_angle_cosine(self):
        for n in (2, 3):
            psi = input_state(n, THETA).amplitudes
            d = compile_circuit(transversal_hadamard(n))
            for xi in np.linspace(-math.pi, math.pi, 13):
                b = compile_circuit(collective_rotation(n, xi))
                overlap = psi.conj() @ (b @ (d @ psi))
                assert overlap == pytest.approx(math.cos(xi / 2.0), abs=1e-12)

    def test_angle_differences_compose(self):
        # successive rotations differ only by the angle gap
        psi = input_state(2, THETA).amplitudes
        d = compile_circuit(transversal_hadamard(2))
        rng = np.random.default_rng(4)
        for _ in range(10):
            x1, x2 = rng.uniform(-math.pi, math.pi, size=2)
            v1 = compile_circuit(collective_rotation(2, x1)) @ (d @ psi)
            v2 = compile_circuit(collective_rotation(2, x2)) @ (d @ psi)
            assert v2.conj() @ v1 == pytest.approx(math.cos((x1 - x2) / 2.0), abs=1e-12)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_compiled_unitary(self, n):
        u = compile_circuit(collective_rotation(n, 0.9))
        np.testing.assert_allclose(u @ u.conj().T, np.eye(1 << n), atol=1e-12)


class TestTransversalX:
    def test_self_inverse(self):
        u = compile_circuit(transversal_x(3))
        np.testing.assert_allclose(u @ u, np.eye(8), atol=1e-15)

    def test_flips_basis_state(self):
        u = compile_circuit(transversal_x(2))
        v = np.zeros(4)
        v[0b01] = 1.0
        out = u @ v
        assert out[0b10] == pytest.approx(1.0)

    def test_swaps_ghz_amplitudes(self):
        u = compile_circuit(transversal_x(3))
        got = u @ _oracles.ghz_closed_form(3, THETA)
        v = np.zeros(8, dtype=complex)
        v[0] = math.sin(THETA / 2.0)
        v[-1] = math.cos(THETA / 2.0)
        np.testing.assert_allclose(got, v, atol=1e-15)


class TestCompile:
    def test_empty_circuit_is_identity(self):
        np.testing.assert_allclose(compile_circuit(CircuitDef(2, ())), np.eye(4), atol=1e-15)

    def test_hadamard_pair_cancels(self):
        c = CircuitDef(1, (GateSpec.h(0), GateSpec.h(0)))
        np.testing.assert_allclose(compile_circuit(c), np.eye(2), atol=1e-15)

    def test_prep_column_zero_matches_tensor_algebra(self):
        u = compile_circuit(prep_circuit(4, THETA))
        np.testing.assert_allclose(u[:, 0], _oracles.psi_closed_form(4, THETA), atol=1e-12)

    def test_time_ordering_is_left_to_right(self):
        # X then H differs from H then X; pin the convention
        c = CircuitDef(1, (GateSpec.x(0), GateSpec.h(0)))
        expected = _oracles.circuit_matrix(1, [("x", (0,), None), ("h", (0,), None)])
        np.testing.assert_allclose(compile_circuit(c), expected, atol=1e-14)

    def test_rejects_out_of_range_gate(self):
        with pytest.raises(ValueError):
            CircuitDef(1, (GateSpec.cnot(0, 1),))


class TestInputState:
    def test_returns_valid_state_vector(self):
        psi = input_state(3, THETA)
        assert isinstance(psi, StateVector)
        assert psi.n == 3
        assert np.sum(np.abs(psi.amplitudes) ** 2) == pytest.approx(1.0, abs=1e-12)
