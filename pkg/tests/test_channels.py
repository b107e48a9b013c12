import itertools
import math

import numpy as np
import pytest

from qprotect.channels import (
    ChannelKind,
    KrausChannel,
    apply_channel_to_qubit,
    apply_product_channel,
    choi_matrix,
    make_channel,
)
from qprotect.linalg import DensityMatrix, StateVector, ValidationError, min_eigenvalue, pure_fidelity

import _oracles

ALL_KINDS = list(ChannelKind)


class TestMakeChannel:
    @pytest.mark.parametrize("p", [-0.1, 1.0001, 2.0])
    def test_strength_out_of_range_rejected(self, p):
        with pytest.raises(ValueError):
            make_channel(ChannelKind.DEPHASING, p)

    def test_damping_kraus_entries(self):
        # the damping set is pinned entrywise, not just as a map
        p = 0.37
        ch = make_channel(ChannelKind.AMPLITUDE_DAMPING, p)
        a1, a2 = ch.kraus
        np.testing.assert_allclose(a1, [[1.0, 0.0], [0.0, math.sqrt(1.0 - p)]], atol=1e-15)
        np.testing.assert_allclose(a2, [[0.0, math.sqrt(p)], [0.0, 0.0]], atol=1e-15)

    @pytest.mark.parametrize("kind", ALL_KINDS)
    def test_zero_strength_is_identity_channel(self, kind):
        rng = np.random.default_rng(2)
        ch = make_channel(kind, 0.0)
        rho = _oracles.random_density(rng, 1)
        out = sum(a @ rho @ a.conj().T for a in ch.kraus)
        np.testing.assert_allclose(out, rho, atol=1e-14)

    def test_full_depolarizing_gives_maximally_mixed(self):
        ch = make_channel(ChannelKind.DEPOLARIZING, 1.0)
        rho = np.diag([1.0, 0.0]).astype(complex)
        out = sum(a @ rho @ a.conj().T for a in ch.kraus)
        np.testing.assert_allclose(out, np.eye(2) / 2.0, atol=1e-14)

    def test_full_damping_decays_excited_state(self):
        ch = make_channel(ChannelKind.AMPLITUDE_DAMPING, 1.0)
        rho = np.diag([0.0, 1.0]).astype(complex)
        out = sum(a @ rho @ a.conj().T for a in ch.kraus)
        np.testing.assert_allclose(out, np.diag([1.0, 0.0]), atol=1e-14)

    def test_dephasing_matches_defining_map(self):
        rng = np.random.default_rng(21)
        for p in (0.0, 0.3, 0.8, 1.0):
            ch = make_channel(ChannelKind.DEPHASING, p)
            rho = _oracles.random_density(rng, 1)
            out = sum(a @ rho @ a.conj().T for a in ch.kraus)
            np.testing.assert_allclose(out, _oracles.dephasing_map(rho, p), atol=1e-14)

    def test_depolarizing_matches_defining_map(self):
        rng = np.random.default_rng(22)
        for p in (0.0, 0.3, 0.8, 1.0):
            ch = make_channel(ChannelKind.DEPOLARIZING, p)
            rho = _oracles.random_density(rng, 1)
            out = sum(a @ rho @ a.conj().T for a in ch.kraus)
            np.testing.assert_allclose(out, _oracles.depolarizing_map(rho, p), atol=1e-14)

    @pytest.mark.parametrize("kind", ALL_KINDS)
    def test_completeness_on_101_point_grid(self, kind):
        for k in range(101):
            ch = make_channel(kind, k / 100.0)
            total = sum(a.conj().T @ a for a in ch.kraus)
            np.testing.assert_allclose(total, np.eye(2), atol=1e-12)

    def test_incomplete_kraus_set_rejected(self):
        bad = (np.array([[0.9, 0.0], [0.0, 0.9]], dtype=complex),)
        with pytest.raises(ValidationError):
            KrausChannel(ChannelKind.DEPHASING, 0.5, bad)


class TestProductChannel:
    @pytest.mark.parametrize("kind", ALL_KINDS)
    def test_zero_strength_leaves_state_alone(self, kind):
        rng = np.random.default_rng(31)
        rho = DensityMatrix(3, _oracles.random_density(rng, 3))
        out = apply_product_channel(rho, make_channel(kind, 0.0))
        np.testing.assert_allclose(out.matrix, rho.matrix, atol=1e-13)

    def test_dephasing_fixes_diagonal_states(self):
        rng = np.random.default_rng(32)
        for p in (0.2, 0.7, 1.0):
            weights = rng.uniform(size=8)
            rho = DensityMatrix(3, np.diag(weights / weights.sum()).astype(complex))
            out = apply_product_channel(rho, make_channel(ChannelKind.DEPHASING, p))
            np.testing.assert_allclose(out.matrix, rho.matrix, atol=1e-14)

    def test_damping_fixes_all_zeros_state(self):
        for n in (1, 2, 3):
            rho = DensityMatrix.from_state(StateVector.basis(n, 0))
            for p in (0.1, 0.5, 1.0):
                out = apply_product_channel(rho, make_channel(ChannelKind.AMPLITUDE_DAMPING, p))
                np.testing.assert_allclose(out.matrix, rho.matrix, atol=1e-14)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_depolarizing_fidelity_of_ground_state(self, n):
        # per-qubit action on |0><0| is diag(1 - p/2, p/2), so F = (1 - p/2)^n;
        # cross-checked against the explicit full-register Kraus sum
        psi = StateVector.basis(n, 0)
        rho = DensityMatrix.from_state(psi)
        for p in (0.0, 0.3, 0.6, 1.0):
            ch = make_channel(ChannelKind.DEPOLARIZING, p)
            out = apply_product_channel(rho, ch)
            f = pure_fidelity(psi, out)
            assert f == pytest.approx((1.0 - p / 2.0) ** n, abs=1e-12)
            oracle = _oracles.full_channel_apply(rho.matrix, n, ch.kraus)
            np.testing.assert_allclose(out.matrix, oracle, atol=1e-12)

    def test_sequential_equals_full_register_kraus_sum(self):
        rng = np.random.default_rng(33)
        for _ in range(25):
            n = int(rng.integers(1, 4))
            kind = ChannelKind(rng.choice([k.value for k in ALL_KINDS]))
            ch = make_channel(kind, float(rng.uniform()))
            rho = DensityMatrix(n, _oracles.random_density(rng, n))
            got = apply_product_channel(rho, ch)
            expect = _oracles.full_channel_apply(rho.matrix, n, ch.kraus)
            np.testing.assert_allclose(got.matrix, expect, atol=1e-10)

    def test_qubit_order_is_immaterial(self):
        rng = np.random.default_rng(34)
        n = 3
        ch = make_channel(ChannelKind.AMPLITUDE_DAMPING, 0.45)
        rho = DensityMatrix(n, _oracles.random_density(rng, n))
        ref = apply_product_channel(rho, ch)
        for order in itertools.permutations(range(n)):
            out = rho
            for q in order:
                out = apply_channel_to_qubit(out, ch, q)
            np.testing.assert_allclose(out.matrix, ref.matrix, atol=1e-12)

    def test_output_invariants(self):
        rng = np.random.default_rng(35)
        for kind in ALL_KINDS:
            rho = DensityMatrix(2, _oracles.random_density(rng, 2))
            out = apply_product_channel(rho, make_channel(kind, 0.6))
            assert abs(np.trace(out.matrix) - 1.0) < 1e-12
            assert np.max(np.abs(out.matrix - out.matrix.conj().T)) < 1e-12
            assert np.linalg.eigvalsh(out.matrix)[0] >= -1e-10

    def test_bad_qubit_index_rejected(self):
        rho = DensityMatrix.from_state(StateVector.basis(2))
        with pytest.raises(ValueError):
            apply_channel_to_qubit(rho, make_channel(ChannelKind.DEPHASING, 0.5), 2)


class TestChoiMatrix:
    def test_identity_channel_choi_is_scaled_bell_projector(self):
        choi = choi_matrix(make_channel(ChannelKind.DEPHASING, 0.0))
        bell = np.zeros(4, dtype=complex)
        bell[0] = bell[3] = 1.0 / math.sqrt(2.0)
        np.testing.assert_allclose(choi, 2.0 * np.outer(bell, bell.conj()), atol=1e-14)
        assert np.trace(choi) == pytest.approx(2.0)
        assert np.linalg.matrix_rank(choi, tol=1e-10) == 1

    def test_full_depolarizing_choi_is_half_identity(self):
        choi = choi_matrix(make_channel(ChannelKind.DEPOLARIZING, 1.0))
        np.testing.assert_allclose(choi, np.eye(4) / 2.0, atol=1e-14)

    @pytest.mark.parametrize("kind", ALL_KINDS)
    def test_choi_positive_semidefinite_on_grid(self, kind):
        for k in range(101):
            choi = choi_matrix(make_channel(kind, k / 100.0))
            assert min_eigenvalue(choi) >= -1e-10
