"""Truncated ladder operators, qubit gates, and factor embedding."""

import math

import numpy as np
import pytest

from bosonsynth.fock_ops import (
    annihilation,
    creation,
    embed,
    interior_projector,
    ladder_power_norm,
    momentum,
    number,
    pauli,
    position,
    qubit_gate,
    vacuum_parity_flip,
)
from bosonsynth.tensor_core import HilbertLayout, basis_state, commutator, spectral_norm


class TestLadder:
    def test_creation_cutoff3_entries(self):
        want = np.zeros((4, 4))
        want[1, 0], want[2, 1], want[3, 2] = 1.0, math.sqrt(2), math.sqrt(3)
        assert np.max(np.abs(creation(3).mat - want)) < 1e-15

    def test_annihilation_cutoff3_entries(self):
        want = np.zeros((4, 4))
        want[0, 1], want[1, 2], want[2, 3] = 1.0, math.sqrt(2), math.sqrt(3)
        assert np.max(np.abs(annihilation(3).mat - want)) < 1e-15

    def test_vacuum_annihilated(self):
        vac = basis_state(HilbertLayout.single_mode(6), 0)
        assert np.all(annihilation(6).mat @ vac == 0)

    def test_adjoint_pair_exact(self):
        for cutoff in (1, 3, 9):
            assert np.array_equal(creation(cutoff).mat, annihilation(cutoff).mat.conj().T)

    def test_canonical_commutator_edge(self):
        cutoff = 5
        out = commutator(annihilation(cutoff), creation(cutoff))
        want = np.diag([1.0] * cutoff + [-float(cutoff)])
        assert np.max(np.abs(out.mat - want)) < 1e-13

    @pytest.mark.parametrize("cutoff", [4, 8, 16])
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_power_norm_closed_form(self, cutoff, k):
        a_k = np.linalg.matrix_power(annihilation(cutoff).mat, k)
        want = math.sqrt(math.factorial(cutoff) / math.factorial(cutoff - k))
        assert spectral_norm(a_k) == pytest.approx(want, abs=1e-9)
        assert ladder_power_norm(cutoff, k) == pytest.approx(want, rel=1e-14)
        assert want <= cutoff ** (k / 2) + 1e-12


class TestQuadratures:
    def test_number_diagonal(self):
        assert np.array_equal(number(3).mat, np.diag([0.0, 1.0, 2.0, 3.0]))

    def test_quadrature_sum_interior(self):
        """x^2 + p^2 - 1/2 equals the number operator below the top level."""
        cutoff = 7
        x, p = position(cutoff).mat, momentum(cutoff).mat
        mix = x @ x + p @ p - 0.5 * np.eye(cutoff + 1)
        proj = interior_projector(cutoff, 1).mat
        assert np.max(np.abs(proj @ (mix - number(cutoff).mat) @ proj)) < 1e-13
        assert abs(mix[cutoff, cutoff] - (cutoff - (cutoff + 1) / 2)) < 1e-13

    def test_xp_commutator(self):
        out = commutator(position(3), momentum(3))
        assert np.max(np.abs(out.mat - 0.5j * np.diag([1, 1, 1, -3]))) < 1e-14

    def test_hermitian(self):
        for cutoff in (2, 9):
            for op in (position(cutoff), momentum(cutoff)):
                assert np.max(np.abs(op.mat - op.mat.conj().T)) < 1e-14


class TestQubitGates:
    def test_hzh_is_x(self):
        h = qubit_gate("H").mat
        assert np.max(np.abs(h @ pauli("z").mat @ h - pauli("x").mat)) < 1e-15

    def test_shzhs_dag_is_y(self):
        h, s, sdg = (qubit_gate(n).mat for n in ("H", "S", "Sdg"))
        assert np.max(np.abs(s @ h @ pauli("z").mat @ h @ sdg - pauli("y").mat)) < 1e-15

    def test_s_unitary(self):
        s, sdg = qubit_gate("S").mat, qubit_gate("Sdg").mat
        assert np.array_equal(s @ sdg, np.eye(2))

    def test_unknown_gate(self):
        with pytest.raises(ValueError):
            qubit_gate("T")

    def test_unknown_axis(self):
        with pytest.raises(ValueError):
            pauli("w")


class TestEmbed:
    def test_trivial_single_factor(self):
        out = embed(pauli("x"), HilbertLayout.single_qubit(), 0)
        assert np.array_equal(out.mat, pauli("x").mat)

    def test_mode_slot(self):
        layout = HilbertLayout.qubit_modes(1)
        out = embed(annihilation(1), layout, 1)
        assert np.array_equal(out.mat, np.kron(np.eye(2), annihilation(1).mat))

    def test_eigenvalue_through_index(self):
        layout = HilbertLayout.qubit_modes(3)
        out = embed(number(3), layout, 1)
        idx = layout.index(1, 2)
        assert out.mat[idx, idx] == 2.0

    def test_dim_mismatch(self):
        with pytest.raises(ValueError):
            embed(annihilation(2), HilbertLayout.qubit_modes(3), 0)


class TestVacuumFlip:
    def test_action(self):
        r = vacuum_parity_flip(3).mat
        assert r[0, 0] == -1.0
        assert r[1, 1] == 1.0

    def test_involution(self):
        r = vacuum_parity_flip(5).mat
        assert np.array_equal(r @ r, np.eye(6))


class TestInteriorProjector:
    def test_keeps_low_levels(self):
        proj = interior_projector(4, 2).mat
        assert np.array_equal(np.diag(proj), [1, 1, 1, 0, 0])
