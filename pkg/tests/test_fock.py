"""Truncated Fock operators: ladder algebra, quadratures, su(1,1) block."""

import numpy as np
import pytest

from ptdyn.fock import build_fock_ops, ladder
from ptdyn.linalg import DomainError


def test_ladder_entries():
    a = ladder(4)
    expected = np.zeros((4, 4), complex)
    expected[0, 1] = 1.0
    expected[1, 2] = np.sqrt(2.0)
    expected[2, 3] = np.sqrt(3.0)
    np.testing.assert_array_equal(a, expected)


def test_commutator_truncation_artifact():
    ops = build_fock_ops(8)
    comm = ops.a @ ops.a_dag - ops.a_dag @ ops.a
    expected = np.eye(8, dtype=complex)
    expected[-1, -1] = 1.0 - 8
    np.testing.assert_allclose(comm, expected, atol=1e-14)


def test_small_space_commutator_diagonal():
    a = ladder(4)
    comm = a @ a.conj().T - a.conj().T @ a
    np.testing.assert_allclose(np.diag(comm), [1.0, 1.0, 1.0, -3.0], atol=1e-15)


def test_number_operator_diagonal():
    ops = build_fock_ops(16)
    np.testing.assert_allclose(ops.n_op, np.diag(np.arange(16.0)), atol=1e-14)


def test_quadratures_hermitian():
    ops = build_fock_ops(32, mass=1.3, omega=0.7)
    assert np.abs(ops.x_op - ops.x_op.conj().T).max() < 1e-15
    assert np.abs(ops.p_op - ops.p_op.conj().T).max() < 1e-15


def test_ladder_from_quadratures():
    # a = sqrt(m w / 2) (x + i p / (m w)) must rebuild the ladder matrix
    for mass, omega in ((1.0, 1.0), (2.0, 0.5), (0.4, 3.0)):
        ops = build_fock_ops(24, mass=mass, omega=omega)
        rebuilt = np.sqrt(mass * omega / 2.0) * (
            ops.x_op + 1j * ops.p_op / (mass * omega))
        np.testing.assert_allclose(rebuilt, ops.a, atol=1e-14)


def test_su11_block_relations():
    ops = build_fock_ops(48)
    lead = 46
    for kpm, sign in ((ops.k_plus, 1.0), (ops.k_minus, -1.0)):
        comm = ops.k_zero @ kpm - kpm @ ops.k_zero - sign * kpm
        assert np.abs(comm[:lead, :lead]).max() < 1e-12
    comm = ops.k_plus @ ops.k_minus - ops.k_minus @ ops.k_plus
    assert np.abs((comm + 2.0 * ops.k_zero)[:lead, :lead]).max() < 1e-12


def test_validation():
    with pytest.raises(DomainError):
        build_fock_ops(4)
    with pytest.raises(DomainError):
        build_fock_ops(16, mass=-1.0)
    with pytest.raises(DomainError):
        build_fock_ops(16, omega=0.0)
