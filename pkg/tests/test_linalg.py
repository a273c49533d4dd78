"""Kernels against closed forms, numpy/scipy references and spec'd cases."""

import numpy as np
import pytest
from scipy.linalg import expm as scipy_expm

from conftest import multiset_err
from ptdyn.linalg import (
    ConvergenceError,
    DimensionError,
    DomainError,
    NormOverflowError,
    defect_analysis,
    eig_general,
    expm,
    one_norm,
    similarity_conjugate,
    singular_values,
)

SX = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SY = np.array([[0.0, -1.0j], [1.0j, 0.0]])
SZ = np.diag([1.0, -1.0]).astype(complex)


class TestExpm:
    def test_zero_matrix_gives_identity(self):
        np.testing.assert_array_equal(expm(np.zeros((3, 3))), np.eye(3))

    def test_pauli_rotation_quarter_turn(self):
        # exp(i*pi*sy/2) = cos(pi/2) I + i sin(pi/2) sy = i*sy
        got = expm(1j * np.pi * SY / 2.0)
        np.testing.assert_allclose(got, np.array([[0, 1], [-1, 0]]), atol=1e-14)

    def test_diagonal(self):
        got = expm(np.diag([1.0, 2.0]))
        np.testing.assert_allclose(
            got, np.diag([2.718281828459045, 7.389056098930650]), rtol=1e-14)

    @pytest.mark.parametrize("a", [0.3, -1.7, 2.0 + 0.5j])
    def test_pauli_x_closed_form(self, a):
        # exp(a*sx) = cosh(a) I + sinh(a) sx
        expected = np.cosh(a) * np.eye(2) + np.sinh(a) * SX
        np.testing.assert_allclose(expm(a * SX), expected, rtol=1e-13, atol=1e-13)

    def test_against_scipy_large_norms(self):
        rng = np.random.default_rng(11)
        for n, nrm in ((16, 5.0), (64, 30.0), (256, 50.0)):
            a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            a *= nrm / one_norm(a)
            mine, ref = expm(a), scipy_expm(a)
            rel = np.abs(mine - ref).max() / np.abs(ref).max()
            assert rel < 1e-12

    def test_inverse_property(self):
        rng = np.random.default_rng(12)
        for _ in range(10):
            n = int(rng.integers(2, 30))
            a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            a *= rng.uniform(0.5, 10.0) / one_norm(a)
            assert np.abs(expm(a) @ expm(-a) - np.eye(n)).max() < 1e-10

    def test_block_diagonal_property(self):
        rng = np.random.default_rng(13)
        a = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
        b = rng.standard_normal((7, 7))
        blk = np.zeros((12, 12), dtype=complex)
        blk[:5, :5], blk[5:, 5:] = a, b
        got = expm(blk)
        np.testing.assert_allclose(got[:5, :5], expm(a), atol=1e-12)
        np.testing.assert_allclose(got[5:, 5:], expm(b), atol=1e-12)
        assert np.abs(got[:5, 5:]).max() == 0.0

    def test_rejects_non_square(self):
        with pytest.raises(DimensionError):
            expm(np.ones((2, 3)))

    def test_rejects_nan(self):
        a = np.eye(2, dtype=complex)
        a[0, 0] = np.nan
        with pytest.raises(DomainError):
            expm(a)

    def test_extreme_norm_overflows(self):
        with pytest.raises(NormOverflowError):
            expm(np.eye(4) * 1e22)


class TestEigGeneral:
    def test_diagonal_complex_pair_ordering(self):
        dec = eig_general(np.diag([2.0 + 1.0j, 2.0 - 1.0j]))
        np.testing.assert_allclose(dec.eigenvalues, [2.0 - 1.0j, 2.0 + 1.0j])

    def test_binary_oscillator_closed_form(self):
        # eps + i*gamma*sz + k*sx at eps=2, k=2, gamma=1: eigs 2 +/- sqrt(3)
        h = 2.0 * np.eye(2) + 2.0 * SX + 1.0j * SZ
        dec = eig_general(h)
        np.testing.assert_allclose(
            dec.eigenvalues, [0.2679491924311228, 3.7320508075688772], atol=1e-12)

    def test_jordan_block(self):
        dec = eig_general(np.array([[1.0, 1.0], [0.0, 1.0]]))
        np.testing.assert_allclose(dec.eigenvalues, [1.0, 1.0], atol=1e-14)
        assert dec.max_residual <= 1e-10 * 2.0
        assert dec.converged

    def test_matches_numpy_on_random(self):
        rng = np.random.default_rng(21)
        for _ in range(30):
            n = int(rng.integers(2, 24))
            a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            dec = eig_general(a)
            assert multiset_err(dec.eigenvalues, np.linalg.eigvals(a)) < 1e-10

    def test_residual_contract(self):
        rng = np.random.default_rng(22)
        a = rng.standard_normal((20, 20)) + 1j * rng.standard_normal((20, 20))
        dec = eig_general(a, tol=1e-10)
        resid = a @ dec.eigenvectors - dec.eigenvectors * dec.eigenvalues
        assert np.linalg.norm(resid, axis=0).max() <= 1e-10 * one_norm(a)

    def test_reconstruction_property(self):
        rng = np.random.default_rng(23)
        for _ in range(10):
            n = int(rng.integers(2, 16))
            a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            dec = eig_general(a)
            rec = dec.eigenvectors @ np.diag(dec.eigenvalues) @ np.linalg.inv(
                dec.eigenvectors)
            assert np.abs(rec - a).max() < 1e-8 * one_norm(a)

    def test_ordering_is_lexicographic(self):
        rng = np.random.default_rng(24)
        a = rng.standard_normal((12, 12)) + 1j * rng.standard_normal((12, 12))
        w = eig_general(a).eigenvalues
        key = np.lexsort((w.imag, w.real))
        assert list(key) == list(range(12))

    def test_unreachable_tolerance_raises_with_partials(self):
        rng = np.random.default_rng(25)
        a = rng.standard_normal((12, 12)) + 1j * rng.standard_normal((12, 12))
        with pytest.raises(ConvergenceError) as exc:
            eig_general(a, tol=1e-18)
        partial = exc.value.partial
        assert partial is not None and not partial.converged
        assert multiset_err(partial.eigenvalues, np.linalg.eigvals(a)) < 1e-10

    def test_rejects_bad_tol(self):
        with pytest.raises(DomainError):
            eig_general(np.eye(2), tol=0.0)


class TestSingularValues:
    def test_matches_numpy_svd(self):
        rng = np.random.default_rng(31)
        for _ in range(10):
            n = int(rng.integers(2, 10))
            a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            np.testing.assert_allclose(
                singular_values(a), np.linalg.svd(a, compute_uv=False),
                atol=1e-10)

    def test_small_values_resolved(self):
        # hermitian dilation keeps tiny singular values first-order accurate
        a = np.diag([1.0, 1e-13, 0.0]).astype(complex)
        sv = singular_values(a)
        assert abs(sv[1] - 1e-13) < 1e-14
        assert sv[2] < 1e-14


class TestDefectAnalysis:
    def test_simple_diagonal(self):
        rep = defect_analysis(np.diag([1.0, 2.0, 3.0]))
        assert len(rep.clusters) == 3
        assert all(c.algebraic == 1 and c.geometric == 1 for c in rep.clusters)
        assert not rep.is_defective

    def test_binary_oscillator_exceptional_point(self):
        h = 2.0 * np.eye(2) + 1.0 * SX + 1.0j * SZ
        rep = defect_analysis(h)
        assert len(rep.clusters) == 1
        c = rep.clusters[0]
        assert (c.algebraic, c.geometric) == (2, 1)
        assert abs(c.eigenvalue - 2.0) < 1e-7
        assert rep.is_defective

    def test_spin_one_third_order_exceptional_point(self):
        from ptdyn.spin import SpinParams, build_pt_hamiltonian

        h = build_pt_hamiltonian(SpinParams(1.0, 2.0, 1.0, 1.0))
        rep = defect_analysis(h)
        assert len(rep.clusters) == 1
        assert (rep.clusters[0].algebraic, rep.clusters[0].geometric) == (3, 1)

    def test_repeated_normal_eigenvalue_not_defective(self):
        rep = defect_analysis(np.diag([1.0, 1.0, 4.0]))
        degenerate = [c for c in rep.clusters if c.algebraic == 2][0]
        assert degenerate.geometric == 2
        assert not rep.is_defective

    def test_explicit_cluster_tolerance(self):
        rep = defect_analysis(np.diag([1.0, 1.001, 5.0]), cluster_tol=1e-2)
        sizes = sorted(c.algebraic for c in rep.clusters)
        assert sizes == [1, 2]
        assert not rep.is_defective

    def test_rejects_bad_tolerances(self):
        with pytest.raises(DomainError):
            defect_analysis(np.eye(2), cluster_tol=-1.0)
        with pytest.raises(DomainError):
            defect_analysis(np.eye(2), rank_tol=0.0)


class TestSimilarityConjugate:
    def test_theta_zero_is_identity_map(self):
        rng = np.random.default_rng(41)
        h = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        np.testing.assert_array_equal(similarity_conjugate(h, np.eye(4), 0.0), h)

    def test_pauli_rotation_reproduces_gain_loss_form(self):
        # exp(-theta*sy) (eps + alpha*sx) exp(theta*sy)
        #   = eps + alpha*cosh(2 theta) sx + i alpha*sinh(2 theta) sz,
        # so theta = ln(3)/4, alpha = sqrt(3) lands on eps + 2 sx + i sz
        theta = np.log(3.0) / 4.0
        h = 2.0 * np.eye(2) + np.sqrt(3.0) * SX
        got = similarity_conjugate(h, -SY, theta)
        expected = 2.0 * np.eye(2) + 2.0 * SX + 1.0j * SZ
        np.testing.assert_allclose(got, expected, atol=1e-10)

    def test_isospectral_on_random_draws(self):
        rng = np.random.default_rng(42)
        for _ in range(100):
            h = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
            g = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
            theta = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            if abs(theta) * one_norm(g) > 3.0:
                g *= 3.0 / (abs(theta) * one_norm(g))
            conj = similarity_conjugate(h, g, theta)
            assert multiset_err(eig_general(conj).eigenvalues,
                                eig_general(h).eigenvalues) < 1e-10

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            similarity_conjugate(np.eye(2), np.eye(3), 1.0)
