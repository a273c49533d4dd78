"""Generalized Swanson pipeline: chain scalars, spectra, evolution, states."""

import numpy as np
import pytest

from conftest import multiset_err
from ptdyn.fock import build_fock_ops
from ptdyn.linalg import DomainError, eig_general, expm
from ptdyn.swanson import (
    ChainStepError,
    NonRealSpectrumError,
    SingularParameterError,
    SwansonParams,
    beta2_for_discriminant,
    build_gsw,
    discriminant,
    discriminant_sweep,
    evolve_h3,
    gsw_spectrum,
    intertwined_eigenstate,
    nu_form,
    transform_chain,
)

SYMMETRIC = SwansonParams(2.0, 1.0, 1.0, 0.5, 0.5, 64)


class TestBuilder:
    def test_free_oscillator(self):
        p = SwansonParams(1.0, 0.0, 0.0, 0.0, 0.0, 16)
        np.testing.assert_allclose(build_gsw(p), np.diag(np.arange(16) + 0.5),
                                   atol=1e-15)

    def test_quadratic_swanson_structure(self):
        # alpha1 = alpha2 = 0 leaves the quadratic gain/loss model
        p = SwansonParams(1.0, 0.0, 0.0, 0.3, 0.7, 12)
        h = build_gsw(p)
        assert h[1, 0] == 0.0 and h[0, 1] == 0.0
        assert abs(h[2, 0] - 0.3 * np.sqrt(2.0)) < 1e-15
        assert abs(h[0, 2] - 0.7 * np.sqrt(2.0)) < 1e-15

    def test_forced_oscillator_structure(self):
        # beta1 = beta2 = 0 with unequal drives: non-Hermitian linear terms
        p = SwansonParams(1.0, 0.8, 0.2, 0.0, 0.0, 12)
        h = build_gsw(p)
        assert abs(h[1, 0] - 0.8) < 1e-15
        assert abs(h[0, 1] - 0.2) < 1e-15
        assert h[2, 0] == 0.0
        assert np.abs(h - h.conj().T).max() > 0.1


class TestChainScalars:
    def test_symmetric_closed_forms(self):
        chain = transform_chain(SYMMETRIC)
        assert abs(chain.gamma1 - 1.0 / 3.0) < 1e-12
        assert abs(chain.gamma2 - 1.0 / 3.0) < 1e-12
        assert abs(chain.delta + 1.0 / 3.0) < 1e-12
        assert abs(complex(chain.zeta)) < 1e-12
        assert abs(chain.lambda_tilde - 2.0) < 1e-12
        assert chain.regime == "Unbroken"

    def test_equal_alpha_beta_reduction(self):
        # gamma1 = gamma2 = alpha/(lam + 2 beta) when fully symmetric
        lam, alpha, beta = 2.4, 0.7, 0.3
        chain = transform_chain(SwansonParams(lam, alpha, alpha, beta, beta, 32))
        expected = alpha / (lam + 2.0 * beta)
        assert abs(chain.gamma1 - expected) < 1e-12
        assert abs(chain.gamma2 - expected) < 1e-12

    def test_broken_draw_purely_imaginary(self):
        p = SwansonParams(1.0, 1.0, 0.1, 2.0, 2.0, 64)
        chain = transform_chain(p)
        assert chain.regime == "Broken"
        assert chain.discriminant > 1.0
        assert abs(chain.lambda_tilde.real) < 1e-12
        assert chain.lambda_tilde.imag > 0.0
        assert chain.lambda_tilde_partner == np.conj(chain.lambda_tilde)
        # zeta turns complex alongside
        assert abs(complex(chain.zeta).imag) > 0.1

    def test_chain_precondition_errors(self):
        with pytest.raises(SingularParameterError):
            transform_chain(SwansonParams(1.0, 1.0, 1.0, 0.5, 0.5, 16))
        with pytest.raises(DomainError):
            transform_chain(SwansonParams(2.0, 1.0, -1.0, 0.5, 0.5, 16))
        with pytest.raises(ChainStepError):
            transform_chain(SwansonParams(2.0, 1.0, 1.0, 0.0, 0.5, 16))


class TestChainMatrices:
    def test_blocks_match_closed_forms(self):
        chain = transform_chain(SwansonParams(2.0, 1.2, 0.8, 0.4, 0.3, 96))
        assert chain.h2_block_error < 1e-10
        assert chain.h3_block_error < 1e-10

    def test_h2_linear_terms_cancel(self):
        chain = transform_chain(SwansonParams(2.0, 1.2, 0.8, 0.4, 0.3, 96))
        assert abs(chain.h2[0, 1]) < 1e-9
        assert abs(chain.h2[1, 0]) < 1e-9

    def test_h2_pt_symmetric(self):
        # parity = diag((-1)^n) with time reversal = conjugation: the
        # reduced quadratic form commutes with their product
        rng = np.random.default_rng(17)
        for _ in range(5):
            lam = float(rng.uniform(1.5, 3.0))
            a1 = float(rng.uniform(0.5, 1.5))
            a2 = a1 * float(rng.uniform(0.6, 1.6))
            b1, b2 = (float(v) for v in rng.uniform(0.1, 0.5, 2))
            chain = transform_chain(SwansonParams(lam, a1, a2, b1, b2, 64))
            par = np.diag((-1.0) ** np.arange(64)).astype(complex)
            pt_image = par @ np.conj(chain.h2) @ par
            m = 32
            assert np.abs((pt_image - chain.h2)[:m, :m]).max() < 1e-9

    def test_h3_hermitian_on_block_as_basis_grows(self):
        # unbroken regime: H3 approaches a Hermitian matrix on the
        # leading half block as the truncation grows
        defects = []
        for n in (48, 96):
            chain = transform_chain(SwansonParams(2.0, 1.2, 0.8, 0.4, 0.3, n))
            m = n // 4
            blk = chain.h3[:m, :m]
            defects.append(np.abs(blk - blk.conj().T).max())
        assert defects[1] <= defects[0] + 1e-12
        assert defects[1] < 1e-10

    def test_h3_diag_is_oscillator(self):
        p = SwansonParams(2.0, 1.2, 0.8, 0.4, 0.3, 96)
        chain = transform_chain(p)
        ops = build_fock_ops(p.n_trunc)
        target = (2.0 * np.sqrt(p.lam ** 2 - 4 * p.beta1 * p.beta2) * ops.k_zero
                  + chain.delta * np.eye(p.n_trunc))
        m = p.n_trunc // 4
        assert np.abs((chain.h3_diag - target)[:m, :m]).max() < 1e-9

    def test_chain_isospectral_on_leading_block(self):
        chain = transform_chain(SwansonParams(2.0, 1.2, 0.8, 0.4, 0.3, 96))

        def lead(mat, count=10):
            half = mat.shape[0] // 2
            return eig_general(mat[:half, :half]).eigenvalues[:count]

        ref = lead(chain.h_gsw)
        for mat in (chain.h1, chain.h2, chain.h3):
            assert multiset_err(lead(mat), ref) < 1e-9

    def test_exceptional_point_chain(self):
        lam, a1, a2, b1 = 1.0, 1.0, 0.7, 0.6
        b2 = beta2_for_discriminant(lam, a1, a2, b1, 1.0)
        chain = transform_chain(SwansonParams(lam, a1, a2, b1, b2, 32))
        assert chain.regime == "Exceptional"
        assert abs(chain.lambda_tilde) < 1e-7
        assert chain.squeeze_arg is None and chain.h3_diag is None


class TestSpectrum:
    def test_symmetric_closed_form(self):
        en = gsw_spectrum(SYMMETRIC, 4)
        expected = np.sqrt(3.0) * (np.arange(4) + 0.5) - 1.0 / 3.0
        np.testing.assert_allclose(en, expected, atol=1e-14)
        assert abs(en[0] - 0.5326920704511053) < 1e-12

    def test_harmonic_limit(self):
        p = SwansonParams(1.7, 0.0, 0.0, 0.0, 0.0, 32)
        np.testing.assert_allclose(gsw_spectrum(p, 5),
                                   1.7 * (np.arange(5) + 0.5), atol=1e-14)

    def test_matches_truncated_numerics(self):
        p = SwansonParams(2.0, 1.0, 1.0, 0.5, 0.5, 64)
        dec = eig_general(build_gsw(p))
        en = gsw_spectrum(p, 8)
        assert np.abs(dec.eigenvalues[:8] - en).max() < 1e-8

    def test_non_real_gap_rejected(self):
        with pytest.raises(NonRealSpectrumError):
            gsw_spectrum(SwansonParams(1.0, 1.0, 1.0, 2.0, 2.0, 32), 4)

    def test_level_window_capped(self):
        with pytest.raises(DomainError):
            gsw_spectrum(SYMMETRIC, 17)

    def test_marginal_gap_warns(self):
        p = SwansonParams(1.0, 0.2, 0.2, 0.5, 0.4999999, 32)
        with pytest.warns(UserWarning):
            gsw_spectrum(p, 2)


class TestNuForm:
    def test_symmetric_coefficients(self):
        nus, efn = nu_form(SwansonParams(2.0, 1.0, 1.0, 0.5, 0.5, 32))
        np.testing.assert_allclose(
            nus, (0.5, 1.5, 0.0, 0.0, np.sqrt(2.0)), atol=1e-15)
        assert abs(efn(0) - 0.5326920704511053) < 1e-12

    def test_structural_zeros(self):
        nus, _ = nu_form(SwansonParams(2.0, 0.3, 0.9, 0.4, 0.4, 32))
        assert nus[2] == 0.0  # beta1 == beta2
        nus, _ = nu_form(SwansonParams(2.0, 0.7, 0.7, 0.1, 0.4, 32))
        assert nus[3] == 0.0  # alpha1 == alpha2

    def test_agrees_with_ladder_spectrum(self):
        rng = np.random.default_rng(9)
        done = 0
        while done < 100:
            lam = float(rng.uniform(0.8, 3.0))
            b1, b2 = rng.uniform(-0.4, 0.4, 2)
            if lam * lam - 4.0 * b1 * b2 <= 1e-3:
                continue
            a1, a2 = rng.uniform(-1.5, 1.5, 2)
            p = SwansonParams(lam, float(a1), float(a2), float(b1), float(b2), 32)
            _, efn = nu_form(p, float(rng.uniform(0.5, 2.0)),
                             float(rng.uniform(0.5, 2.0)))
            en = gsw_spectrum(p, 6)
            assert np.abs(efn(np.arange(6)) - en).max() < 1e-12
            done += 1


class TestEvolution:
    def test_t_zero_identity(self):
        chain = transform_chain(SYMMETRIC)
        psi0 = np.zeros(64, complex)
        psi0[3] = 1.0
        np.testing.assert_array_equal(evolve_h3(chain, psi0, 0.0), psi0)

    def test_matches_expm_oracle_on_leading_half(self):
        chain = transform_chain(SYMMETRIC)
        psi0 = np.zeros(64, complex)
        psi0[0] = 1.0
        out = evolve_h3(chain, psi0, 0.5)
        oracle = expm(-1j * chain.h3 * 0.5) @ psi0
        assert np.abs(out - oracle)[:32].max() < 1e-8

    def test_small_coupling_limit_is_global_phase(self):
        # with alpha2*beta1 -> 0 the su(1,1) ladder part drops out and a
        # number state only picks up the phase exp(-i (delta + lam_tilde/2) t)
        p = SwansonParams(2.0, 1.0, 1e-7, 0.5, 0.3, 32)
        chain = transform_chain(p)
        psi0 = np.zeros(32, complex)
        psi0[0] = 1.0
        t = 0.7
        out = evolve_h3(chain, psi0, t)
        phase = np.exp(-1j * (chain.delta + chain.lambda_tilde / 2.0) * t)
        assert abs(out[0] - phase) < 1e-6
        assert np.abs(out[1:]).max() < 1e-6

    def test_dimension_guard(self):
        chain = transform_chain(SYMMETRIC)
        with pytest.raises(Exception):
            evolve_h3(chain, np.zeros(10, complex), 0.1)


class TestIntertwinedStates:
    def test_near_identity_couplings(self):
        p = SwansonParams(2.0, 1e-8, 1e-8, 1e-8, 0.0, 32)
        chain = transform_chain(p)
        vec = intertwined_eigenstate(chain, 2)
        expected = np.zeros(32, complex)
        expected[2] = 1.0
        assert np.abs(np.abs(vec) - np.abs(expected)).max() < 1e-6

    @pytest.mark.parametrize("n,limit", [(0, 1e-6), (2, 1e-5)])
    def test_symmetric_eigen_residual(self, n, limit):
        chain = transform_chain(SYMMETRIC)
        en = gsw_spectrum(SYMMETRIC, 8)
        vec = intertwined_eigenstate(chain, n)
        resid = np.linalg.norm(chain.h_gsw @ vec - en[n] * vec)
        assert resid < limit

    def test_asymmetric_moderate_case(self):
        p = SwansonParams(2.0, 1.1, 0.9, 0.4, 0.3, 64)
        chain = transform_chain(p)
        en = gsw_spectrum(p, 4)
        vec = intertwined_eigenstate(chain, 1)
        resid = np.linalg.norm(chain.h_gsw @ vec - en[1] * vec)
        assert resid < 1e-8

    def test_broken_regime_rejected(self):
        chain = transform_chain(SwansonParams(1.0, 1.0, 0.1, 2.0, 2.0, 32))
        with pytest.raises(DomainError):
            intertwined_eigenstate(chain, 0)

    def test_level_window(self):
        chain = transform_chain(SYMMETRIC)
        with pytest.raises(DomainError):
            intertwined_eigenstate(chain, 40)


class TestDiscriminantSweep:
    def test_three_regimes_and_transition(self):
        rows = discriminant_sweep(2.0, 1.0, 1.0, 0.5, 0.0, 2.0, 201)
        regimes = [r[3] for r in rows]
        assert regimes[0] == "Unbroken"
        assert regimes[-1] == "Broken"
        ep_rows = [r for r in rows if r[3] == "Exceptional"]
        assert len(ep_rows) == 1 and abs(ep_rows[0][0] - 1.0) < 1e-12
        # real below the transition, imaginary above
        for d, re_l, im_l, regime in rows:
            if regime == "Unbroken":
                assert im_l == 0.0
            elif regime == "Broken":
                assert re_l == 0.0 and im_l > 0.0

    def test_lambda_tilde_values(self):
        rows = discriminant_sweep(2.0, 1.0, 1.0, 0.5, 0.0, 2.0, 21)
        for d, re_l, im_l, _ in rows:
            expected = 2.0 * np.sqrt(complex(1.0 - d))
            assert abs(complex(re_l, im_l) - expected) < 1e-12

    def test_beta2_inversion(self):
        for d in (-0.5, 0.2, 1.0, 1.7):
            b2 = beta2_for_discriminant(1.3, 0.9, 0.6, 0.4, d)
            p = SwansonParams(1.3, 0.9, 0.6, 0.4, b2, 16)
            assert abs(discriminant(p) - d) < 1e-12
