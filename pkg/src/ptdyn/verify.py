"""Named property and identity checks backing the ``verify`` command.

Each check exercises one invariant of the library against an
independent route (closed forms, commutator algebra, oracle
integrators, randomized draws) and reports the observed worst error
next to its pass threshold. Randomized checks derive their generator
from the suite seed plus a per-check offset, so results are
reproducible and independent of execution order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import branches, lattice, scaling, spin, swanson
from .fock import build_fock_ops
from .linalg import eig_general, expm, one_norm, similarity_conjugate

__all__ = ["VerifyResult", "available_checks", "run_suite"]


@dataclass(frozen=True)
class VerifyResult:
    name: str
    max_err: float
    threshold: float
    passed: bool
    params: dict = field(default_factory=dict)

    @staticmethod
    def of(name, err, threshold, **params):
        err = float(err)
        return VerifyResult(name, err, float(threshold), err <= threshold, params)


def _multiset_err(a, b) -> float:
    """Greedy nearest-neighbor matching distance between eigenvalue sets."""
    a = list(np.asarray(a, dtype=complex))
    b = list(np.asarray(b, dtype=complex))
    worst = 0.0
    for x in a:
        j = int(np.argmin([abs(x - y) for y in b]))
        worst = max(worst, abs(x - b[j]))
        b.pop(j)
    return worst


def _rng(seed: int, offset: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, offset]))


# --- linalg ---------------------------------------------------------------


def check_expm_inverse(seed: int) -> VerifyResult:
    rng = _rng(seed, 1)
    worst = 0.0
    for _ in range(25):
        n = int(rng.integers(2, 24))
        a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        a *= rng.uniform(0.1, 10.0) / max(one_norm(a), 1e-30)
        prod = expm(a) @ expm(-a)
        worst = max(worst, float(np.abs(prod - np.eye(n)).max()))
    return VerifyResult.of("expm_inverse", worst, 1e-10, draws=25)


def check_expm_block_diag(seed: int) -> VerifyResult:
    rng = _rng(seed, 2)
    worst = 0.0
    for _ in range(10):
        na, nb = int(rng.integers(2, 10)), int(rng.integers(2, 10))
        a = rng.standard_normal((na, na)) + 1j * rng.standard_normal((na, na))
        b = rng.standard_normal((nb, nb)) + 1j * rng.standard_normal((nb, nb))
        blk = np.zeros((na + nb, na + nb), dtype=complex)
        blk[:na, :na] = a
        blk[na:, na:] = b
        direct = expm(blk)
        pieces = np.zeros_like(blk)
        pieces[:na, :na] = expm(a)
        pieces[na:, na:] = expm(b)
        worst = max(worst, float(np.abs(direct - pieces).max()))
    return VerifyResult.of("expm_block_diag", worst, 1e-10, draws=10)


def check_eig_reconstruction(seed: int) -> VerifyResult:
    rng = _rng(seed, 3)
    worst = 0.0
    for _ in range(20):
        n = int(rng.integers(2, 20))
        a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        dec = eig_general(a)
        rec = dec.eigenvectors @ np.diag(dec.eigenvalues) @ np.linalg.inv(dec.eigenvectors)
        worst = max(worst, float(np.abs(rec - a).max()) / max(one_norm(a), 1e-30))
    return VerifyResult.of("eig_reconstruction", worst, 1e-8, draws=20)


def check_conjugation_isospectral(seed: int) -> VerifyResult:
    rng = _rng(seed, 4)
    worst = 0.0
    for _ in range(100):
        h = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
        g = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
        theta = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        if abs(theta) * one_norm(g) > 3.0:
            g *= 3.0 / (abs(theta) * one_norm(g))
        conj = similarity_conjugate(h, g, theta)
        worst = max(worst, _multiset_err(eig_general(conj).eigenvalues,
                                         eig_general(h).eigenvalues))
    return VerifyResult.of("conjugation_isospectral", worst, 1e-10, draws=100)


# --- spin systems ---------------------------------------------------------


def check_spin_commutators(seed: int) -> VerifyResult:
    worst = 0.0
    for two_j in range(1, 26):
        jx, jy, jz = spin.build_spin_ops(two_j / 2.0)
        worst = max(
            worst,
            float(np.abs(jx @ jy - jy @ jx - 1j * jz).max()),
            float(np.abs(jy @ jz - jz @ jy - 1j * jx).max()),
            float(np.abs(jz @ jx - jx @ jz - 1j * jy).max()),
        )
    return VerifyResult.of("spin_commutators", worst, 1e-13, j_max=12.5)


def _regime_draws(rng, count):
    """Parameter draws covering all three regimes, kept off the EP wall."""
    draws = []
    for i in range(count):
        j = float(rng.integers(1, 6)) / 2.0
        eps = float(rng.uniform(-3, 3))
        gamma = float(rng.uniform(0.2, 3.0))
        kind = i % 3
        if kind == 0:
            k = gamma * float(rng.uniform(1.1, 3.0))
        elif kind == 1:
            k = gamma * float(rng.uniform(0.05, 0.9))
        else:
            k = gamma
        draws.append(spin.SpinParams(j, eps, gamma, float(k)))
    return draws


def check_spin_spectrum_match(seed: int) -> VerifyResult:
    rng = _rng(seed, 5)
    worst = 0.0
    n_off = 0
    for p in _regime_draws(rng, 200):
        if abs(abs(p.k) - abs(p.gamma)) < 1e-12:
            continue  # exact EPs measured by the defect check instead
        n_off += 1
        dec = eig_general(spin.build_pt_hamiltonian(p))
        worst = max(worst, _multiset_err(dec.eigenvalues, spin.analytic_spectrum(p)))
    return VerifyResult.of("spin_spectrum_match", worst, 1e-8, draws=n_off)


def check_spin_hermitian_map(seed: int) -> VerifyResult:
    rng = _rng(seed, 6)
    worst_h = 0.0
    worst_rt = 0.0
    for p in _regime_draws(rng, 120):
        if abs(abs(p.k) - abs(p.gamma)) < 1e-6 * max(abs(p.k), abs(p.gamma)):
            continue
        theta0, h0 = spin.hermitian_map(p)
        h = spin.build_pt_hamiltonian(p)
        if abs(p.k) > abs(p.gamma):
            worst_h = max(worst_h, float(np.abs(h0 - h0.conj().T).max())
                          / max(one_norm(h0), 1e-30))
        _, jy, _ = spin.build_spin_ops(p.j)
        back = similarity_conjugate(h0, jy, -theta0)
        worst_rt = max(worst_rt, float(np.abs(back - h).max()))
    return VerifyResult.of("spin_hermitian_map", max(worst_h, worst_rt), 1e-9,
                           hermiticity=worst_h, round_trip=worst_rt)


def check_spin_exceptional_defect(seed: int) -> VerifyResult:
    worst_gap = 0.0
    for two_j in (1, 2, 3, 4):
        j = two_j / 2.0
        p = spin.SpinParams(j, 2.0, 1.0, 1.0)
        rep = spin.classify_region(p)
        order = rep.exceptional_order
        ok = (rep.regime == "Exceptional" and order == two_j + 1
              and all(c.geometric == 1 for c in rep.defect.clusters))
        worst_gap = max(worst_gap, 0.0 if ok else 1.0)
    return VerifyResult.of("spin_exceptional_defect", worst_gap, 0.5,
                           js="1/2,1,3/2,2")


# --- branch structure -----------------------------------------------------


def check_branch_square(seed: int) -> VerifyResult:
    rng = _rng(seed, 7)
    kc = rng.uniform(-3, 3, 400) + 1j * rng.uniform(-3, 3, 400)
    worst = 0.0
    for br in ("positive", "negative"):
        v = branches.branch_value(kc, 1.0, br)
        rel = np.abs(v * v - (kc * kc - 1.0)) / np.maximum(np.abs(kc * kc - 1.0), 1e-12)
        worst = max(worst, float(rel.max()))
    return VerifyResult.of("branch_square", worst, 1e-12, points=400)


def check_branch_cut_location(seed: int) -> VerifyResult:
    grid = branches.branch_grid(1.0, (-2, 2), (-2, 2), 201)
    ii, jj = np.where(grid.discontinuity_mask)
    if len(ii) == 0:
        return VerifyResult.of("branch_cut_location", 1.0, 0.5)
    re_hit = grid.re_k_axis[ii]
    im_hit = grid.im_k_axis[jj]
    cell = 4.0 / 200.0
    false_cells = int(np.count_nonzero(
        (np.abs(im_hit) > cell * 1.0001) | (np.abs(re_hit) > 1.0 + cell * 1.0001)))
    covered = np.unique(np.round(re_hit[np.abs(im_hit) <= cell * 1.0001], 9))
    interior = grid.re_k_axis[(np.abs(grid.re_k_axis) < 1.0 - 1e-12)
                              & (np.abs(grid.re_k_axis) > cell * 0.5)]
    missing = int(np.count_nonzero(~np.isin(np.round(interior, 9), covered)))
    return VerifyResult.of("branch_cut_location", false_cells + missing, 0.5,
                           cut_cells=int(len(ii)))


# --- Fock / Swanson -------------------------------------------------------


def check_fock_algebra(seed: int) -> VerifyResult:
    ops = build_fock_ops(64)
    n = ops.n_trunc
    comm = ops.a @ ops.a_dag - ops.a_dag @ ops.a
    expected = np.eye(n, dtype=complex)
    expected[-1, -1] = 1.0 - n
    worst = float(np.abs(comm - expected).max())
    lead = n - 2
    for kpm, sign in ((ops.k_plus, 1.0), (ops.k_minus, -1.0)):
        c = ops.k_zero @ kpm - kpm @ ops.k_zero - sign * kpm
        worst = max(worst, float(np.abs(c[:lead, :lead]).max()))
    worst = max(worst, float(np.abs(ops.x_op - ops.x_op.conj().T).max()))
    worst = max(worst, float(np.abs(ops.p_op - ops.p_op.conj().T).max()))
    return VerifyResult.of("fock_algebra", worst, 1e-12, n_trunc=64)


def check_swanson_symmetric(seed: int) -> VerifyResult:
    p = swanson.SwansonParams(2.0, 1.0, 1.0, 0.5, 0.5, 128)
    chain = swanson.transform_chain(p)
    scal = max(abs(chain.gamma1 - 1.0 / 3.0), abs(chain.gamma2 - 1.0 / 3.0),
               abs(chain.delta + 1.0 / 3.0), abs(complex(chain.zeta)),
               abs(chain.lambda_tilde - 2.0))
    en = swanson.gsw_spectrum(p, 16)
    dec = eig_general(chain.h_gsw)
    worst_e = float(np.abs(dec.eigenvalues[:16] - en).max())
    return VerifyResult.of("swanson_symmetric", max(scal, worst_e), 1e-6,
                           scalars=scal, levels=worst_e)


def check_swanson_chain_blocks(seed: int) -> VerifyResult:
    rng = _rng(seed, 8)
    worst = 0.0
    for _ in range(6):
        lam = float(rng.uniform(1.5, 3.0))
        a1 = float(rng.uniform(0.5, 1.5))
        a2 = a1 * float(rng.uniform(0.6, 1.6))
        b1 = float(rng.uniform(0.1, 0.5))
        b2 = float(rng.uniform(0.1, 0.5))
        p = swanson.SwansonParams(lam, a1, a2, b1, b2, 96)
        chain = swanson.transform_chain(p)
        worst = max(worst, chain.h2_block_error, chain.h3_block_error)
        if chain.h3_diag is not None:
            ops = build_fock_ops(p.n_trunc)
            target = (2.0 * np.sqrt(complex(lam ** 2 - 4 * b1 * b2)) * ops.k_zero
                      + chain.delta * np.eye(p.n_trunc))
            mlead = p.n_trunc // 4
            worst = max(worst, float(
                np.abs((chain.h3_diag - target)[:mlead, :mlead]).max()))
    return VerifyResult.of("swanson_chain_blocks", worst, 1e-8, draws=6)


def check_nu_consistency(seed: int) -> VerifyResult:
    rng = _rng(seed, 9)
    worst = 0.0
    n_done = 0
    while n_done < 100:
        lam = float(rng.uniform(0.8, 3.0))
        b1 = float(rng.uniform(-0.4, 0.4))
        b2 = float(rng.uniform(-0.4, 0.4))
        if lam * lam - 4 * b1 * b2 <= 1e-3:
            continue
        a1 = float(rng.uniform(-1.5, 1.5)) or 0.3
        a2 = float(rng.uniform(-1.5, 1.5)) or 0.4
        mass = float(rng.uniform(0.5, 2.0))
        omega = float(rng.uniform(0.5, 2.0))
        p = swanson.SwansonParams(lam, a1, a2, b1, b2, 32)
        _, efn = swanson.nu_form(p, mass, omega)
        en = swanson.gsw_spectrum(p, 8)
        worst = max(worst, float(np.abs(efn(np.arange(8)) - en).max()))
        n_done += 1
    return VerifyResult.of("nu_consistency", worst, 1e-12, draws=100)


def check_wick_consistency(seed: int) -> VerifyResult:
    rng = _rng(seed, 10)
    worst = 0.0
    for _ in range(50):
        eps = float(rng.uniform(0.0, 6.0))
        k = int(rng.integers(-3, 4))
        r, phase, tau = scaling.wick_parameters(
            scaling.DeformationParams(eps, k, 256))
        lhs = np.exp(2j * r)
        rhs = np.exp(-1j * r * (2.0 + eps) + 1j * np.pi * eps / 2.0)
        worst = max(worst, abs(lhs - rhs), abs(phase - lhs), abs(tau - phase))
    return VerifyResult.of("wick_consistency", worst, 1e-14, draws=50)


# --- scaling identities ----------------------------------------------------


def check_scale_identity(seed: int) -> VerifyResult:
    ex, ep = scaling.scale_check(0.3, 128)
    return VerifyResult.of("scale_identity", max(ex, ep), 1e-8,
                           r=0.3, n_trunc=128,
                           interior_fraction=scaling.SCALE_INTERIOR)


def check_scale_inverse(seed: int) -> VerifyResult:
    # exp(r*D) has condition exp(2*r*lam_max(D)); r up to 0.5 at this
    # truncation is the largest the identity survives in double precision
    ops = build_fock_ops(128)
    d = (ops.x_op @ ops.p_op + ops.p_op @ ops.x_op) / 2.0
    worst = 0.0
    m = 12
    for r in (0.25, 0.5):
        prod = expm(r * d) @ expm(-r * d)
        worst = max(worst, float(np.abs((prod - np.eye(128))[:m, :m]).max()))
    return VerifyResult.of("scale_inverse", worst, 1e-9, n_trunc=128,
                           r_values=[0.25, 0.5], interior=m)


def check_deformed_equivalent(seed: int) -> VerifyResult:
    err = scaling.deformed_equivalent_check(scaling.DeformationParams(2.0, 0, 256))
    return VerifyResult.of("deformed_equivalent", err, 1e-5, eps=2, k=0,
                           n_trunc=256,
                           interior_fraction=scaling.DEFORMED_INTERIOR)


def check_general_deformation(seed: int) -> VerifyResult:
    err = scaling.general_deformation_check([0.0, 0.0, 1.0], 256)
    return VerifyResult.of("general_deformation", err, 1e-5, V="x^2",
                           n_trunc=256,
                           interior_fraction=scaling.GENERAL_INTERIOR)


def check_coherent_map(seed: int) -> VerifyResult:
    err = scaling.coherent_map_check(1.0, 128)
    return VerifyResult.of("coherent_map", err, 1e-6, lambda_amp=1.0,
                           n_trunc=128,
                           interior_fraction=scaling.COHERENT_INTERIOR)


def check_truncation_convergence(seed: int) -> VerifyResult:
    """Doubling the basis at a fixed interior window must not raise errors."""
    worst_ratio = 0.0
    pairs = []
    ex, ep = scaling.scale_check(0.3, 128)
    m = max(4, int(round(scaling.SCALE_INTERIOR * 128)))
    ex2, ep2 = scaling.scale_check(0.3, 256, interior_fraction=m / 256.0)
    pairs.append(("scale", max(ex, ep), max(ex2, ep2)))
    m = max(4, int(round(scaling.DEFORMED_INTERIOR * 256)))
    e_half = scaling.deformed_equivalent_check(
        scaling.DeformationParams(2.0, 0, 128, interior_fraction=m / 128.0))
    e_full = scaling.deformed_equivalent_check(scaling.DeformationParams(2.0, 0, 256))
    pairs.append(("deformed", e_half, e_full))
    m = max(4, int(round(scaling.GENERAL_INTERIOR * 256)))
    g_half = scaling.general_deformation_check([0.0, 0.0, 1.0], 128,
                                               interior_fraction=m / 128.0)
    g_full = scaling.general_deformation_check([0.0, 0.0, 1.0], 256)
    pairs.append(("general", g_half, g_full))
    m = max(4, int(round(scaling.COHERENT_INTERIOR * 128)))
    c_half = scaling.coherent_map_check(1.0, 64, interior_fraction=min(m / 64.0, 0.9))
    c_full = scaling.coherent_map_check(1.0, 128)
    pairs.append(("coherent", c_half, c_full))
    info = {}
    for name, small, big in pairs:
        ratio = big / max(small * 1.1 + 1e-15, 1e-300)
        info[name] = (small, big)
        worst_ratio = max(worst_ratio, ratio)
    return VerifyResult.of("truncation_convergence", worst_ratio, 1.0, **{
        k: f"{v[0]:.3e}->{v[1]:.3e}" for k, v in info.items()})


# --- lattice ---------------------------------------------------------------


def check_lattice_oracle(seed: int) -> VerifyResult:
    c = lattice.LatticeConfig(0.0, 1.0, 1.0, 0.0, 40, 2.0, 1e-3)
    psi0 = np.zeros(40, complex)
    psi0[0] = 1.0
    traj = lattice.propagate_rk4(c, psi0)
    exact = lattice.propagate_oracle(c, psi0, 2.0)
    err = float(np.abs(traj.amplitudes[-1] - exact).max())
    return VerifyResult.of("lattice_oracle", err, 1e-6, n_sites=40, dz=1e-3)


def check_lattice_order(seed: int) -> VerifyResult:
    psi0 = np.zeros(40, complex)
    psi0[0] = 1.0
    errs = []
    for dz in (8e-3, 4e-3, 2e-3):
        c = lattice.LatticeConfig(0.0, 1.0, 1.0, 0.0, 40, 2.0, dz)
        traj = lattice.propagate_rk4(c, psi0)
        exact = lattice.propagate_oracle(c, psi0, 2.0)
        errs.append(float(np.abs(traj.amplitudes[-1] - exact).max()))
    orders = [np.log2(errs[i] / errs[i + 1]) for i in range(2)]
    dev = max(abs(o - 4.0) for o in orders)
    return VerifyResult.of("lattice_order", dev, 0.5,
                           orders=[round(o, 3) for o in orders])


def check_lattice_norm(seed: int) -> VerifyResult:
    c = lattice.LatticeConfig(0.3, 0.8, 0.8, 0.2, 24, 10.0, 1e-3)
    psi0 = np.zeros(24, complex)
    psi0[2] = 1.0
    traj = lattice.propagate_rk4(c, psi0)
    drift = float(np.abs(traj.norms - traj.norms[0]).max())
    return VerifyResult.of("lattice_norm_conservation", drift, 1e-8, z_max=10.0)


def check_lattice_growth(seed: int) -> VerifyResult:
    c = lattice.LatticeConfig(0.2, 1.0, -0.4, 0.0, 6, 12.0, 1e-3)
    psi0 = np.zeros(6, complex)
    psi0[0] = 1.0
    traj = lattice.propagate_rk4(c, psi0)
    m = lattice.build_lattice_generator(c)
    target = 2.0 * float(eig_general(-m).eigenvalues.imag.max())
    i0 = int(round(8.0 / c.dz))
    rate = (np.log(traj.norms[-1]) - np.log(traj.norms[i0])) / (
        traj.z_samples[-1] - traj.z_samples[i0])
    rel = abs(rate - target) / abs(target)
    return VerifyResult.of("lattice_growth_rate", rel, 0.05,
                           rate=rate, target=target)


def check_lattice_gsw_equivalence(seed: int) -> VerifyResult:
    c = lattice.LatticeConfig(0.7, 1.1, 0.4, 0.25, 32, 1.0, 1e-2)
    m = lattice.build_lattice_generator(c)
    p = swanson.SwansonParams(0.7, 1.1, 0.4, 0.25, 0.25, 32)
    err = float(np.abs(m - swanson.build_gsw(p)).max())
    return VerifyResult.of("lattice_gsw_equivalence", err, 1e-14, n_sites=32)


_CHECKS = {
    fn.__name__.removeprefix("check_"): fn
    for fn in (
        check_expm_inverse,
        check_expm_block_diag,
        check_eig_reconstruction,
        check_conjugation_isospectral,
        check_spin_commutators,
        check_spin_spectrum_match,
        check_spin_hermitian_map,
        check_spin_exceptional_defect,
        check_branch_square,
        check_branch_cut_location,
        check_fock_algebra,
        check_swanson_symmetric,
        check_swanson_chain_blocks,
        check_nu_consistency,
        check_wick_consistency,
        check_scale_identity,
        check_scale_inverse,
        check_deformed_equivalent,
        check_general_deformation,
        check_coherent_map,
        check_truncation_convergence,
        check_lattice_oracle,
        check_lattice_order,
        check_lattice_norm,
        check_lattice_growth,
        check_lattice_gsw_equivalence,
    )
}


def available_checks() -> list[str]:
    return list(_CHECKS)


def run_suite(names=None, seed: int = 0, threads: int = 1) -> list[VerifyResult]:
    """Run the selected checks (all by default) and return their results.

    Results are returned in registry order regardless of how many
    worker threads computed them.
    """
    if names is None:
        names = list(_CHECKS)
    unknown = [n for n in names if n not in _CHECKS]
    if unknown:
        raise KeyError(f"unknown checks: {', '.join(unknown)}")
    if threads <= 1:
        return [_CHECKS[n](seed) for n in names]
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda n: _CHECKS[n](seed), names))
