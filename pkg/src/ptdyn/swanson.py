"""Generalized Swanson oscillator: transformation chain and spectrum.

The model is the non-Hermitian quadratic-plus-linear bosonic form

    H = lam*(n + 1/2) + alpha1*ad + alpha2*a + beta1*ad**2 + beta2*a**2.

Three non-unitary factors bring it to oscillator form: a number-diagonal
rescaling symmetrizes the linear terms, a displacement-type factor with
coefficients (gamma1, gamma2) removes them, and exp(zeta*a**2) makes the
quadratic part symmetric, leaving

    H3 = lam_tilde*(n + 1/2) + (alpha2*beta1/alpha1)*(ad**2 + a**2) + delta.

A squeeze-type rotation in the su(1,1) algebra (K+ = ad**2/2,
K0 = (n+1/2)/2, K- = a**2/2) then diagonalizes H3 to
2*sqrt(lam**2 - 4*beta1*beta2)*K0 + delta, which fixes the spectrum

    E_n = sqrt(lam**2 - 4*beta1*beta2)*(n + 1/2) + delta.

The discriminant d = 4*beta1*(alpha1**2*beta2 - alpha2**2*beta1) /
(alpha1**2*lam**2) separates the regimes: lam_tilde is real for d < 1
(unbroken), purely imaginary in conjugate pairs for d > 1 (broken) and
zero at d = 1, the exceptional point.

All matrix statements are verified on truncated Fock matrices; the
conjugations corrupt a corner block near the truncation wall, so block
comparisons are restricted to the leading half of the basis.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .fock import build_fock_ops
from .linalg import DimensionError, DomainError, expm

_EPS = float(np.finfo(np.float64).eps)

#: relative half-width of the exceptional band around discriminant 1
EP_TOL = 1e-9
#: below this, lam**2 - 4*beta1*beta2 counts as marginal and triggers a warning
MARGINAL_GAP = 1e-6

__all__ = [
    "NonRealSpectrumError",
    "SingularParameterError",
    "ChainStepError",
    "SwansonParams",
    "SwansonChain",
    "build_gsw",
    "discriminant",
    "transform_chain",
    "gsw_spectrum",
    "nu_form",
    "evolve_h3",
    "intertwined_eigenstate",
    "discriminant_sweep",
]


class NonRealSpectrumError(DomainError):
    """The closed-form spectrum is not real for these parameters."""


class SingularParameterError(DomainError):
    """lam**2 = 4*beta1*beta2 makes the displacement coefficients singular."""


class ChainStepError(DomainError):
    """beta1 = 0: skip the exp(zeta*a**2) step, H2 is already symmetric."""


@dataclass(frozen=True)
class SwansonParams:
    """Couplings (lam, alpha1, alpha2, beta1, beta2) and the truncation."""

    lam: float
    alpha1: float
    alpha2: float
    beta1: float
    beta2: float
    n_trunc: int = 128

    def __post_init__(self):
        for name in ("lam", "alpha1", "alpha2", "beta1", "beta2"):
            v = getattr(self, name)
            if not np.isfinite(v):
                raise DomainError(f"{name} must be finite")
        if self.n_trunc < 8:
            raise DomainError(f"n_trunc must be at least 8, got {self.n_trunc}")


def build_gsw(p: SwansonParams) -> np.ndarray:
    """Truncated matrix of the generalized Swanson Hamiltonian."""
    ops = build_fock_ops(p.n_trunc)
    eye = np.eye(p.n_trunc, dtype=np.complex128)
    return (p.lam * (ops.n_op + 0.5 * eye)
            + p.alpha1 * ops.a_dag + p.alpha2 * ops.a
            + p.beta1 * (ops.a_dag @ ops.a_dag) + p.beta2 * (ops.a @ ops.a))


def discriminant(p: SwansonParams) -> float:
    """d = 4*beta1*(alpha1**2*beta2 - alpha2**2*beta1)/(alpha1**2*lam**2)."""
    if p.alpha1 == 0.0 or p.lam == 0.0:
        raise DomainError("discriminant needs alpha1 != 0 and lam != 0")
    return 4.0 * p.beta1 * (p.alpha1 ** 2 * p.beta2 - p.alpha2 ** 2 * p.beta1) / (
        p.alpha1 ** 2 * p.lam ** 2)


def _regime_of(d: float) -> str:
    if abs(d - 1.0) <= EP_TOL * max(1.0, abs(d)):
        return "Exceptional"
    return "Unbroken" if d < 1.0 else "Broken"


@dataclass(frozen=True)
class SwansonChain:
    """Scalars and matrices of the full transformation chain.

    ``squeeze_arg`` is the argument of the arctanh in the squeeze
    factor, 2*alpha2*beta1/(alpha1*lam_tilde); it is real in the
    unbroken regime and purely imaginary in the broken one. At the
    exceptional point lam_tilde vanishes, the squeeze step degenerates
    and ``squeeze_arg`` and ``h3_diag`` are None.

    ``h2_block_error`` / ``h3_block_error`` are the deviations of the
    numerically conjugated H2 / H3 from their closed forms on a leading
    block: half the basis for H2, and half the basis shrunk by
    1/(1 + |zeta|) for H3, since exp(zeta*a**2) drags truncation
    corruption inward proportionally to |zeta|.
    """

    params: SwansonParams
    gamma1: float
    gamma2: float
    delta: float
    zeta: complex
    lambda_tilde: complex
    lambda_tilde_partner: complex
    discriminant: float
    regime: str
    squeeze_arg: complex | None
    h_gsw: np.ndarray
    h1: np.ndarray
    h2: np.ndarray
    h3: np.ndarray
    h3_diag: np.ndarray | None
    h2_block_error: float
    h3_block_error: float


def transform_chain(p: SwansonParams) -> SwansonChain:
    """Run the three-factor chain and the squeeze diagonalization.

    Requires alpha1*alpha2 > 0 (real symmetrized linear coefficient),
    lam**2 != 4*beta1*beta2 (displacement coefficients finite) and
    beta1 != 0 (otherwise the exp(zeta*a**2) step is vacuous and a
    ChainStepError tells the caller to skip it). zeta takes the "+"
    root of its quadratic; in the unbroken regime both roots are real
    and the partner is -lam*alpha1/(2*alpha2*beta1) - zeta.
    """
    lam, a1, a2, b1, b2 = p.lam, p.alpha1, p.alpha2, p.beta1, p.beta2
    if a1 == 0.0 or a2 == 0.0:
        raise DomainError("the chain needs alpha1 != 0 and alpha2 != 0")
    if a1 * a2 <= 0.0:
        raise DomainError(
            "alpha1*alpha2 must be positive: sqrt(alpha1*alpha2) is taken real")
    if b1 == 0.0:
        raise ChainStepError(
            "beta1 = 0: H2 has no ad**2 term, skip the exp(zeta*a**2) step")
    gap = lam * lam - 4.0 * b1 * b2
    scale = max(lam * lam, abs(4.0 * b1 * b2), 1.0)
    if abs(gap) <= 1e-14 * scale:
        raise SingularParameterError(
            "lam**2 = 4*beta1*beta2: gamma1, gamma2 are undefined")

    root = np.sqrt(a1 * a2)
    gamma1 = (a2 / root) * (a1 * lam - 2.0 * a2 * b1) / gap
    gamma2 = (a1 / root) * (a2 * lam - 2.0 * a1 * b2) / gap
    delta = (a1 ** 2 * b2 + a2 ** 2 * b1 - lam * a1 * a2) / gap
    zeta = (-lam * a1 + np.sqrt(complex(
        a1 ** 2 * lam ** 2 - 4.0 * a1 ** 2 * b1 * b2 + 4.0 * a2 ** 2 * b1 ** 2
    ))) / (4.0 * a2 * b1)
    d = discriminant(p)
    regime = _regime_of(d)
    lam_t = lam * np.sqrt(complex(1.0 - d))
    if regime == "Broken" and lam_t.imag < 0.0:
        lam_t = -lam_t

    n = p.n_trunc
    ops = build_fock_ops(n)
    a, ad, eye = ops.a, ops.a_dag, np.eye(n, dtype=np.complex128)
    h_gsw = build_gsw(p)

    gen1 = 0.5 * np.log(a2 / a1) * ops.n_op
    h1 = expm(gen1) @ h_gsw @ expm(-gen1)
    gen2 = gamma1 * ad - gamma2 * a
    h2 = expm(gen2) @ h1 @ expm(-gen2)
    zt = complex(zeta)
    h3 = expm(zt * (a @ a)) @ h2 @ expm(-zt * (a @ a))

    cad2 = a2 * b1 / a1
    ca2 = a1 * b2 / a2
    h2_closed = (lam * (ops.n_op + 0.5 * eye) + cad2 * (ad @ ad) + ca2 * (a @ a)
                 + delta * eye)
    h3_closed = (lam_t * (ops.n_op + 0.5 * eye) + cad2 * (ad @ ad + a @ a)
                 + delta * eye)
    m = n // 2
    h2_err = float(np.abs((h2 - h2_closed)[:m, :m]).max())
    # exp(zeta*a**2) drags truncation corruption inward by a factor that
    # grows with |zeta|; shrink the comparison window accordingly
    m3 = max(6, int((n // 2) / (1.0 + abs(zt))))
    h3_err = float(np.abs((h3 - h3_closed)[:m3, :m3]).max())

    if regime == "Exceptional":
        squeeze_arg = None
        h3_diag = None
    else:
        squeeze_arg = 2.0 * a2 * b1 / (a1 * lam_t)
        if abs(squeeze_arg.imag) < 1e-300:
            squeeze_arg = complex(squeeze_arg.real)
        xi = -0.5 * np.arctanh(squeeze_arg)
        gen_s = xi * (ops.k_plus - ops.k_minus)
        h3_diag = expm(-gen_s) @ h3 @ expm(gen_s)

    if abs(zt.imag) <= 1e-12 * max(1.0, abs(zt)):
        zt = complex(zt.real)
    return SwansonChain(
        params=p,
        gamma1=float(gamma1),
        gamma2=float(gamma2),
        delta=float(delta),
        zeta=zt,
        lambda_tilde=complex(lam_t),
        lambda_tilde_partner=complex(np.conj(lam_t)),
        discriminant=float(d),
        regime=regime,
        squeeze_arg=squeeze_arg,
        h_gsw=h_gsw,
        h1=h1,
        h2=h2,
        h3=h3,
        h3_diag=h3_diag,
        h2_block_error=h2_err,
        h3_block_error=h3_err,
    )


def gsw_spectrum(p: SwansonParams, n_levels: int) -> np.ndarray:
    """Closed-form eigenvalues E_n = sqrt(lam**2 - 4 b1 b2)(n + 1/2) + delta.

    Valid while lam**2 - 4*beta1*beta2 > 0; a marginal gap (< 1e-6)
    triggers a warning since the formula's derivation assumes it is
    comfortably positive. n_levels is capped at n_trunc/4, the window
    where truncated numerics can resolve the levels.
    """
    gap = p.lam ** 2 - 4.0 * p.beta1 * p.beta2
    if gap <= 0.0:
        raise NonRealSpectrumError(
            f"lam**2 - 4*beta1*beta2 = {gap:.3e} <= 0: spectrum is not real")
    if gap < MARGINAL_GAP:
        warnings.warn(
            f"lam**2 - 4*beta1*beta2 = {gap:.3e} is marginal; the closed form "
            "assumes it is comfortably positive", stacklevel=2)
    if n_levels < 1 or n_levels > p.n_trunc // 4:
        raise DomainError(
            f"n_levels must lie in [1, n_trunc/4] = [1, {p.n_trunc // 4}]")
    delta = (p.alpha1 ** 2 * p.beta2 + p.alpha2 ** 2 * p.beta1
             - p.lam * p.alpha1 * p.alpha2) / (p.lam ** 2 - 4.0 * p.beta1 * p.beta2)
    ns = np.arange(n_levels)
    return np.sqrt(gap) * (ns + 0.5) + delta


def nu_form(p: SwansonParams, mass: float = 1.0, omega: float = 1.0):
    """Quadrature-form coefficients (nu1..nu5) and the matching spectrum.

    Rewriting H in terms of x and p gives
    nu1*p**2 + nu2*x**2 + i*nu3*(xp+px) + i*nu4*p + nu5*x with

        nu1 = (lam - beta1 - beta2)/(2 m omega)
        nu2 = m omega (lam + beta1 + beta2)/2
        nu3 = (beta2 - beta1)/2
        nu4 = (alpha2 - alpha1)/sqrt(2 m omega)
        nu5 = sqrt(m omega / 2) (alpha1 + alpha2)

    Returns ``(nus, evaluate)`` where ``evaluate(n)`` is
    sqrt(nu1 nu2 + nu3**2)(2n+1) + (nu4**2 nu2 - nu5**2 nu1
    - 2 nu3 nu4 nu5)/(4(nu1 nu2 + nu3**2)), which agrees with
    gsw_spectrum identically.
    """
    if not (mass > 0.0 and omega > 0.0):
        raise DomainError("mass and omega must be positive")
    mo = mass * omega
    nu1 = (p.lam - p.beta1 - p.beta2) / (2.0 * mo)
    nu2 = 0.5 * mo * (p.lam + p.beta1 + p.beta2)
    nu3 = 0.5 * (p.beta2 - p.beta1)
    nu4 = (p.alpha2 - p.alpha1) / np.sqrt(2.0 * mo)
    nu5 = np.sqrt(0.5 * mo) * (p.alpha1 + p.alpha2)
    quad = nu1 * nu2 + nu3 ** 2
    if quad <= 0.0:
        raise NonRealSpectrumError(
            f"nu1*nu2 + nu3**2 = {quad:.3e} <= 0: spectrum is not real")
    shift = (nu4 ** 2 * nu2 - nu5 ** 2 * nu1 - 2.0 * nu3 * nu4 * nu5) / (4.0 * quad)
    root = np.sqrt(quad)

    def evaluate(n):
        return root * (2.0 * np.asarray(n) + 1.0) + shift

    return (nu1, nu2, nu3, nu4, nu5), evaluate


def evolve_h3(chain: SwansonChain, psi0, t: float) -> np.ndarray:
    """Exact H3 evolution: exp(-i*delta*t) * exp(-i*(H3 - delta)*t) psi0.

    The generator is assembled from clean truncated su(1,1) matrices,
    (2*alpha2*beta1/alpha1)*(K+ + K-) + 2*lam_tilde*K0, which is the
    coupling-scaled su(1,1) element of the closed-form propagator and
    stays finite in the small-coupling limit where that element's
    normalized form diverges.
    """
    p = chain.params
    psi = np.asarray(psi0, dtype=np.complex128)
    if psi.ndim != 1 or psi.shape[0] != p.n_trunc:
        raise DimensionError(
            f"psi0 must be a vector of length n_trunc={p.n_trunc}")
    ops = build_fock_ops(p.n_trunc)
    coeff = 2.0 * p.alpha2 * p.beta1 / p.alpha1
    gen = coeff * (ops.k_plus + ops.k_minus) + 2.0 * chain.lambda_tilde * ops.k_zero
    u = expm(-1j * float(t) * gen)
    return np.exp(-1j * chain.delta * float(t)) * (u @ psi)


def intertwined_eigenstate(chain: SwansonChain, n: int) -> np.ndarray:
    """Eigenvector of the original H with eigenvalue E_n, via the chain.

    Applies eta1^-1 eta2^-1 eta3^-1 S to the number state |n> (all as
    truncated exponentials) and normalizes. Only defined in the
    unbroken regime and for n <= n_trunc/4, where truncation leaves the
    eigenvalue residual small.
    """
    if chain.regime != "Unbroken":
        raise DomainError(f"eigenstates require the Unbroken regime, got {chain.regime}")
    p = chain.params
    if n < 0 or n > p.n_trunc // 4:
        raise DomainError(f"n must lie in [0, n_trunc/4] = [0, {p.n_trunc // 4}]")
    ops = build_fock_ops(p.n_trunc)
    a, ad = ops.a, ops.a_dag
    xi = -0.5 * np.arctanh(chain.squeeze_arg)
    vec = np.zeros(p.n_trunc, dtype=np.complex128)
    vec[n] = 1.0
    vec = expm(xi * (ops.k_plus - ops.k_minus)) @ vec
    vec = expm(-complex(chain.zeta) * (a @ a)) @ vec
    vec = expm(-(chain.gamma1 * ad - chain.gamma2 * a)) @ vec
    vec = expm(-0.5 * np.log(p.alpha2 / p.alpha1) * ops.n_op) @ vec
    return vec / np.linalg.norm(vec)


def discriminant_sweep(lam: float, alpha1: float, alpha2: float, beta1: float,
                       d_min: float, d_max: float, n_points: int):
    """Scalar chain data along a uniform discriminant grid.

    beta2 is solved from the discriminant at fixed (lam, alpha1,
    alpha2, beta1); rows are (discriminant, Re lam_tilde, Im lam_tilde,
    regime), the data behind the three-regime transition plot.
    """
    if n_points < 2:
        raise DomainError("need at least two sweep points")
    if not (d_min < d_max):
        raise DomainError("need d_min < d_max")
    if lam == 0.0 or alpha1 == 0.0 or beta1 == 0.0:
        raise DomainError("sweep needs lam, alpha1, beta1 all nonzero")
    rows = []
    for d in np.linspace(d_min, d_max, n_points):
        d = float(d)
        lam_t = lam * np.sqrt(complex(1.0 - d))
        if d > 1.0 and lam_t.imag < 0.0:
            lam_t = -lam_t
        rows.append((d, float(lam_t.real), float(lam_t.imag), _regime_of(d)))
    return rows


def beta2_for_discriminant(lam: float, alpha1: float, alpha2: float,
                           beta1: float, d: float) -> float:
    """Invert the discriminant for beta2 at fixed remaining couplings."""
    if alpha1 == 0.0 or beta1 == 0.0 or lam == 0.0:
        raise DomainError("needs lam, alpha1, beta1 all nonzero")
    return (d * alpha1 ** 2 * lam ** 2 + 4.0 * alpha2 ** 2 * beta1 ** 2) / (
        4.0 * beta1 * alpha1 ** 2)
