"""Dilation-type non-unitary maps verified on truncated quadrature matrices.

The generator is D = (xp + px)/2; conjugation by S_r = exp(r*D)
rescales the quadratures, S_r x S_r^-1 = exp(-i r) x and
S_r p S_r^-1 = exp(i r) p, which maps the complex-deformed oscillator
p**2 + x**2 (i x)**eps onto a phase times the Hermitian p**2 + x**(2+eps)
at r = pi*(eps + 4k)/(2*(eps + 4)), and p**2 + V(i x) onto
-p**2 + V(x) at r = pi/2.

For real r the exponent r*D is Hermitian, so S_r is non-unitary with
condition number exp(2*r*lam_max(D)); lam_max grows linearly with the
truncation, which makes a one-shot conjugation at r = pi/2 meaningless
in double precision. Large rotations are therefore verified in stages:
the closed form of the partially rotated Hamiltonian is known at every
angle s, and each stage checks one small-angle conjugation against the
next closed form, arriving exactly at the full-rotation target.

Every check returns the maximum entrywise deviation on a leading
interior block; truncation corrupts the trailing corner, and the
default interior fractions were calibrated by convergence studies so
that halving the basis (at a fixed window) shows a clear error drop.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fock import build_fock_ops
from .linalg import DomainError, expm

__all__ = [
    "DeformationParams",
    "scaling_generator",
    "scale_check",
    "wick_parameters",
    "deformed_equivalent_check",
    "general_deformation_check",
    "coherent_map_check",
]

#: per-check default interior fractions (calibrated; see module docstring)
SCALE_INTERIOR = 0.125
DEFORMED_INTERIOR = 0.055
GENERAL_INTERIOR = 0.0625
COHERENT_INTERIOR = 0.125

#: largest per-stage rotation angle used by the staged conjugations
MAX_STAGE_ANGLE = 0.55


@dataclass(frozen=True)
class DeformationParams:
    """Deformation exponent, branch integer and truncation policy.

    ``eps_def`` is the deformation exponent (a non-negative real; the
    matrix check additionally needs it even and integral so the
    deformed potential stays polynomial), ``k_int`` the branch integer
    of the rotation-angle formula.
    """

    eps_def: float
    k_int: int = 0
    n_trunc: int = 256
    interior_fraction: float = DEFORMED_INTERIOR

    def __post_init__(self):
        if not (np.isfinite(self.eps_def) and self.eps_def >= 0.0):
            raise DomainError("eps_def must be a non-negative real")
        if not (0.0 < self.interior_fraction < 1.0):
            raise DomainError("interior_fraction must lie in (0, 1)")


def _interior(n_trunc: int, fraction: float) -> int:
    if not (0.0 < fraction < 1.0):
        raise DomainError("interior_fraction must lie in (0, 1)")
    return max(4, int(round(fraction * n_trunc)))


def scaling_generator(n_trunc: int) -> np.ndarray:
    """D = (xp + px)/2 on the truncated Fock basis.

    Hermitian with purely imaginary entries, equal to i*(ad**2 - a**2)/2,
    and traceless.
    """
    if n_trunc < 16:
        raise DomainError(f"n_trunc must be at least 16, got {n_trunc}")
    ops = build_fock_ops(n_trunc)
    return (ops.x_op @ ops.p_op + ops.p_op @ ops.x_op) / 2.0


def scale_check(r, n_trunc: int,
                interior_fraction: float = SCALE_INTERIOR) -> tuple[float, float]:
    """Deviation of S_r x S_r^-1 and S_r p S_r^-1 from their closed forms.

    Returns ``(max_err_x, max_err_p)``, entrywise on the leading
    interior block, against exp(-i r) x and exp(i r) p. Complex r is
    allowed (imaginary r makes S_r unitary and the check benign);
    |r| <= 2 is required since beyond that the truncated exponential
    dominates everything.
    """
    rr = complex(r)
    if abs(rr) > 2.0:
        raise DomainError(f"|r| must be at most 2, got {abs(rr):.3f}")
    if n_trunc < 64:
        raise DomainError(f"n_trunc must be at least 64, got {n_trunc}")
    m = _interior(n_trunc, interior_fraction)
    ops = build_fock_ops(n_trunc)
    d = (ops.x_op @ ops.p_op + ops.p_op @ ops.x_op) / 2.0
    fwd = expm(rr * d)
    bwd = expm(-rr * d)
    cx = fwd @ ops.x_op @ bwd
    cp = fwd @ ops.p_op @ bwd
    tx = np.exp(-1j * rr) * ops.x_op
    tp = np.exp(1j * rr) * ops.p_op
    err_x = float(np.abs((cx - tx)[:m, :m]).max())
    err_p = float(np.abs((cp - tp)[:m, :m]).max())
    return err_x, err_p


def wick_parameters(d: DeformationParams) -> tuple[float, complex, complex]:
    """Rotation angle and phases of the fractional Wick rotation.

    Returns ``(r, phase, tau_factor)`` with
    r = pi*(eps + 4k)/(2*(eps + 4)) and
    phase = exp(i*pi*(eps + 4k)/(4 + eps)) = exp(2 i r); ``tau_factor``
    is the same multiplier read as acting on time, tau = t * tau_factor.
    """
    eps = float(d.eps_def)
    k = int(d.k_int)
    r = np.pi * (eps + 4.0 * k) / (2.0 * (eps + 4.0))
    phase = np.exp(1j * np.pi * (eps + 4.0 * k) / (4.0 + eps))
    return float(r), complex(phase), complex(phase)


def _x_powers(x: np.ndarray, powers) -> dict:
    cache = {0: np.eye(x.shape[0], dtype=np.complex128), 1: x}
    top = max(powers) if powers else 0
    for mth in range(2, top + 1):
        cache[mth] = cache[mth - 1] @ x
    return cache


def _staged_rotation_error(poly: dict, r_total: float, n_trunc: int, m: int) -> float:
    """Worst per-stage interior error of the dilation flow.

    ``poly`` maps x-powers to (complex) coefficients of the rotating
    Hamiltonian family H(s) = exp(2is) p**2 + sum_m c_m exp(-i m s) x**m,
    which obeys H(s + rho) = S_rho H(s) S_rho^-1 for every angle. The
    total rotation is split into stages short enough for double
    precision, each checked against the next closed form; the final
    stage lands exactly on H(r_total).
    """
    ops = build_fock_ops(n_trunc)
    p2 = ops.p_op @ ops.p_op
    xpow = _x_powers(ops.x_op, list(poly))
    n_steps = max(1, int(np.ceil(abs(r_total) / MAX_STAGE_ANGLE)))
    rho = r_total / n_steps
    dgen = (ops.x_op @ ops.p_op + ops.p_op @ ops.x_op) / 2.0
    fwd = expm(rho * dgen)
    bwd = expm(-rho * dgen)

    def h_of(s):
        h = np.exp(2j * s) * p2
        for mth, c in poly.items():
            h = h + c * np.exp(-1j * mth * s) * xpow[mth]
        return h

    worst = 0.0
    h_cur = h_of(0.0)
    for j in range(n_steps):
        conj = fwd @ h_cur @ bwd
        h_next = h_of((j + 1) * rho)
        worst = max(worst, float(np.abs((conj - h_next)[:m, :m]).max()))
        h_cur = h_next
    return worst


def deformed_equivalent_check(d: DeformationParams) -> float:
    """Interior deviation of the rotated deformed oscillator from its target.

    Builds H = p**2 + x**2 (i x)**eps (polynomial, so eps must be an
    even non-negative integer), applies the dilation with the
    branch-k rotation angle and compares against
    phase * (p**2 + x**(2+eps)). Angles beyond ~0.55 are verified in
    stages (see module docstring); the k = 0 angles all fit one stage.
    """
    eps = float(d.eps_def)
    if abs(eps - round(eps)) > 1e-12 or int(round(eps)) % 2 != 0:
        raise DomainError(
            f"eps_def must be an even integer for the matrix check, got {eps}: "
            "(i*x)**eps is not polynomial otherwise")
    if d.n_trunc < 128:
        raise DomainError(f"n_trunc must be at least 128, got {d.n_trunc}")
    eps_i = int(round(eps))
    r, _, _ = wick_parameters(d)
    m = _interior(d.n_trunc, d.interior_fraction)
    coeff = 1j ** eps_i  # x**2 (i x)**eps = i**eps x**(2+eps)
    return _staged_rotation_error({2 + eps_i: coeff}, r, d.n_trunc, m)


def general_deformation_check(poly_coeffs, n_trunc: int,
                              interior_fraction: float = GENERAL_INTERIOR) -> float:
    """Interior deviation of the half-turn map p**2 + V(ix) -> -p**2 + V(x).

    ``poly_coeffs`` are the real coefficients of V (ascending powers,
    constant first). The r = pi/2 dilation is far beyond what a single
    double-precision conjugation survives, so the rotation runs in
    stages whose closed forms are known at every angle; the reported
    error is the worst stage's interior deviation and the final stage
    lands exactly on -p**2 + V(x).
    """
    if n_trunc < 128:
        raise DomainError(f"n_trunc must be at least 128, got {n_trunc}")
    coeffs = [float(c) for c in poly_coeffs]
    if any(not np.isfinite(c) for c in coeffs):
        raise DomainError("polynomial coefficients must be finite")
    m = _interior(n_trunc, interior_fraction)
    poly = {mth: c * (1j ** mth) for mth, c in enumerate(coeffs) if c != 0.0}
    return _staged_rotation_error(poly, np.pi / 2.0, n_trunc, m)


def coherent_map_check(lambda_amp: float, n_trunc: int,
                       interior_fraction: float = COHERENT_INTERIOR) -> float:
    """Interior deviation of T (lam/sqrt(2)) x T^-1 from lam*a, T = exp(-p**2/2).

    T is severely non-normal (condition exp(lam_max(p**2))), but the
    Pade product route keeps the leading interior block accurate; the
    deviation against the annihilation-operator target is returned for
    that block.
    """
    if n_trunc < 64:
        raise DomainError(f"n_trunc must be at least 64, got {n_trunc}")
    lam = float(lambda_amp)
    if not np.isfinite(lam):
        raise DomainError("lambda_amp must be finite")
    m = _interior(n_trunc, interior_fraction)
    ops = build_fock_ops(n_trunc)
    p2 = ops.p_op @ ops.p_op
    fwd = expm(-p2 / 2.0)
    bwd = expm(p2 / 2.0)
    conj = fwd @ ((lam / np.sqrt(2.0)) * ops.x_op) @ bwd
    target = lam * ops.a
    return float(np.abs((conj - target)[:m, :m]).max())
