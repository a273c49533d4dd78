"""Gain/loss spin Hamiltonians and their non-unitary map to Hermitian form.

The family is ``H = eps*I + i*gamma*Jz + k*Jx`` on a spin-j multiplet
(dimension 2j+1). Conjugating with ``exp(theta0*Jy)`` at
``theta0 = artanh-type log ratio of (k+gamma)/(k-gamma)`` removes the
anti-Hermitian part whenever |k| != |gamma|; at |k| = |gamma| all
2j+1 levels coalesce into one defective eigenvalue (an exceptional
point of order 2j+1).

The j = 1/2 member doubles as the two-oscillator model written with
Pauli matrices; :func:`from_pauli` converts that parameterization
(``eps*I + k*sigma_x + i*gamma*sigma_z``) into spin units.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    DomainError,
    DefectReport,
    defect_analysis,
    eig_general,
    one_norm,
    similarity_conjugate,
)

_EPS = float(np.finfo(np.float64).eps)

#: relative half-width of the exceptional-point band ||k| - |gamma||
EP_TOL = 1e-9
#: default tolerance for the numeric-vs-analytic spectrum match
DEFAULT_MATCH_TOL = 1e-8

__all__ = [
    "ExceptionalPointError",
    "SpinParams",
    "SpectrumReport",
    "build_spin_ops",
    "build_pt_hamiltonian",
    "binary_oscillator",
    "from_pauli",
    "hermitian_map",
    "analytic_spectrum",
    "classify_region",
    "sweep_rows_at",
    "sweep_spectrum",
]


class ExceptionalPointError(DomainError):
    """Requested map does not exist at |k| = |gamma| (defective point)."""


@dataclass(frozen=True)
class SpinParams:
    """Parameters (j, eps, gamma, k) of the spin-j gain/loss family.

    ``j`` is a half-integer >= 1/2; ``epsilon`` the energy offset,
    ``gamma`` the gain/loss rate and ``k`` the coupling, all in spin
    units (for the Pauli two-oscillator parameterization use
    :func:`from_pauli`).
    """

    j: float
    epsilon: float
    gamma: float
    k: float

    def __post_init__(self):
        two_j = 2.0 * float(self.j)
        if not np.isfinite(two_j) or abs(two_j - round(two_j)) > 1e-12 or round(two_j) < 1:
            raise DomainError(f"j must be a positive half-integer, got {self.j}")
        for name in ("epsilon", "gamma", "k"):
            if not np.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")

    @property
    def dim(self) -> int:
        return int(round(2.0 * float(self.j))) + 1


def build_spin_ops(j) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Spin matrices (Jx, Jy, Jz) in the Jz eigenbasis.

    Jz is diagonal with entries j, j-1, ..., -j and the ladder
    operators carry the standard sqrt(j(j+1) - m(m+1)) elements, so
    [Jx, Jy] = i Jz holds (cyclically) to machine precision.
    """
    jj = float(j)
    two_j = 2.0 * jj
    if not np.isfinite(two_j) or abs(two_j - round(two_j)) > 1e-12 or round(two_j) < 1:
        raise DomainError(f"j must be a positive half-integer, got {j}")
    n = int(round(two_j)) + 1
    m = jj - np.arange(n)
    jz = np.diag(m.astype(np.complex128))
    jp = np.zeros((n, n), dtype=np.complex128)
    for col in range(1, n):
        mm = m[col]
        jp[col - 1, col] = np.sqrt(jj * (jj + 1.0) - mm * (mm + 1.0))
    jm = jp.conj().T
    jx = (jp + jm) / 2.0
    jy = (jp - jm) / 2.0j
    return jx, jy, jz


def build_pt_hamiltonian(p: SpinParams) -> np.ndarray:
    """Matrix eps*I + i*gamma*Jz + k*Jx of dimension 2j+1."""
    jx, _, jz = build_spin_ops(p.j)
    n = p.dim
    return p.epsilon * np.eye(n, dtype=np.complex128) + 1j * p.gamma * jz + p.k * jx


def from_pauli(epsilon: float, gamma: float, k: float) -> SpinParams:
    """Spin parameters reproducing the Pauli form eps*I + k*sigma_x + i*gamma*sigma_z.

    With sigma = 2J the Pauli couplings double in spin units; the log
    ratio entering theta0 is unchanged.
    """
    return SpinParams(0.5, epsilon, 2.0 * gamma, 2.0 * k)


def binary_oscillator(epsilon: float, gamma: float, k: float) -> np.ndarray:
    """Two-oscillator matrix [[eps + i*gamma, k], [k, eps - i*gamma]]."""
    return build_pt_hamiltonian(from_pauli(epsilon, gamma, k))


def _is_exceptional(gamma: float, k: float, tol: float = EP_TOL) -> bool:
    scale = max(abs(k), abs(gamma))
    return abs(abs(k) - abs(gamma)) <= tol * scale or scale == 0.0


def _theta0(gamma: float, k: float) -> complex:
    # split principal logs fix the branch; real for |k| > |gamma| with k > 0
    return 0.5 * (np.log(complex(k + gamma)) - np.log(complex(k - gamma)))


def hermitian_map(p: SpinParams) -> tuple[complex, np.ndarray]:
    """Angle theta0 and H0 = exp(theta0*Jy) H exp(-theta0*Jy).

    The Jz coefficient of H0 vanishes and
    H0 = eps*I + sign(k)*sqrt(k**2 - gamma**2)*Jx with the principal
    square root (Hermitian for |k| > |gamma|, complex symmetric in the
    broken regime). theta0 takes the principal branch of the log ratio,
    complex whenever (k+gamma)/(k-gamma) < 0.

    Raises
    ------
    ExceptionalPointError
        At |k| = |gamma|, where the conjugation degenerates.
    """
    if _is_exceptional(p.gamma, p.k):
        raise ExceptionalPointError(
            f"no Hermitian map at |k| = |gamma| (k={p.k}, gamma={p.gamma}): "
            "the levels coalesce and the matrix is defective")
    theta0 = _theta0(p.gamma, p.k)
    _, jy, _ = build_spin_ops(p.j)
    h = build_pt_hamiltonian(p)
    h0 = similarity_conjugate(h, jy, theta0)
    return theta0, h0


def analytic_spectrum(p: SpinParams) -> np.ndarray:
    """Closed-form levels eps + l*sqrt(k**2 - gamma**2), l = -j..j.

    Uses the principal square root; ordered by l.
    """
    ls = np.arange(p.dim) - float(p.j)
    root = np.sqrt(complex(p.k * p.k - p.gamma * p.gamma))
    return p.epsilon + ls * root


@dataclass(frozen=True)
class SpectrumReport:
    """Numeric and analytic spectra plus regime data for one parameter point."""

    eigenvalues: np.ndarray
    analytic_eigenvalues: np.ndarray
    regime: str
    defect: DefectReport
    theta0: complex | None
    match_error: float
    matched: bool

    @property
    def exceptional_order(self) -> int | None:
        """Largest algebraic multiplicity when at an exceptional point."""
        if self.regime != "Exceptional":
            return None
        return max(c.algebraic for c in self.defect.clusters)


def _sorted_pair_error(a: np.ndarray, b: np.ndarray) -> float:
    key = lambda v: np.lexsort((v.imag, v.real))
    return float(np.abs(a[key(a)] - b[key(b)]).max())


def classify_region(p: SpinParams, tol: float = DEFAULT_MATCH_TOL) -> SpectrumReport:
    """Numeric spectrum, regime label and defect report for one point.

    Regime is Unbroken for |k| > |gamma|, Broken for |k| < |gamma| and
    Exceptional inside the EP_TOL band. The numeric spectrum from
    eig_general is matched against the closed form as sorted multisets;
    at an exceptional point the match tolerance widens to the
    eps**(1/n) scatter a backward-stable eigensolver produces on a
    defective matrix.
    """
    if tol <= 0.0:
        raise DomainError("tol must be positive")
    h = build_pt_hamiltonian(p)
    dec = eig_general(h)
    ana = analytic_spectrum(p)
    n = p.dim
    if _is_exceptional(p.gamma, p.k):
        regime = "Exceptional"
        theta0 = None
        eff_tol = max(tol, 8.0 * max(one_norm(h), 1.0) * _EPS ** (1.0 / n))
    else:
        regime = "Unbroken" if abs(p.k) > abs(p.gamma) else "Broken"
        theta0 = _theta0(p.gamma, p.k)
        eff_tol = tol
    match_error = _sorted_pair_error(dec.eigenvalues, ana)
    report = defect_analysis(h)
    return SpectrumReport(
        eigenvalues=dec.eigenvalues,
        analytic_eigenvalues=np.sort_complex(ana),
        regime=regime,
        defect=report,
        theta0=theta0,
        match_error=match_error,
        matched=match_error <= eff_tol,
    )


def _regime_label(gamma: float, k: float) -> str:
    if _is_exceptional(gamma, k):
        return "Exceptional"
    return "Unbroken" if abs(k) > abs(gamma) else "Broken"


def sweep_rows_at(p_template: SpinParams, k: float, convention: str = "spin"):
    """Rows (k, level_index, re_E, im_E, regime) for one grid point.

    The building block of :func:`sweep_spectrum`; points are
    independent, so sweeps may evaluate them in parallel and assemble
    the table in grid order.
    """
    if convention not in ("spin", "pauli"):
        raise DomainError(f"unknown convention {convention!r}")
    if convention == "pauli":
        if p_template.dim != 2:
            raise DomainError("pauli convention is defined for j = 1/2 only")
        p = from_pauli(p_template.epsilon, p_template.gamma, k)
    else:
        p = SpinParams(p_template.j, p_template.epsilon, p_template.gamma, k)
    regime = _regime_label(p.gamma, p.k)
    levels = np.sort_complex(analytic_spectrum(p))
    return [(k, idx, float(e.real), float(e.imag), regime)
            for idx, e in enumerate(levels)]


def sweep_spectrum(p_template: SpinParams, k_min: float, k_max: float,
                   n_points: int, convention: str = "spin"):
    """Closed-form level tracks on a uniform k grid.

    Returns rows ``(k, level_index, re_E, im_E, regime)``, one per
    (grid point, level), with levels in the deterministic ordering
    (ascending real part, ties by imaginary part) rather than analytic
    continuation, so tracks may swap labels at the exceptional points.

    ``convention="pauli"`` (j = 1/2 only) sweeps the two-oscillator
    parameterization: the template's epsilon and gamma are read in
    Pauli units and each grid k is converted via :func:`from_pauli`,
    which reproduces the textbook eps +/- sqrt(k**2 - gamma**2) tracks.
    """
    if not (k_min < k_max):
        raise DomainError("need k_min < k_max")
    if n_points < 2:
        raise DomainError("need at least two sweep points")
    rows = []
    for k in np.linspace(k_min, k_max, n_points):
        rows.extend(sweep_rows_at(p_template, float(k), convention))
    return rows
