"""Coupled-mode propagation on the zigzag waveguide lattice.

Field amplitudes on the sites obey i dPsi/dZ = -M Psi with

    M[n][n]   = lam*(n + 1/2)          (index ramp)
    M[n][n-1] = alpha1*sqrt(n)          (left hopping)
    M[n][n+1] = alpha2*sqrt(n+1)        (right hopping)
    M[n][n+-2] = beta*sqrt(...)         (next-nearest hopping)

which is the generalized Swanson matrix with beta1 = beta2 = beta.
Sites below n = 0 do not exist and couplings past the last site are
dropped (hard wall). A classical fixed-step RK4 integrator propagates
the field and is validated against the exact exp(i M z) oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fock import ladder
from .linalg import DimensionError, DomainError, expm

__all__ = [
    "BlowUpError",
    "LatticeConfig",
    "LatticeTrajectory",
    "build_lattice_generator",
    "propagate_rk4",
    "propagate_oracle",
]

#: amplitude norm beyond which the integration is declared unstable
BLOWUP_NORM = 1e12


class BlowUpError(RuntimeError):
    """Trajectory norm exceeded the stability guard.

    ``last_z`` holds the last propagation distance that was still
    below the guard.
    """

    def __init__(self, message, last_z):
        super().__init__(message)
        self.last_z = last_z


@dataclass(frozen=True)
class LatticeConfig:
    """Couplings, ramp and integration grid for one lattice run."""

    lam: float
    alpha1: float
    alpha2: float
    beta: float
    n_sites: int
    z_max: float
    dz: float

    def __post_init__(self):
        for name in ("lam", "alpha1", "alpha2", "beta", "z_max", "dz"):
            if not np.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")
        if self.n_sites < 4:
            raise DomainError(f"n_sites must be at least 4, got {self.n_sites}")
        if self.dz <= 0.0:
            raise DomainError("dz must be positive")
        if self.z_max < self.dz:
            raise DomainError("z_max must be at least dz")


@dataclass(frozen=True)
class LatticeTrajectory:
    """Sampled propagation: distances, per-site amplitudes, squared norms."""

    z_samples: np.ndarray
    amplitudes: np.ndarray
    norms: np.ndarray


def build_lattice_generator(c: LatticeConfig) -> np.ndarray:
    """The coupling matrix M; i dPsi/dZ = -M Psi.

    Term order mirrors the oscillator-model builder so the two matrices
    agree entrywise (bit for bit) when beta1 = beta2 = beta.
    """
    n = c.n_sites
    a = ladder(n)
    ad = a.conj().T
    eye = np.eye(n, dtype=np.complex128)
    return (c.lam * (ad @ a + 0.5 * eye)
            + c.alpha1 * ad + c.alpha2 * a + c.beta * (ad @ ad + a @ a))


def _check_psi0(c: LatticeConfig, psi0) -> np.ndarray:
    psi = np.asarray(psi0, dtype=np.complex128)
    if psi.ndim != 1 or psi.shape[0] != c.n_sites:
        raise DimensionError(
            f"psi0 must be a vector of length n_sites={c.n_sites}")
    if not np.all(np.isfinite(psi.real)) or not np.all(np.isfinite(psi.imag)):
        raise DomainError("psi0 contains non-finite entries")
    if np.linalg.norm(psi) == 0.0:
        raise DomainError("psi0 must be a nonzero field")
    return psi


def propagate_rk4(c: LatticeConfig, psi0) -> LatticeTrajectory:
    """Integrate dPsi/dZ = i M Psi with classical fixed-step RK4.

    Samples after every step (including Z = 0). The generator is
    non-Hermitian when alpha1 != alpha2, so the norm may grow; the run
    aborts with BlowUpError once the amplitude norm passes 1e12.
    """
    psi = _check_psi0(c, psi0)
    m = build_lattice_generator(c)
    steps = int(round(c.z_max / c.dz))
    steps = max(steps, 1)
    dz = c.dz

    def f(y):
        return 1j * (m @ y)

    zs = np.empty(steps + 1)
    amps = np.empty((steps + 1, c.n_sites), dtype=np.complex128)
    norms = np.empty(steps + 1)
    zs[0] = 0.0
    amps[0] = psi
    norms[0] = float(np.vdot(psi, psi).real)
    y = psi.copy()
    for s in range(1, steps + 1):
        k1 = f(y)
        k2 = f(y + 0.5 * dz * k1)
        k3 = f(y + 0.5 * dz * k2)
        k4 = f(y + dz * k3)
        y = y + (dz / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        nrm = float(np.linalg.norm(y))
        if not np.isfinite(nrm) or nrm > BLOWUP_NORM:
            raise BlowUpError(
                f"amplitude norm {nrm:.3e} exceeded {BLOWUP_NORM:.0e} "
                f"at Z={s * dz:.6g}", last_z=(s - 1) * dz)
        zs[s] = s * dz
        amps[s] = y
        norms[s] = nrm * nrm
    return LatticeTrajectory(zs, amps, norms)


def propagate_oracle(c: LatticeConfig, psi0, z: float) -> np.ndarray:
    """Exact solution exp(i M z) psi0; the integrator's reference."""
    psi = _check_psi0(c, psi0)
    m = build_lattice_generator(c)
    return expm(1j * m * float(z)) @ psi
