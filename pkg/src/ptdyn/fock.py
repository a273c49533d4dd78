"""Truncated Fock-space operator matrices.

Hard-wall truncation to the lowest ``n_trunc`` number states: the
ladder commutator [a, a+] equals the identity except for its last
diagonal entry 1 - n_trunc, and every operator identity below holds
exactly on a leading block whose size shrinks with the operator's
bandwidth. Quadrature operators follow
a = sqrt(m*omega/2) (x + i p/(m*omega)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import DomainError

__all__ = ["FockOps", "build_fock_ops", "ladder"]


def ladder(n_trunc: int) -> np.ndarray:
    """Annihilation matrix: sqrt(k) on the superdiagonal, k = 1..n_trunc-1."""
    if n_trunc < 1:
        raise DomainError("n_trunc must be positive")
    a = np.zeros((n_trunc, n_trunc), dtype=np.complex128)
    k = np.arange(1, n_trunc)
    a[k - 1, k] = np.sqrt(k)
    return a


@dataclass(frozen=True)
class FockOps:
    """Ladder, number, quadrature and su(1,1) matrices on one truncation.

    k_plus = a+**2/2, k_minus = a**2/2 and k_zero = (n + 1/2)/2 satisfy
    [k_zero, k_pm] = +/- k_pm exactly on the leading (n_trunc - 2)
    block; the remainder is the truncation artifact.
    """

    n_trunc: int
    mass: float
    omega: float
    a: np.ndarray
    a_dag: np.ndarray
    n_op: np.ndarray
    x_op: np.ndarray
    p_op: np.ndarray
    k_plus: np.ndarray
    k_zero: np.ndarray
    k_minus: np.ndarray


def build_fock_ops(n_trunc: int, mass: float = 1.0, omega: float = 1.0) -> FockOps:
    """Build all operator matrices for one truncation dimension.

    Requires n_trunc >= 8 (smaller spaces leave no usable interior
    block) and positive mass and frequency.
    """
    if n_trunc < 8:
        raise DomainError(f"n_trunc must be at least 8, got {n_trunc}")
    if not (mass > 0.0 and omega > 0.0 and np.isfinite(mass) and np.isfinite(omega)):
        raise DomainError("mass and omega must be positive and finite")
    a = ladder(n_trunc)
    ad = a.conj().T
    n_op = ad @ a
    s = np.sqrt(2.0 * mass * omega)
    x_op = (a + ad) / s
    p_op = 1j * np.sqrt(mass * omega / 2.0) * (ad - a)
    eye = np.eye(n_trunc, dtype=np.complex128)
    return FockOps(
        n_trunc=n_trunc,
        mass=float(mass),
        omega=float(omega),
        a=a,
        a_dag=ad,
        n_op=n_op,
        x_op=x_op,
        p_op=p_op,
        k_plus=(ad @ ad) / 2.0,
        k_zero=(n_op + 0.5 * eye) / 2.0,
        k_minus=(a @ a) / 2.0,
    )
