"""Dense complex linear algebra kernels.

Everything in this package funnels through the four operations here:
a Pade scaling-and-squaring matrix exponential, a general complex
eigensolver (Hessenberg reduction followed by shifted QR iteration),
eigenvalue clustering with multiplicity analysis for defective
matrices, and similarity conjugation ``exp(theta*G) H exp(-theta*G)``.

Matrices are plain ``numpy.ndarray`` values with complex128 entries;
all functions are pure and never mutate their inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_EPS = float(np.finfo(np.float64).eps)
_TINY = float(np.finfo(np.float64).tiny)

#: default residual tolerance for eig_general (relative to the 1-norm)
DEFAULT_EIG_TOL = 1e-10
#: default relative tolerance below which eigenvalues join one cluster;
#: ``None`` selects the dimension-aware adaptive rule (see defect_analysis)
DEFAULT_CLUSTER_TOL = None
#: default relative tolerance for the numerical rank of (A - lambda I)
DEFAULT_RANK_TOL = 1e-9

__all__ = [
    "DimensionError",
    "DomainError",
    "NormOverflowError",
    "ConvergenceError",
    "EigenDecomposition",
    "DefectCluster",
    "DefectReport",
    "as_matrix",
    "as_square",
    "one_norm",
    "expm",
    "eig_general",
    "singular_values",
    "defect_analysis",
    "similarity_conjugate",
]


class DimensionError(ValueError):
    """Operand shapes are incompatible (non-square, mismatched, ...)."""


class DomainError(ValueError):
    """A parameter lies outside the domain an operation supports."""


class NormOverflowError(OverflowError):
    """Matrix norm too extreme for a reliable exponential."""


class ConvergenceError(RuntimeError):
    """QR iteration did not meet its residual contract.

    The partial decomposition (with ``converged=False``) is attached as
    the ``partial`` attribute so callers can inspect what was achieved.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Coerce to a 2-D complex128 array and reject non-finite entries."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise DimensionError(f"{name} must be 2-D, got ndim={m.ndim}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise DomainError(f"{name} contains non-finite entries")
    return m


def as_square(a, name: str = "matrix") -> np.ndarray:
    m = as_matrix(a, name)
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {m.shape}")
    return m


def one_norm(a) -> float:
    """Maximum absolute column sum."""
    m = np.asarray(a)
    if m.size == 0:
        return 0.0
    return float(np.abs(m).sum(axis=0).max())


# ---------------------------------------------------------------------------
# matrix exponential (Higham 2005 degree-13 Pade schedule)
# ---------------------------------------------------------------------------

_PADE_B = {
    3: (120.0, 60.0, 12.0, 1.0),
    5: (30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0),
    7: (17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0),
    9: (
        17643225600.0, 8821612800.0, 2075673600.0, 302702400.0,
        30270240.0, 2162160.0, 110880.0, 3960.0, 90.0, 1.0,
    ),
    13: (
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
        1187353796428800.0, 129060195264000.0, 10559470521600.0,
        670442572800.0, 33522128640.0, 1323241920.0, 40840800.0,
        960960.0, 16380.0, 182.0, 1.0,
    ),
}

_PADE_THETA = {
    3: 1.495585217958292e-2,
    5: 2.539398330063230e-1,
    7: 9.504178996162932e-1,
    9: 2.097847961257068e0,
    13: 5.371920351148152e0,
}

# 2**_MAX_SQUARINGS * theta_13 bounds the largest representable norm
_MAX_SQUARINGS = 64


def _pade_uv(a: np.ndarray, order: int):
    b = _PADE_B[order]
    n = a.shape[0]
    ident = np.eye(n, dtype=np.complex128)
    a2 = a @ a
    if order == 3:
        u = a @ (b[3] * a2) + b[1] * a
        v = b[2] * a2 + b[0] * ident
        return u, v
    a4 = a2 @ a2
    if order == 5:
        u = a @ (b[5] * a4 + b[3] * a2) + b[1] * a
        v = b[4] * a4 + b[2] * a2 + b[0] * ident
        return u, v
    a6 = a2 @ a4
    if order == 7:
        u = a @ (b[7] * a6 + b[5] * a4 + b[3] * a2) + b[1] * a
        v = b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident
        return u, v
    if order == 9:
        a8 = a4 @ a4
        u = a @ (b[9] * a8 + b[7] * a6 + b[5] * a4 + b[3] * a2) + b[1] * a
        v = b[8] * a8 + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident
        return u, v
    # order 13: factored form keeps the operation count at 6 products
    u = a @ (a6 @ (b[13] * a6 + b[11] * a4 + b[9] * a2)
             + b[7] * a6 + b[5] * a4 + b[3] * a2) + b[1] * a
    v = (a6 @ (b[12] * a6 + b[10] * a4 + b[8] * a2)
         + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident)
    return u, v


def expm(a) -> np.ndarray:
    """Matrix exponential ``e**A`` by Pade approximation with scaling and squaring.

    Parameters
    ----------
    a : array_like
        Square complex matrix with finite entries.

    Returns
    -------
    numpy.ndarray
        ``exp(A)``, same shape as the input.

    Raises
    ------
    DimensionError
        If the input is not square.
    NormOverflowError
        If the norm is so large that scaling would need more than
        2**64 squarings.
    """
    m = as_square(a, "expm operand")
    n = m.shape[0]
    if n == 0:
        return np.zeros((0, 0), dtype=np.complex128)
    nrm = one_norm(m)
    if nrm == 0.0:
        return np.eye(n, dtype=np.complex128)

    for order in (3, 5, 7, 9):
        if nrm <= _PADE_THETA[order]:
            u, v = _pade_uv(m, order)
            return np.linalg.solve(v - u, v + u)

    s = 0
    if nrm > _PADE_THETA[13]:
        s = int(np.ceil(np.log2(nrm / _PADE_THETA[13])))
        if s > _MAX_SQUARINGS:
            raise NormOverflowError(
                f"matrix norm {nrm:.3e} needs {s} squarings (max {_MAX_SQUARINGS})"
            )
        m = m * (2.0 ** (-s))
    u, v = _pade_uv(m, 13)
    r = np.linalg.solve(v - u, v + u)
    for _ in range(s):
        r = r @ r
    return r


# ---------------------------------------------------------------------------
# general complex eigendecomposition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EigenDecomposition:
    """Full complex eigendecomposition with a residual certificate.

    ``eigenvalues`` are sorted ascending by real part with ties broken
    by imaginary part, ``eigenvectors`` holds the matching unit-norm
    column vectors, and ``max_residual`` is the largest 2-norm of
    ``A v - lambda v`` over the pairs.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    converged: bool
    max_residual: float = 0.0


def _hessenberg(a: np.ndarray):
    """Unitary reduction to upper Hessenberg form; returns (H, Q)."""
    n = a.shape[0]
    h = a.astype(np.complex128, copy=True)
    q = np.eye(n, dtype=np.complex128)
    for k in range(n - 2):
        x = h[k + 1:, k]
        nx = np.linalg.norm(x)
        if nx <= _TINY:
            h[k + 2:, k] = 0.0
            continue
        v = x.copy()
        alpha = v[0]
        phase = alpha / abs(alpha) if abs(alpha) > 0.0 else 1.0
        v[0] += phase * nx
        nv = np.linalg.norm(v)
        if nv <= _TINY:
            continue
        v = v / nv
        h[k + 1:, k:] -= 2.0 * np.outer(v, v.conj() @ h[k + 1:, k:])
        h[:, k + 1:] -= 2.0 * np.outer(h[:, k + 1:] @ v, v.conj())
        q[:, k + 1:] -= 2.0 * np.outer(q[:, k + 1:] @ v, v.conj())
        h[k + 2:, k] = 0.0
    return h, q


def _rot(f, h):
    """2x2 unitary U with U @ [f, h] = [r, 0]; None means identity."""
    nrm = np.hypot(abs(f), abs(h))
    if nrm <= _TINY or abs(h) == 0.0:
        return None
    return np.array(
        [[np.conj(f) / nrm, np.conj(h) / nrm], [-h / nrm, f / nrm]],
        dtype=np.complex128,
    )


def _wilkinson_shift(a, b, c, d):
    """Eigenvalue of [[a, b], [c, d]] closer to d."""
    delta = 0.5 * (a - d)
    disc = np.sqrt(delta * delta + b * c)
    den1 = delta + disc
    den2 = delta - disc
    den = den1 if abs(den1) >= abs(den2) else den2
    if abs(den) <= _TINY:
        return d
    return d - b * c / den


def _apply_left(h, rots, lo, col_start):
    """Apply stored window rotations (left factor) to trailing columns."""
    for i, u in rots:
        if u is None:
            continue
        h[lo + i:lo + i + 2, col_start:] = u @ h[lo + i:lo + i + 2, col_start:]


def _qr_schur(a: np.ndarray, budget_per_n: int = 40):
    """Schur form of a square complex matrix: A = Q T Q^H.

    Returns (T, Q, ok); ``ok`` is False when the iteration budget ran
    out before full deflation.
    """
    n = a.shape[0]
    h, q = _hessenberg(a)
    if n <= 1:
        return h, q, True
    hnorm = one_norm(h)
    if hnorm == 0.0:
        return h, q, True

    budget = budget_per_n * n + 100
    used = 0
    stagnation = 0
    hi = n - 1
    while hi > 0:
        # deflation scan: zero negligible subdiagonals in the active part
        l = hi
        while l > 0:
            tst = abs(h[l - 1, l - 1]) + abs(h[l, l])
            if tst == 0.0:
                tst = hnorm
            if abs(h[l, l - 1]) <= max(_EPS * tst, _TINY * n):
                h[l, l - 1] = 0.0
                break
            l -= 1
        if l == hi:
            hi -= 1
            stagnation = 0
            continue

        if used >= budget:
            return h, q, False
        used += 1
        stagnation += 1

        if l == hi - 1:
            # direct 2x2 deflation via an eigenvector rotation
            aa, bb = h[l, l], h[l, hi]
            cc, dd = h[hi, l], h[hi, hi]
            mu = _wilkinson_shift(aa, bb, cc, dd)
            v1, v2 = bb, mu - aa
            if np.hypot(abs(v1), abs(v2)) <= _TINY * hnorm:
                v1, v2 = mu - dd, cc
            nv = np.hypot(abs(v1), abs(v2))
            if nv > _TINY:
                g = np.array([[v1 / nv, -np.conj(v2) / nv],
                              [v2 / nv, np.conj(v1) / nv]], dtype=np.complex128)
                h[l:hi + 1, :] = g.conj().T @ h[l:hi + 1, :]
                h[:, l:hi + 1] = h[:, l:hi + 1] @ g
                q[:, l:hi + 1] = q[:, l:hi + 1] @ g
            h[hi, l] = 0.0
            hi = l
            if hi == 0:
                break
            stagnation = 0
            continue

        if stagnation > 0 and stagnation % 10 == 0:
            # exceptional shift to break symmetric stalls
            mu = h[hi, hi] + 0.75 * abs(h[hi, hi - 1])
        else:
            mu = _wilkinson_shift(h[hi - 1, hi - 1], h[hi - 1, hi],
                                  h[hi, hi - 1], h[hi, hi])

        # explicit shifted QR sweep on the window [l, hi]
        w = hi - l + 1
        v = h[l:hi + 1, l:hi + 1].copy()
        v[np.diag_indices(w)] -= mu
        rots = []
        for i in range(w - 1):
            u = _rot(v[i, i], v[i + 1, i])
            rots.append((i, u))
            if u is not None:
                v[i:i + 2, i:] = u @ v[i:i + 2, i:]
                v[i + 1, i] = 0.0
        for i, u in rots:
            if u is not None:
                v[:min(i + 2, w - 1) + 1, i:i + 2] = (
                    v[:min(i + 2, w - 1) + 1, i:i + 2] @ u.conj().T
                )
        v[np.diag_indices(w)] += mu
        h[l:hi + 1, l:hi + 1] = v
        if hi + 1 < n:
            _apply_left(h, rots, l, hi + 1)
        for i, u in rots:
            if u is None:
                continue
            cols = slice(l + i, l + i + 2)
            if l > 0:
                h[:l, cols] = h[:l, cols] @ u.conj().T
            q[:, cols] = q[:, cols] @ u.conj().T

    # enforce exact triangularity of the returned Schur factor
    h[np.tril_indices(n, -1)] = 0.0
    return h, q, True


def _triangular_eigenvectors(t: np.ndarray, q: np.ndarray):
    """Eigenvectors of A = Q T Q^H by back substitution in the Schur factor."""
    n = t.shape[0]
    tnorm = one_norm(t)
    floor = _EPS * max(tnorm, 1.0)
    vecs = np.empty((n, n), dtype=np.complex128)
    for k in range(n):
        lam = t[k, k]
        y = np.zeros(k + 1, dtype=np.complex128)
        y[k] = 1.0
        for i in range(k - 1, -1, -1):
            rhs = -(t[i, i + 1:k + 1] @ y[i + 1:k + 1])
            d = t[i, i] - lam
            if abs(d) < floor:
                d = floor if d == 0.0 else d / abs(d) * floor
            y[i] = rhs / d
            ay = abs(y[i])
            if ay > 1e120:
                y /= ay
        v = q[:, :k + 1] @ y
        nv = np.linalg.norm(v)
        vecs[:, k] = v / nv if nv > 0.0 else q[:, k]
    return vecs


def eig_general(a, tol: float = DEFAULT_EIG_TOL) -> EigenDecomposition:
    """Eigenvalues and eigenvectors of a general complex square matrix.

    Hessenberg reduction followed by shifted QR iteration yields a Schur
    form; eigenvectors come from back substitution in the triangular
    factor. The result is ordered ascending by real part, ties broken by
    imaginary part, and every pair is certified to satisfy
    ``norm(A v - lambda v) <= tol * one_norm(A)``.

    Raises
    ------
    ConvergenceError
        If the iteration cap is exhausted or the residual contract
        fails; the exception carries the partial decomposition.
    """
    m = as_square(a, "eig operand")
    if tol <= 0.0:
        raise DomainError("tol must be positive")
    n = m.shape[0]
    if n == 0:
        return EigenDecomposition(
            np.zeros(0, dtype=np.complex128),
            np.zeros((0, 0), dtype=np.complex128), True, 0.0)

    t, q, ok = _qr_schur(m)
    vals = np.diag(t).copy()
    vecs = _triangular_eigenvectors(t, q)

    order = np.lexsort((vals.imag, vals.real))
    vals = vals[order]
    vecs = vecs[:, order]

    resid = m @ vecs - vecs * vals[np.newaxis, :]
    max_resid = float(np.linalg.norm(resid, axis=0).max()) if n else 0.0
    bound = tol * max(one_norm(m), _TINY)
    converged = ok and max_resid <= bound
    dec = EigenDecomposition(vals, vecs, converged, max_resid)
    if not converged:
        reason = "iteration budget exhausted" if not ok else (
            f"residual {max_resid:.3e} exceeds {bound:.3e}")
        raise ConvergenceError(f"eigensolver did not converge: {reason}", partial=dec)
    return dec


def singular_values(a) -> np.ndarray:
    """Singular values (descending) via the Hermitian dilation [[0, A], [A^H, 0]].

    The dilation keeps small singular values first-order accurate, which
    the rank decisions in defect_analysis rely on.
    """
    m = as_matrix(a, "singular_values operand")
    n1, n2 = m.shape
    k = min(n1, n2)
    if k == 0:
        return np.zeros(0)
    b = np.zeros((n1 + n2, n1 + n2), dtype=np.complex128)
    b[:n1, n1:] = m
    b[n1:, :n1] = m.conj().T
    dec = eig_general(b, tol=1e-8)
    w = np.sort(dec.eigenvalues.real)[::-1]
    return np.maximum(w[:k], 0.0)


# ---------------------------------------------------------------------------
# defectiveness analysis
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DefectCluster:
    """One eigenvalue cluster: representative value and multiplicities."""

    eigenvalue: complex
    algebraic: int
    geometric: int
    radius: float


@dataclass(frozen=True)
class DefectReport:
    clusters: tuple
    is_defective: bool


def _cluster_indices(vals: np.ndarray, tau: float):
    """Single-linkage clustering of complex points at threshold tau."""
    n = len(vals)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(vals[i] - vals[j]) <= tau:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def defect_analysis(a, cluster_tol: float | None = DEFAULT_CLUSTER_TOL,
                    rank_tol: float = DEFAULT_RANK_TOL) -> DefectReport:
    """Cluster the spectrum and compare algebraic vs geometric multiplicity.

    Eigenvalues within ``cluster_tol * one_norm(A)`` of each other
    (single linkage) form one cluster. A backward-stable eigensolver
    scatters a defective eigenvalue of Jordan size m over a disc of
    radius ~ eps**(1/m) * norm, so the default ``cluster_tol=None``
    uses the dimension-aware rule ``max(1e-7, 4 * eps**(1/n))``.

    Geometric multiplicity of a cluster is ``dim - rank(A - rep*I)``
    where the rank threshold is ``max(rank_tol * norm, 2 * radius)``;
    widening by the cluster radius keeps near-degenerate normal pairs
    from being misread as defective.
    """
    m = as_square(a, "defect operand")
    n = m.shape[0]
    if cluster_tol is not None and cluster_tol <= 0.0:
        raise DomainError("cluster_tol must be positive")
    if rank_tol <= 0.0:
        raise DomainError("rank_tol must be positive")
    dec = eig_general(m)
    scale = max(one_norm(m), _TINY)
    rel = cluster_tol if cluster_tol is not None else max(1e-7, 4.0 * _EPS ** (1.0 / n))
    tau = rel * scale

    clusters = []
    defective = False
    for idx in _cluster_indices(dec.eigenvalues, tau):
        vals = dec.eigenvalues[idx]
        rep = complex(vals.mean())
        radius = float(np.abs(vals - rep).max()) if len(vals) else 0.0
        alg = len(idx)
        thresh = max(rank_tol * scale, 2.0 * radius)
        sv = singular_values(m - rep * np.eye(n))
        rank = int(np.count_nonzero(sv > thresh))
        geo = n - rank
        geo = max(1, min(geo, alg))
        if geo < alg:
            defective = True
        clusters.append(DefectCluster(rep, alg, geo, radius))
    clusters.sort(key=lambda c: (c.eigenvalue.real, c.eigenvalue.imag))
    return DefectReport(tuple(clusters), defective)


def similarity_conjugate(h, g, theta) -> np.ndarray:
    """Conjugation ``exp(theta*G) @ H @ exp(-theta*G)``.

    The result is similar to H, hence isospectral up to floating-point
    error; no unitarity of the factors is assumed.
    """
    hm = as_square(h, "H")
    gm = as_square(g, "G")
    if hm.shape != gm.shape:
        raise DimensionError(
            f"H and G must share a dimension, got {hm.shape} vs {gm.shape}")
    th = complex(theta)
    if th == 0.0:
        return hm.copy()
    fwd = expm(th * gm)
    bwd = expm(-th * gm)
    return fwd @ hm @ bwd
