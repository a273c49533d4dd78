"""Both branches of sqrt(k**2 - gamma**2) over complex k.

The two-level splitting is governed by a two-sheeted square root with
branch points at k = +gamma and k = -gamma. The positive branch here
is the product of principal roots sqrt(k - gamma) * sqrt(k + gamma),
whose only discontinuity is the finite cut joining the branch points
(the naive principal root of k**2 - gamma**2 would add a spurious cut
along the whole imaginary axis). On the real axis it agrees with
+sqrt(k**2 - gamma**2) for k > |gamma| and behaves like k at infinity,
so it is -sqrt(k**2 - gamma**2) on the opposite ray.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import DomainError

__all__ = ["BranchGrid", "branch_value", "branch_grid"]

# raw argument jumps this close to pi (or beyond) count as crossing the cut
_ARG_JUMP = np.pi - 0.6
# value must flip nearly antipodally, which screens out plain 2*pi rewraps
_FLIP_RATIO = 0.85
# pairs with values this small relative to the grid mean are passages
# through a zero of the function, not cut crossings
_MAG_FLOOR = 0.05


def branch_value(kc, gamma: float, branch: str = "positive"):
    """One branch of sqrt(kc**2 - gamma**2) at complex kc.

    ``branch`` is "positive" (cut only on the segment between the
    branch points +/-gamma) or "negative" (its entrywise negation).
    Accepts scalars or arrays.
    """
    if not np.isfinite(gamma):
        raise DomainError("gamma must be finite")
    if branch not in ("positive", "negative"):
        raise DomainError(f"unknown branch {branch!r}")
    k = np.asarray(kc, dtype=np.complex128)
    g = abs(float(gamma))
    val = np.sqrt(k - g) * np.sqrt(k + g)
    if branch == "negative":
        val = -val
    return val if val.shape else complex(val)


@dataclass(frozen=True)
class BranchGrid:
    """Sampled branch values over a rectangle of complex k.

    ``values[i, j]`` is the branch at ``re_k_axis[i] + 1j*im_k_axis[j]``;
    ``argument`` holds its phase in (-pi, pi] and ``discontinuity_mask``
    flags cells adjacent to a detected phase jump (the branch cut).
    """

    gamma: float
    branch: str
    re_k_axis: np.ndarray
    im_k_axis: np.ndarray
    values: np.ndarray
    argument: np.ndarray
    discontinuity_mask: np.ndarray
    branch_points: tuple


def _cut_mask(vals: np.ndarray, arg: np.ndarray) -> np.ndarray:
    """Flag neighbor pairs whose phase jumps across the cut.

    A genuine cut crossing flips the value almost antipodally, so the
    raw phase difference approaches pi while |v1 - v2| stays comparable
    to |v1| + |v2|. Plain 2*pi rewraps of a continuous value (raw jump
    ~ 2*pi but tiny value change) are excluded by the flip test, and
    sign flips through a simple zero of the function (values tiny on
    the grid's scale) by the magnitude floor.
    """
    mask = np.zeros(vals.shape, dtype=bool)
    floor = _MAG_FLOOR * float(np.abs(vals).mean())
    for axis in (0, 1):
        d_raw = np.abs(np.diff(arg, axis=axis))
        v1 = vals[:-1, :] if axis == 0 else vals[:, :-1]
        v2 = vals[1:, :] if axis == 0 else vals[:, 1:]
        mag = np.abs(v1) + np.abs(v2)
        flip = np.abs(v2 - v1) > _FLIP_RATIO * mag
        hit = (d_raw > _ARG_JUMP) & flip & (mag > floor)
        if axis == 0:
            mask[:-1, :] |= hit
            mask[1:, :] |= hit
        else:
            mask[:, :-1] |= hit
            mask[:, 1:] |= hit
    return mask


def branch_grid(gamma: float, re_range, im_range, resolution: int,
                branch: str = "positive") -> BranchGrid:
    """Sample one branch on a uniform grid and locate the cut.

    ``re_range`` and ``im_range`` are (min, max) pairs; ``resolution``
    points are placed along each axis. The discontinuity detector is a
    grid heuristic: it compares the phase of 4-neighbors, so the marked
    cells hug the true cut to within one grid cell at the resolutions
    used here.
    """
    if resolution < 16:
        raise DomainError("resolution must be at least 16")
    re_lo, re_hi = map(float, re_range)
    im_lo, im_hi = map(float, im_range)
    if not (re_lo < re_hi and im_lo < im_hi):
        raise DomainError("axis ranges must be nondegenerate")
    re_axis = np.linspace(re_lo, re_hi, resolution)
    im_axis = np.linspace(im_lo, im_hi, resolution)
    kk = re_axis[:, None] + 1j * im_axis[None, :]
    vals = branch_value(kk, gamma, branch)
    arg = np.angle(vals)
    g = abs(float(gamma))
    return BranchGrid(
        gamma=float(gamma),
        branch=branch,
        re_k_axis=re_axis,
        im_k_axis=im_axis,
        values=vals,
        argument=arg,
        discontinuity_mask=_cut_mask(vals, arg),
        branch_points=(complex(g), complex(-g)),
    )
