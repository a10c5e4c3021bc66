"""MC-theta slope limiting of lattice data."""
from __future__ import annotations

import numpy as np

from .errors import MissingGhostLayer

DEFAULT_THETA = 1.5


def check_theta(theta):
    if not 1.0 <= theta <= 2.0:
        raise ValueError(f"theta must lie in [1, 2], got {theta}")
    return float(theta)


def minmod3(a, b, c):
    """sign(a) * min(|a|, |b|, |c|) when all signs agree, else 0."""
    a, b, c = np.asarray(a, float), np.asarray(b, float), np.asarray(c, float)
    # sign tests by comparison; products of tiny slopes underflow to zero
    same = ((a > 0.0) & (b > 0.0) & (c > 0.0)) | ((a < 0.0) & (b < 0.0) & (c < 0.0))
    m = np.minimum(np.abs(a), np.minimum(np.abs(b), np.abs(c)))
    out = np.where(same, np.copysign(m, a), 0.0)
    return out if out.ndim else float(out)


def limited_slope(left, center, right, theta=DEFAULT_THETA):
    """Undivided MC-theta slope from three consecutive values."""
    left, center, right = (np.asarray(v, float) for v in (left, center, right))
    return minmod3(theta * (center - left), 0.5 * (right - left),
                   theta * (right - center))


def _slopes(q, theta, axis):
    # axis counts from the lattice axes, component axis (if any) excluded
    ax = q.ndim - 2 + axis if q.ndim >= 2 else axis
    n = q.shape[ax]
    if n < 3:
        raise MissingGhostLayer(f"need >= 3 points along axis {axis}, got {n}")
    lo = [slice(None)] * q.ndim
    mid = [slice(None)] * q.ndim
    hi = [slice(None)] * q.ndim
    lo[ax], mid[ax], hi[ax] = slice(0, -2), slice(1, -1), slice(2, None)
    out = np.zeros_like(q, dtype=float)
    out[tuple(mid)] = limited_slope(q[tuple(lo)], q[tuple(mid)], q[tuple(hi)], theta)
    return out


def slopes_x(q, theta=DEFAULT_THETA):
    """Limited x-slopes of a lattice ``(..., nx, ny)``.

    The first and last x-lines have no neighbour on one side and are returned
    as zero; callers treat them as ghost data.
    """
    return _slopes(np.asarray(q, float), theta, 0)


def slopes_y(q, theta=DEFAULT_THETA):
    return _slopes(np.asarray(q, float), theta, 1)
