"""Characteristic speeds of the MHD flux Jacobians and CFL time steps."""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import InvalidState
from .physics import BX, PRES, RHO, UX, UY, primitive_from_conserved

# relative size of a negative discriminant still attributed to round-off
DISCRIMINANT_RTOL = 1e-12
MAX_CFL = 0.5


class WaveSpeeds(NamedTuple):
    a: np.ndarray
    b1: np.ndarray
    b2: np.ndarray
    b3: np.ndarray
    cf: np.ndarray
    cs: np.ndarray


def _speeds(prim, gas, normal):
    prim = np.asarray(prim, dtype=float)
    rho, p = prim[RHO], prim[PRES]
    if np.any(~(rho > 0.0)) or np.any(~(p > 0.0)):
        raise InvalidState("wave speeds need rho > 0 and p > 0",
                           _where(~((rho > 0.0) & (p > 0.0))))
    sq = np.sqrt(rho)
    b = prim[BX:] / sq
    a2 = gas.gamma * p / rho
    b2 = b[0] ** 2 + b[1] ** 2 + b[2] ** 2
    s = a2 + b2
    disc = s * s - 4.0 * a2 * b[normal] ** 2
    tol = DISCRIMINANT_RTOL * s * s
    if np.any(disc < -tol):
        raise InvalidState("negative fast/slow discriminant", _where(disc < -tol))
    root = np.sqrt(np.maximum(disc, 0.0))
    cf = np.sqrt(0.5 * (s + root))
    cs = np.sqrt(np.maximum(0.5 * (s - root), 0.0))
    return WaveSpeeds(np.sqrt(a2), b[0], b[1], b[2], cf, cs)


def _where(mask):
    idx = np.argwhere(np.atleast_1d(mask))
    return tuple(idx[0]) if idx.size else None


def speeds_x(prim, gas):
    """Sound, Alfven-scaled, fast and slow speeds with x as the normal."""
    return _speeds(prim, gas, 0)


def speeds_y(prim, gas):
    return _speeds(prim, gas, 1)


def max_abs_eigen(prim, gas):
    """Largest |eigenvalue| of the x and y flux Jacobians: ``|u_n| + c_f``."""
    prim = np.asarray(prim, dtype=float)
    lx = np.abs(prim[UX]) + speeds_x(prim, gas).cf
    ly = np.abs(prim[UY]) + speeds_y(prim, gas).cf
    return lx, ly


def cfl_dt(U, gas, cfl, dx, dy, t=None, t_final=None):
    """Explicit time step for the interior lattice ``U`` (no ghost cells).

    ``dt = cfl * min(dx / lambda_x, dy / lambda_y)`` over all cells, clipped so
    that ``t + dt`` does not pass ``t_final`` when both are given.
    """
    if not 0.0 < cfl <= MAX_CFL:
        raise ValueError(f"cfl must lie in (0, {MAX_CFL}], got {cfl}")
    prim = primitive_from_conserved(U, gas)
    lx, ly = max_abs_eigen(prim, gas)
    with np.errstate(divide="ignore"):
        dt = cfl * min(np.min(dx / lx), np.min(dy / ly))
    if not np.isfinite(dt) or dt <= 0.0:
        raise InvalidState(f"degenerate time step {dt}")
    if t is not None and t_final is not None:
        dt = min(dt, t_final - t)
    return float(dt)
