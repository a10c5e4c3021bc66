"""Constrained transport for the in-plane magnetic field.

B is advanced on the dual lattice with the discrete induction equation

    Bx -= dt/(2 dy) * (Omega[k, l+1] - Omega[k, l-1])
    By += dt/(2 dx) * (Omega[k+1, l] - Omega[k-1, l])

and averaged back onto cells.  The update is a discrete curl, so the centred
divergence on the dual lattice is left unchanged; with the dual field seeded
as the four-cell average of the cell field, its divergence equals the average
of the four surrounding cell divergences, and the final average carries that
property back to the cells.
"""
from __future__ import annotations

import numpy as np

from .errors import MissingGhostLayer
from .physics import (BX, BY, BZ, ENE, MX, MZ, PRES, RHO, electric_omega, energy_from_parts,
                      primitive_from_conserved)


def stagger_average(q):
    """Four-point average onto the dual lattice along the last two axes."""
    q = np.asarray(q, dtype=float)
    return 0.25 * ((q[..., :-1, :-1] + q[..., 1:, :-1]) + (q[..., :-1, 1:] + q[..., 1:, 1:]))


def _divergence(Bx, By, dx, dy):
    Bx, By = np.asarray(Bx, float), np.asarray(By, float)
    if min(Bx.shape) < 3 or Bx.shape != By.shape:
        raise MissingGhostLayer("divergence needs matching lattices with >= 3 points per axis")
    return ((Bx[2:, 1:-1] - Bx[:-2, 1:-1]) / (2.0 * dx)
            + (By[1:-1, 2:] - By[1:-1, :-2]) / (2.0 * dy))


def divergence_main(Bx, By, dx, dy):
    """Centred divergence; result drops one point per side (shape ``n-2``)."""
    return _divergence(Bx, By, dx, dy)


def divergence_staggered(Bx, By, dx, dy):
    """Same centred formula on dual-lattice nodes."""
    return _divergence(Bx, By, dx, dy)


def max_abs_div(Bx, By, dx, dy, ng=1):
    """Max |div B| over interior cells of a lattice with ``ng`` ghost layers."""
    div = divergence_main(Bx, By, dx, dy)
    g = ng - 1
    core = div[g:div.shape[0] - g, g:div.shape[1] - g] if g else div
    return float(np.max(np.abs(core)))


def ctm_correct(B_stag_n, prim_n, prim_np1_stag, dt, dx, dy):
    """Constrained-transport update of the in-plane field.

    Parameters
    ----------
    B_stag_n : array (2, n-1, m-1)
        Bx, By on dual nodes at the old time.
    prim_n : array (8, n, m)
        Cell primitives at the old time.
    prim_np1_stag : array (8, n-1, m-1)
        Dual-node primitives at the new time (NaN where unavailable).

    Returns
    -------
    B_stag_np1 : array (2, n-1, m-1)
        Corrected dual field; the outermost node ring lacks a neighbour and
        is returned unchanged.
    B_main : array (2, n, m)
        Cell field averaged from the corrected dual field, NaN on the two
        outermost cell rings where the stencil is incomplete.
    """
    B_stag_n = np.asarray(B_stag_n, dtype=float)
    if B_stag_n.shape[-2:] != tuple(s - 1 for s in prim_n.shape[-2:]):
        raise MissingGhostLayer("dual field must be one node shorter than the cell lattice")
    omega_half = 0.5 * (electric_omega(prim_np1_stag)
                        + stagger_average(electric_omega(prim_n)))
    Bx = B_stag_n[0].copy()
    By = B_stag_n[1].copy()
    Bx[:, 1:-1] -= dt / (2.0 * dy) * (omega_half[:, 2:] - omega_half[:, :-2])
    By[1:-1, :] += dt / (2.0 * dx) * (omega_half[2:, :] - omega_half[:-2, :])
    B_stag = np.stack([Bx, By])

    B_main = np.full((2,) + prim_n.shape[-2:], np.nan)
    B_main[:, 1:-1, 1:-1] = stagger_average(B_stag)
    B_main[:, :2, :] = np.nan
    B_main[:, -2:, :] = np.nan
    B_main[:, :, :2] = np.nan
    B_main[:, :, -2:] = np.nan
    return B_stag, B_main


def clean_ghost_divergence(U, grid, gas, sides=("left", "right", "bottom", "top")):
    """Reset normal ghost fields so the centred divergence vanishes on the
    interior cells and on the first ghost ring.

    After one constrained-transport step a cell's divergence is a weighted
    average of the old divergences over its 3x3 neighbourhood, so both rings
    have to be clean.  Each adjustment touches its target cell and one cell
    two layers further out only, hence the passes do not undo each other.
    Thermal pressure of modified ghost cells is kept and their energy rebuilt;
    cells whose field is unchanged are left bit for bit.
    """
    n0, n1 = U.shape[1], U.shape[2]
    g, nx, ny = grid.ng, grid.nx, grid.ny
    rx = grid.dx / grid.dy
    ry = grid.dy / grid.dx
    J, Jp, Jm = slice(1, n1 - 1), slice(2, n1), slice(0, n1 - 2)
    I, Ip, Im = slice(1, n0 - 1), slice(2, n0), slice(0, n0 - 2)
    for side in sides:
        if side not in ("left", "right", "bottom", "top"):
            raise ValueError(f"unknown side {side!r}")
        for layer in range(2):
            if side == "left":
                t = g - layer
                cells = (t - 1, J)
                new = U[BX, t + 1, J] + rx * (U[BY, t, Jp] - U[BY, t, Jm])
                comp = BX
            elif side == "right":
                t = g + nx - 1 + layer
                cells = (t + 1, J)
                new = U[BX, t - 1, J] - rx * (U[BY, t, Jp] - U[BY, t, Jm])
                comp = BX
            elif side == "bottom":
                t = g - layer
                cells = (I, t - 1)
                new = U[BY, I, t + 1] + ry * (U[BX, Ip, t] - U[BX, Im, t])
                comp = BY
            else:
                t = g + ny - 1 + layer
                cells = (I, t + 1)
                new = U[BY, I, t - 1] - ry * (U[BX, Ip, t] - U[BX, Im, t])
                comp = BY
            _replace_component(U, cells, comp, new, gas)
    return U


def _replace_component(U, cells, comp, new, gas):
    sub = U[(slice(None),) + cells]
    changed = sub[comp] != new
    if not np.any(changed):
        return
    p = primitive_from_conserved(sub, gas, check=False)[PRES]
    sub = sub.copy()
    sub[comp] = new
    energy = energy_from_parts(sub[RHO], sub[MX:MZ + 1], p, sub[BX:BZ + 1], gas)
    sub[ENE] = np.where(changed, energy, sub[ENE])
    U[(slice(None),) + cells] = sub
