"""Well-balanced unstaggered central scheme.

The evolved quantity is the deviation ``delta = U - Utilde`` from a known
steady state.  One step projects ``delta`` onto the dual lattice, advances it
there with midpoint fluxes of ``F(delta + Utilde) - F(Utilde)`` and then
projects it back, so the persistent solution lives on the main lattice only.
Whenever ``delta`` vanishes every flux difference and source term vanishes
bit for bit, which is what keeps ``Utilde`` stationary.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from . import ctm as _ctm
from .errors import SolverError
from .limiter import DEFAULT_THETA, check_theta, slopes_x, slopes_y
from .physics import BX, BY, flux_x, flux_y, source, validate_state
from .wavespeed import cfl_dt

JVP_STEP = 1e-7
CTM_MODES = ("on", "off", "auto")


def jvp(flux, U, V, gas):
    """Jacobian-vector product ``dF/dU(U) . V`` by central differences.

    The step is ``1e-7 * (1 + |U|) / (1 + |V|)`` per cell (max norms over the
    components), which keeps ``U +- eps V`` a small relative perturbation.
    """
    su = 1.0 + np.max(np.abs(U), axis=0)
    sv = 1.0 + np.max(np.abs(V), axis=0)
    eps = JVP_STEP * su / sv
    return (flux(U + eps * V, gas) - flux(U - eps * V, gas)) / (2.0 * eps)


def _quad_average(q):
    return 0.25 * ((q[:, :-1, :-1] + q[:, 1:, :-1]) + (q[:, :-1, 1:] + q[:, 1:, 1:]))


def _project(q, sx, sy):
    """Average of the piecewise-linear reconstruction over a dual cell.

    Used in both directions: main -> staggered (node k between cells k, k+1)
    and staggered -> main (cell k+1 between nodes k, k+1).
    """
    jump_x = (sx[:, 1:, :-1] - sx[:, :-1, :-1]) + (sx[:, 1:, 1:] - sx[:, :-1, 1:])
    jump_y = (sy[:, :-1, 1:] - sy[:, :-1, :-1]) + (sy[:, 1:, 1:] - sy[:, 1:, :-1])
    return _quad_average(q) - (jump_x + jump_y) / 16.0


@dataclass
class ReferenceState:
    """Steady state ``Utilde`` with everything the step reuses.

    All arrays include ghost cells.  ``dF``/``dG`` are the predictor's
    flux derivatives of ``Utilde`` and ``U_stag`` its staggered projection.
    """

    U: np.ndarray
    F: np.ndarray
    G: np.ndarray
    sx: np.ndarray
    sy: np.ndarray
    dF: np.ndarray
    dG: np.ndarray
    U_stag: np.ndarray
    theta: float

    @classmethod
    def from_state(cls, Utilde, gas, theta=DEFAULT_THETA):
        Utilde = np.array(Utilde, dtype=float)
        theta = check_theta(theta)
        validate_state(Utilde, gas)
        sx = slopes_x(Utilde, theta)
        sy = slopes_y(Utilde, theta)
        return cls(
            U=Utilde,
            F=flux_x(Utilde, gas),
            G=flux_y(Utilde, gas),
            sx=sx,
            sy=sy,
            dF=jvp(flux_x, Utilde, sx, gas),
            dG=jvp(flux_y, Utilde, sy, gas),
            U_stag=_project(Utilde, sx, sy),
            theta=theta,
        )


def validate_reference(ref, grid, gas, tol=1e-8):
    """Max-norm per component of the centred steady residual ``F_x + G_y - S``.

    Only warns when above ``tol``: the subtraction form preserves ``Utilde``
    exactly whether or not it is a discrete steady state.
    """
    validate_state(ref.U, gas)
    g = grid.ng
    F, G = ref.F, ref.G
    core = (slice(None), slice(g, g + grid.nx), slice(g, g + grid.ny))
    dFdx = (F[:, g + 1:g + grid.nx + 1, g:g + grid.ny]
            - F[:, g - 1:g + grid.nx - 1, g:g + grid.ny]) / (2.0 * grid.dx)
    dGdy = (G[:, g:g + grid.nx, g + 1:g + grid.ny + 1]
            - G[:, g:g + grid.nx, g - 1:g + grid.ny - 1]) / (2.0 * grid.dy)
    res = np.max(np.abs(dFdx + dGdy - source(ref.U[core], gas)), axis=(1, 2))
    if np.max(res) > tol:
        warnings.warn(f"reference residual {np.max(res):.3e} exceeds {tol:.1e}",
                      stacklevel=2)
    return res


def forward_project(delta, theta=DEFAULT_THETA, sx=None, sy=None):
    """Project main-lattice data onto the dual lattice (one node shorter per axis)."""
    if sx is None:
        sx = slopes_x(delta, theta)
    if sy is None:
        sy = slopes_y(delta, theta)
    return _project(delta, sx, sy)


def back_project(stag, theta=DEFAULT_THETA):
    """Project dual-lattice data back onto main cells.

    Returns a main-shaped array; the outermost ring of cells has no dual
    nodes on one side and is left at zero.
    """
    sx = slopes_x(stag, theta)
    sy = slopes_y(stag, theta)
    out = np.zeros((stag.shape[0], stag.shape[1] + 1, stag.shape[2] + 1))
    out[:, 1:-1, 1:-1] = _project(stag, sx, sy)
    return out


def predict_midpoint(delta, ref, gas, theta, dt, dx, dy):
    """First-order Taylor predictor of ``delta`` at the half step."""
    U = delta + ref.U
    dF = jvp(flux_x, U, slopes_x(U, theta), gas)
    dG = jvp(flux_y, U, slopes_y(U, theta), gas)
    rate = (-dF / dx + ref.dF / dx) + (-dG / dy + ref.dG / dy) + source(delta, gas)
    return delta + 0.5 * dt * rate


def evolve_staggered(stag_n, mid, ref, gas, dt, dx, dy):
    """Advance dual-node values with midpoint flux differences and source."""
    U = mid + ref.U
    F = flux_x(U, gas) - ref.F
    G = flux_y(U, gas) - ref.G
    dFx = (F[:, 1:, :] - F[:, :-1, :]) / dx
    dGy = (G[:, :, 1:] - G[:, :, :-1]) / dy
    flux_term = (dFx[:, :, :-1] + dFx[:, :, 1:]) + (dGy[:, :-1, :] + dGy[:, 1:, :])
    return stag_n - 0.5 * dt * flux_term + dt * _quad_average(source(mid, gas))


def fill_ghosts(delta, ref, grid, gas, bc, t, clean_div=False):
    """Return ``delta`` with ghosts derived from boundary conditions on ``U``.

    Interior values are passed through untouched; only ghost cells are
    recomputed as ``U_ghost - Utilde_ghost``.
    """
    U = delta + ref.U
    bc.apply(U, grid, gas, t, ref)
    if clean_div:
        _ctm.clean_ghost_divergence(U, grid, gas, bc.nonperiodic_sides())
        # corner ghosts must stay periodic images of the cleaned cells
        bc.wrap_periodic(U, grid)
    out = U - ref.U
    out[grid.ix] = delta[grid.ix]
    return out


@dataclass
class StepInfo:
    dt: float
    ctm_applied: bool


def step(delta, ref, grid, gas, bc, t, cfl=0.485, theta=None, ctm="off",
         t_final=None, dt=None, ctm_threshold=None):
    """Advance ``delta`` by one time step.

    Returns ``(delta_new, info)``.  ``delta_new`` carries interior values at
    the new time; its ghosts are stale until the next :func:`fill_ghosts`.
    """
    if ctm not in CTM_MODES:
        raise ValueError(f"ctm must be one of {CTM_MODES}, got {ctm!r}")
    theta = ref.theta if theta is None else check_theta(theta)
    dx, dy = grid.dx, grid.dy
    ix = grid.ix
    clean = ctm != "off"

    delta = fill_ghosts(delta, ref, grid, gas, bc, t, clean_div=clean)
    U_n = delta + ref.U
    W_n = validate_state(U_n, gas)
    if dt is None:
        dt = cfl_dt(U_n[ix], gas, cfl, dx, dy, t, t_final)

    stag_n = forward_project(delta, theta)
    mid = predict_midpoint(delta, ref, gas, theta, dt, dx, dy)
    stag = evolve_staggered(stag_n, mid, ref, gas, dt, dx, dy)
    new = back_project(stag, theta)

    out = delta.copy()
    out[ix] = new[ix]

    applied = False
    if ctm == "on" or (ctm == "auto" and _needs_ctm(out, ref, grid, gas, bc, t + dt,
                                                    ctm_threshold)):
        B_stag_n = _ctm.stagger_average(U_n[BX:BY + 1])
        W_stag = np.full_like(stag, np.nan)
        W_stag[:, 1:-1, 1:-1] = validate_state((stag + ref.U_stag)[:, 1:-1, 1:-1], gas)
        _, B_main = _ctm.ctm_correct(B_stag_n, W_n, W_stag, dt, dx, dy)
        out[(slice(BX, BY + 1),) + grid.interior] = (
            B_main[(slice(None),) + grid.interior] - ref.U[(slice(BX, BY + 1),) + grid.interior])
        applied = True

    try:
        validate_state(out[ix] + ref.U[ix], gas)
    except SolverError as exc:
        err = type(exc)(f"after step at t={t + dt:.6g}: {exc}")
        err.index = exc.index
        raise err from None
    return out, StepInfo(dt=dt, ctm_applied=applied)


def _needs_ctm(delta_new, ref, grid, gas, bc, t, threshold):
    filled = fill_ghosts(delta_new, ref, grid, gas, bc, t, clean_div=True)
    U = filled + ref.U
    div = _ctm.max_abs_div(U[BX], U[BY], grid.dx, grid.dy, grid.ng)
    if threshold is None:
        bmax = np.max(np.abs(U[(slice(BX, BY + 1),) + grid.interior]))
        threshold = 1e-10 * bmax / min(grid.dx, grid.dy)
    return div > threshold
