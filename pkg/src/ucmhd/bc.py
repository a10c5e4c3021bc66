"""Ghost-cell boundary conditions on the total conserved state.

Every ``apply_*`` function writes ghost cells only and works in place on an
``(8, nx + 2 ng, ny + 2 ng)`` lattice.  :class:`BoundaryConfig` applies the
y-sides first and the x-sides second, so corners end up with the x-side rule.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ZeroFieldInPiston
from .physics import (BX, BZ, ENE, MX, MY, MZ, PRES, RHO, energy_from_parts,
                      primitive_from_conserved)

KINDS = ("zero-gradient", "periodic", "steady-state", "hydrostatic",
         "piston-hydro", "piston-mhd")
SIDES = ("left", "right", "bottom", "top")
PISTON_OMEGA = 6.0 * np.pi


def _ghost_index(grid, side, layer):
    """Lattice index of ghost ``layer`` (0 = adjacent to the interior)."""
    g = grid.ng
    if side == "left":
        return g - 1 - layer
    if side == "right":
        return g + grid.nx + layer
    if side == "bottom":
        return g - 1 - layer
    if side == "top":
        return g + grid.ny + layer
    raise ValueError(f"unknown side {side!r}")


def _edge_index(grid, side):
    g = grid.ng
    return {"left": g, "bottom": g, "right": g + grid.nx - 1, "top": g + grid.ny - 1}[side]


def _take(U, side, k):
    if side in ("left", "right"):
        return U[:, k, :]
    return U[:, :, k]


def _put(U, side, k, value):
    if side in ("left", "right"):
        U[:, k, :] = value
    else:
        U[:, :, k] = value


def apply_zero_gradient(U, grid, side):
    """Copy the nearest interior line into every ghost line of ``side``."""
    edge = _take(U, side, _edge_index(grid, side)).copy()
    for layer in range(grid.ng):
        _put(U, side, _ghost_index(grid, side, layer), edge)
    return U


def apply_periodic_x(U, grid):
    g, nx = grid.ng, grid.nx
    U[:, :g, :] = U[:, nx:nx + g, :]
    U[:, g + nx:, :] = U[:, g:2 * g, :]
    return U


def apply_periodic_y(U, grid):
    g, ny = grid.ng, grid.ny
    U[:, :, :g] = U[:, :, ny:ny + g]
    U[:, :, g + ny:] = U[:, :, g:2 * g]
    return U


def apply_steady_state(U, grid, ref, side):
    """Ghost cells of ``side`` take the reference state's ghost values."""
    Ut = ref.U if hasattr(ref, "U") else ref
    for layer in range(grid.ng):
        k = _ghost_index(grid, side, layer)
        _put(U, side, k, _take(Ut, side, k))
    return U


def _hydrostatic_layers(U, grid, gas, H, side):
    """Exponential extrapolation of rho, momentum and p; B copied; E rebuilt.

    Yields ``(k, p)`` for each ghost line, the caller may still override
    the momentum before the energy is rebuilt.
    """
    sign = 1.0 if side == "bottom" else -1.0
    factor = np.exp(sign * grid.dy / H) if np.isfinite(H) else 1.0
    prev = _edge_index(grid, side)
    p_prev = primitive_from_conserved(U[:, :, prev], gas)[PRES]
    for layer in range(grid.ng):
        k = _ghost_index(grid, side, layer)
        U[RHO, :, k] = U[RHO, :, prev] * factor
        U[MX:MZ + 1, :, k] = U[MX:MZ + 1, :, prev] * factor
        U[BX:, :, k] = U[BX:, :, prev]
        p = p_prev * factor
        yield k, p
        U[ENE, :, k] = energy_from_parts(U[RHO, :, k], U[MX:MZ + 1, :, k], p,
                                         U[BX:, :, k], gas)
        prev, p_prev = k, p


def apply_hydrostatic_y(U, grid, gas, H, side):
    """Scale-height extrapolation of an isothermal atmosphere.

    Bottom ghosts grow by ``exp(dy/H)`` per layer, top ghosts shrink by
    ``exp(-dy/H)``; ``H = inf`` degenerates to zero gradient.
    """
    if side not in ("bottom", "top"):
        raise ValueError("hydrostatic extrapolation acts on bottom/top only")
    if not H > 0:
        raise ValueError(f"scale height must be positive, got {H}")
    for _ in _hydrostatic_layers(U, grid, gas, H, side):
        pass
    return U


def piston_velocity_hydro(x, c, t, x_c=1.9):
    return np.exp(-100.0 * (x - x_c) ** 2) * c * np.sin(PISTON_OMEGA * t)


def apply_piston_hydro(U, grid, gas, H, c, t, x_c=1.9):
    """Bottom ghosts: hydrostatic extrapolation with a Gaussian vertical piston."""
    u2 = piston_velocity_hydro(grid.x, c, t, x_c)
    for k, _p in _hydrostatic_layers(U, grid, gas, H, "bottom"):
        U[MY, :, k] = U[RHO, :, k] * u2
    return U


def apply_piston_mhd(U, grid, gas, H, c, t, window=(0.95, 1.05)):
    """Bottom ghosts: hydrostatic extrapolation, velocity along the local
    field direction inside ``window`` and at rest outside it."""
    active = (grid.x >= window[0]) & (grid.x <= window[1])
    amp = c * np.sin(PISTON_OMEGA * t)
    for k, _p in _hydrostatic_layers(U, grid, gas, H, "bottom"):
        B = U[BX:, :, k]
        bmag = np.sqrt(B[0] ** 2 + B[1] ** 2 + B[2] ** 2)
        if np.any(bmag[active] == 0.0):
            raise ZeroFieldInPiston("piston direction undefined where |B| = 0",
                                    (int(np.argmax(active & (bmag == 0.0))), k))
        with np.errstate(divide="ignore", invalid="ignore"):
            u = np.where(active, B / bmag * amp, 0.0)
        U[MX:MZ + 1, :, k] = U[RHO, :, k] * u
    return U


@dataclass
class BoundaryConfig:
    """Boundary kind per side plus the parameters the kinds need.

    ``c`` is the piston amplitude, ``x_c`` the hydrodynamic piston centre,
    ``H`` the scale height used by the hydrostatic and piston kinds.
    """

    left: str = "zero-gradient"
    right: str = "zero-gradient"
    bottom: str = "zero-gradient"
    top: str = "zero-gradient"
    c: float = 0.0
    x_c: float = 1.9
    H: float = np.inf
    window: tuple = (0.95, 1.05)

    def __post_init__(self):
        for side in SIDES:
            kind = getattr(self, side)
            if kind not in KINDS:
                raise ValueError(f"unknown boundary kind {kind!r} on {side}")
            if kind.startswith("piston") and side != "bottom":
                raise ValueError("piston boundaries are only defined at the bottom")
            if kind == "hydrostatic" and side in ("left", "right"):
                raise ValueError("hydrostatic extrapolation is vertical only")
        for a, b in (("left", "right"), ("bottom", "top")):
            if (getattr(self, a) == "periodic") != (getattr(self, b) == "periodic"):
                raise ValueError(f"periodic must be set on both {a} and {b}")
        uses_h = {self.bottom, self.top} & {"hydrostatic", "piston-hydro", "piston-mhd"}
        if uses_h and not self.H > 0:
            raise ValueError("scale height H must be positive")

    def nonperiodic_sides(self):
        return tuple(s for s in SIDES if getattr(self, s) != "periodic")

    def static(self):
        """Same configuration with the pistons switched off."""
        return BoundaryConfig(self.left, self.right, self.bottom, self.top,
                              0.0, self.x_c, self.H, self.window)

    def apply(self, U, grid, gas, t=0.0, ref=None):
        for side in ("bottom", "top"):
            self._apply_side(U, grid, gas, t, ref, side)
        if self.bottom == "periodic":
            apply_periodic_y(U, grid)
        for side in ("left", "right"):
            self._apply_side(U, grid, gas, t, ref, side)
        if self.left == "periodic":
            apply_periodic_x(U, grid)
        return U

    def wrap_periodic(self, U, grid):
        """Re-copy periodic ghosts, e.g. after other ghost cells were edited."""
        if self.bottom == "periodic":
            apply_periodic_y(U, grid)
        if self.left == "periodic":
            apply_periodic_x(U, grid)
        return U

    def _apply_side(self, U, grid, gas, t, ref, side):
        kind = getattr(self, side)
        if kind == "zero-gradient":
            apply_zero_gradient(U, grid, side)
        elif kind == "steady-state":
            if ref is None:
                raise ValueError("steady-state boundaries need a reference state")
            apply_steady_state(U, grid, ref, side)
        elif kind == "hydrostatic":
            apply_hydrostatic_y(U, grid, gas, self.H, side)
        elif kind == "piston-hydro":
            apply_piston_hydro(U, grid, gas, self.H, self.c, t, self.x_c)
        elif kind == "piston-mhd":
            apply_piston_mhd(U, grid, gas, self.H, self.c, t, self.window)
