"""State algebra for ideal MHD with a vertical gravitational potential.

All functions act on arrays whose leading axis holds the eight components,
so a single state has shape ``(8,)`` and a lattice ``(8, nx, ny)``.

Conserved layout: ``(rho, rho*u1, rho*u2, rho*u3, E, B1, B2, B3)``.
Primitive layout: ``(rho, u1, u2, u3, p, B1, B2, B3)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidState, NonpositiveDensity, NonpositivePressure

NVAR = 8
RHO, MX, MY, MZ, ENE, BX, BY, BZ = range(NVAR)
# primitive slots that differ from the conserved layout
UX, UY, UZ, PRES = MX, MY, MZ, ENE

CONSERVED_NAMES = ("rho", "mom1", "mom2", "mom3", "E", "B1", "B2", "B3")
PRIMITIVE_NAMES = ("rho", "u1", "u2", "u3", "p", "B1", "B2", "B3")


@dataclass(frozen=True)
class GasModel:
    """Ratio of specific heats and gravitational acceleration.

    The potential is fixed to ``phi_x = 0``, ``phi_y = g``.
    """

    gamma: float = 5.0 / 3.0
    g: float = 0.0

    def __post_init__(self):
        if not self.gamma > 1.0:
            raise ValueError(f"gamma must exceed 1, got {self.gamma}")
        if self.g < 0.0:
            raise ValueError(f"g must be non-negative, got {self.g}")


def _first_bad(mask):
    idx = np.argwhere(mask)
    return tuple(idx[0]) if idx.size else None


def check_valid(rho, p, offset=(0, 0)):
    """Raise if any density or pressure is non-positive (or NaN)."""
    bad = ~(rho > 0.0)
    if np.any(bad):
        idx = _first_bad(np.atleast_1d(bad))
        raise NonpositiveDensity("non-positive density",
                                 _shift(idx, offset))
    bad = ~(p > 0.0)
    if np.any(bad):
        idx = _first_bad(np.atleast_1d(bad))
        raise NonpositivePressure("non-positive pressure",
                                  _shift(idx, offset))


def _shift(idx, offset):
    if idx is None:
        return None
    return tuple(i + o for i, o in zip(idx, offset)) + tuple(idx[len(offset):])


def total_energy(prim, gas):
    """E = p/(gamma-1) + rho|u|^2/2 + |B|^2/2."""
    prim = np.asarray(prim, dtype=float)
    rho = prim[RHO]
    u2 = prim[UX] ** 2 + prim[UY] ** 2 + prim[UZ] ** 2
    b2 = prim[BX] ** 2 + prim[BY] ** 2 + prim[BZ] ** 2
    return prim[PRES] / (gas.gamma - 1.0) + 0.5 * rho * u2 + 0.5 * b2


def energy_from_parts(rho, mom, p, B, gas):
    """Total energy from density, momentum vector, pressure and field."""
    kin = 0.5 * (mom[0] ** 2 + mom[1] ** 2 + mom[2] ** 2) / rho
    return p / (gas.gamma - 1.0) + kin + 0.5 * (B[0] ** 2 + B[1] ** 2 + B[2] ** 2)


def conserved_from_primitive(prim, gas):
    prim = np.asarray(prim, dtype=float)
    U = np.empty_like(prim)
    rho = prim[RHO]
    U[RHO] = rho
    U[MX] = rho * prim[UX]
    U[MY] = rho * prim[UY]
    U[MZ] = rho * prim[UZ]
    U[ENE] = total_energy(prim, gas)
    U[BX:] = prim[BX:]
    return U


def primitive_from_conserved(U, gas, check=True, offset=(0, 0)):
    """Invert the conserved variables.

    Raises :class:`NonpositiveDensity` / :class:`NonpositivePressure` with the
    first offending lattice index (shifted by ``offset``) unless ``check`` is
    false.
    """
    U = np.asarray(U, dtype=float)
    rho = U[RHO]
    if check and np.any(~(rho > 0.0)):
        raise NonpositiveDensity("non-positive density",
                                 _shift(_first_bad(np.atleast_1d(~(rho > 0.0))), offset))
    W = np.empty_like(U)
    W[RHO] = rho
    W[UX] = U[MX] / rho
    W[UY] = U[MY] / rho
    W[UZ] = U[MZ] / rho
    kin = 0.5 * (U[MX] * W[UX] + U[MY] * W[UY] + U[MZ] * W[UZ])
    mag = 0.5 * (U[BX] ** 2 + U[BY] ** 2 + U[BZ] ** 2)
    W[PRES] = (gas.gamma - 1.0) * (U[ENE] - kin - mag)
    W[BX:] = U[BX:]
    if check:
        check_valid(rho, W[PRES], offset)
    return W


def pressure_tensor(prim):
    """Total (thermal + magnetic) pressure tensor, shape ``(3, 3, ...)``.

    Diagonal ``p + (Bj^2 + Bk^2 - Bi^2)/2``, off-diagonal ``-Bi*Bj``.
    """
    prim = np.asarray(prim, dtype=float)
    B = prim[BX:BZ + 1]
    p = prim[PRES]
    ptot = p + 0.5 * (B[0] ** 2 + B[1] ** 2 + B[2] ** 2)
    Pi = np.empty((3, 3) + p.shape)
    for i in range(3):
        for j in range(3):
            Pi[i, j] = -B[i] * B[j]
        Pi[i, i] += ptot
    return Pi


def _flux(U, W, axis):
    # axis 0 -> x, 1 -> y
    rho, E = U[RHO], U[ENE]
    u = W[UX:UZ + 1]
    B = W[BX:BZ + 1]
    p = W[PRES]
    un, bn = u[axis], B[axis]
    ptot = p + 0.5 * (B[0] ** 2 + B[1] ** 2 + B[2] ** 2)
    udotb = u[0] * B[0] + u[1] * B[1] + u[2] * B[2]
    F = np.empty_like(U)
    F[RHO] = rho * un
    for k in range(3):
        F[MX + k] = rho * un * u[k] - bn * B[k]
    F[MX + axis] += ptot
    F[ENE] = (E + ptot) * un - bn * udotb
    for k in range(3):
        F[BX + k] = un * B[k] - u[k] * bn
    # exact zero on the normal component, not a round-off residue
    F[BX + axis] = 0.0
    return F


def flux_x(U, gas, offset=(0, 0)):
    """x-direction physical flux F(U)."""
    U = np.asarray(U, dtype=float)
    return _flux(U, primitive_from_conserved(U, gas, offset=offset), 0)


def flux_y(U, gas, offset=(0, 0)):
    """y-direction physical flux G(U)."""
    U = np.asarray(U, dtype=float)
    return _flux(U, primitive_from_conserved(U, gas, offset=offset), 1)


def source(U, gas):
    """Gravity source ``(0, 0, -rho g, 0, -rho u2 g, 0, 0, 0)``; linear in U."""
    U = np.asarray(U, dtype=float)
    S = np.zeros_like(U)
    S[MY] = -gas.g * U[RHO]
    S[ENE] = -gas.g * U[MY]
    return S


def electric_omega(prim):
    """Out-of-plane electric field ``-u1*B2 + u2*B1``."""
    prim = np.asarray(prim, dtype=float)
    return -prim[UX] * prim[BY] + prim[UY] * prim[BX]


def validate_state(U, gas, offset=(0, 0)):
    """Positivity check of a conserved lattice; returns the primitives."""
    W = primitive_from_conserved(U, gas, offset=offset)
    bad = ~np.all(np.isfinite(W), axis=0)
    if np.any(bad):
        raise InvalidState("non-finite state",
                           _shift(_first_bad(np.atleast_1d(bad)), offset))
    return W
