"""Initial data, reference states and defaults of the five test problems."""
from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .bc import BoundaryConfig
from .ctm import divergence_main
from .grid import Grid
from .physics import (BX, BY, BZ, PRES, UX, UY, UZ, GasModel, conserved_from_primitive,
                      primitive_from_conserved, validate_state)
from .scheme import ReferenceState

CASES = ("brio-wu", "four-state", "vortex", "hydro-atmosphere", "mhd-atmosphere")

# isothermal atmosphere
P0 = 1.13
G_ATM = 2.74
H_ATM = 0.158
RHO0 = P0 / (G_ATM * H_ATM)

MU_ZERO = 1e-8


@dataclass
class CaseConfig:
    name: str
    domain: tuple
    nx: int
    ny: int
    t_final: float
    gamma: float
    g: float = 0.0
    cfl: float = 0.485
    theta: float = 1.5
    ctm: str = "off"
    bc: BoundaryConfig = field(default_factory=BoundaryConfig)
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.t_final > 0:
            raise ValueError("t_final must be positive")
        x0, x1, y0, y1 = self.domain
        if not (x1 > x0 and y1 > y0):
            raise ValueError("degenerate domain")


@dataclass
class Case:
    """A ready-to-run problem: grid, gas, initial total state and reference."""

    config: CaseConfig
    grid: Grid
    gas: GasModel
    U0: np.ndarray
    ref: ReferenceState

    @property
    def delta0(self):
        return self.U0 - self.ref.U


def _assemble(cfg, prim, prim_ref=None):
    grid = Grid(cfg.nx, cfg.ny, *cfg.domain)
    gas = GasModel(cfg.gamma, cfg.g)
    U0 = conserved_from_primitive(prim, gas)
    Ut = U0.copy() if prim_ref is None else conserved_from_primitive(prim_ref, gas)
    cfg.bc.static().apply(Ut, grid, gas, 0.0, Ut)
    if prim_ref is None:
        U0 = Ut.copy()
    validate_state(U0[grid.ix], gas)
    ref = ReferenceState.from_state(Ut, gas, cfg.theta)
    return Case(cfg, grid, gas, U0, ref)


def _uniform(grid, state):
    prim = np.empty((8,) + grid.shape)
    prim[:] = np.asarray(state, float)[:, None, None]
    return prim


def _with(cfg, overrides):
    return replace(cfg, **overrides) if overrides else cfg


def init_brio_wu(**overrides):
    """Shock tube along x on [-1, 1]^2 with B1 = 0.75."""
    cfg = _with(CaseConfig("brio-wu", (-1.0, 1.0, -1.0, 1.0), 128, 128, 0.25, 2.0), overrides)
    grid = Grid(cfg.nx, cfg.ny, *cfg.domain)
    X, _ = grid.mesh()
    left = np.array([1.0, 0, 0, 0, 1.0, 0.75, 1.0, 0])
    right = np.array([0.125, 0, 0, 0, 0.1, 0.75, -1.0, 0])
    prim = np.where(X[None] < 0.0, left[:, None, None], right[:, None, None])
    return _assemble(cfg, prim, _uniform(grid, left))


FOUR_STATES = {
    # (rho, u1, u2, p) per quadrant
    "ne": (1.0, 0.75, 0.5, 1.0),
    "nw": (2.0, 0.75, 0.5, 1.0),
    "sw": (1.0, -0.75, 0.5, 1.0),
    "se": (3.0, -0.75, -0.5, 1.0),
}


def init_four_state(**overrides):
    """Four constant states on [-1, 1]^2 with a uniform field (2, 0, 1)."""
    cfg = _with(CaseConfig("four-state", (-1.0, 1.0, -1.0, 1.0), 400, 400, 0.8, 5.0 / 3.0,
                           ctm="on"), overrides)
    grid = Grid(cfg.nx, cfg.ny, *cfg.domain)
    X, Y = grid.mesh()
    prim = np.zeros((8,) + grid.shape)
    prim[BX], prim[BZ] = 2.0, 1.0
    for key, (rho, u1, u2, p) in FOUR_STATES.items():
        m = ((X > 0) if key[1] == "e" else (X < 0)) & ((Y > 0) if key[0] == "n" else (Y < 0))
        prim[0][m], prim[UX][m], prim[UY][m], prim[PRES][m] = rho, u1, u2, p
    ne = FOUR_STATES["ne"]
    return _assemble(cfg, prim, _uniform(grid, (ne[0], ne[1], ne[2], 0, ne[3], 2.0, 0, 1.0)))


def vortex_primitives(X, Y, t=0.0, u0=0.0, v0=0.0, m_p=1.0, kappa_p=1.0,
                      b2_sign=1.0, pressure_factor=True):
    """Advected MHD vortex centred at ``(u0 t, v0 t)``.

    ``b2_sign=-1`` and ``pressure_factor=False`` give a variant that is
    neither divergence free nor positive on [-5, 5]^2.
    """
    x = X - u0 * t
    y = Y - v0 * t
    r2 = x * x + y * y
    h = np.exp(0.5 * (1.0 - r2))
    prim = np.zeros((8,) + np.shape(X))
    prim[0] = 1.0
    prim[UX] = u0 - kappa_p * h * y
    prim[UY] = v0 + kappa_p * h * x
    prim[BX] = -m_p * h * y
    prim[BY] = b2_sign * m_p * h * x
    dp = 0.5 * m_p ** 2 * (1.0 - r2) - 0.5 * kappa_p ** 2
    prim[PRES] = 1.0 + dp * (h * h if pressure_factor else 1.0)
    return prim


VORTEX_T_APPROX = 100 * 3.14
VORTEX_T_EXACT = 100 * 2 * np.pi / np.sqrt(np.e)


def init_vortex(u0=0.0, v0=0.0, reference="vortex", m_p=1.0, kappa_p=1.0,
                b2_sign=1.0, pressure_factor=True, t_final_exact=False, **overrides):
    """MHD vortex on [-5, 5]^2.

    ``reference="vortex"`` subtracts the vortex itself (steady boundaries);
    ``reference="uniform"`` subtracts the far-field state and uses periodic
    boundaries, so the scheme has to transport the vortex.
    """
    params = dict(u0=u0, v0=v0, m_p=m_p, kappa_p=kappa_p, b2_sign=b2_sign,
                  pressure_factor=pressure_factor)
    t_final = (VORTEX_T_EXACT if t_final_exact else VORTEX_T_APPROX) / kappa_p
    if reference == "vortex":
        bc = BoundaryConfig("steady-state", "steady-state", "steady-state", "steady-state")
    elif reference == "uniform":
        bc = BoundaryConfig("periodic", "periodic", "periodic", "periodic")
    else:
        raise ValueError(f"reference must be 'vortex' or 'uniform', got {reference!r}")
    cfg = _with(CaseConfig("vortex", (-5.0, 5.0, -5.0, 5.0), 64, 64, t_final, 5.0 / 3.0,
                           bc=bc, params=params), overrides)
    grid = Grid(cfg.nx, cfg.ny, *cfg.domain)
    X, Y = grid.mesh()
    prim = vortex_primitives(X, Y, 0.0, **params)
    if reference == "vortex":
        return _assemble(cfg, prim)
    return _assemble(cfg, prim, _uniform(grid, (1.0, u0, v0, 0, 1.0, 0, 0, 0)))


def atmosphere_primitives(Y, B=(0.0, 0.0, 0.0)):
    prim = np.zeros((8,) + np.shape(Y))
    prim[0] = RHO0 * np.exp(-Y / H_ATM)
    prim[PRES] = P0 * np.exp(-Y / H_ATM)
    prim[BX], prim[BY], prim[BZ] = B
    return prim


def init_hydro_atmosphere(c=0.0, **overrides):
    """Isothermal atmosphere on [0, 4] x [0, 1] driven by a localized piston."""
    bc = BoundaryConfig("periodic", "periodic", "piston-hydro", "hydrostatic",
                        c=c, x_c=1.9, H=H_ATM)
    cfg = _with(CaseConfig("hydro-atmosphere", (0.0, 4.0, 0.0, 1.0), 800, 200, 1.8, 5.0 / 3.0,
                           g=G_ATM, bc=bc, params=dict(c=c, rho0=RHO0, p0=P0, H=H_ATM)),
                overrides)
    grid = Grid(cfg.nx, cfg.ny, *cfg.domain)
    _, Y = grid.mesh()
    return _assemble(cfg, atmosphere_primitives(Y))


def init_mhd_atmosphere(mu=1.0, c=0.3, **overrides):
    """Magnetostatic atmosphere with B = (0, mu, 0) on [0, 2] x [0, 1].

    ``mu = 0`` is replaced by a tiny positive value so the piston direction
    along B stays defined.
    """
    if mu < 0:
        raise ValueError("mu must be non-negative")
    mu_eff = mu if mu > 0 else MU_ZERO
    bc = BoundaryConfig("periodic", "periodic", "piston-mhd", "hydrostatic", c=c, H=H_ATM)
    cfg = _with(CaseConfig("mhd-atmosphere", (0.0, 2.0, 0.0, 1.0), 400, 200, 0.54, 5.0 / 3.0,
                           g=G_ATM, bc=bc,
                           params=dict(mu=mu_eff, c=c, rho0=RHO0, p0=P0, H=H_ATM)),
                overrides)
    grid = Grid(cfg.nx, cfg.ny, *cfg.domain)
    _, Y = grid.mesh()
    return _assemble(cfg, atmosphere_primitives(Y, (0.0, mu_eff, 0.0)))


_BUILDERS = {
    "brio-wu": init_brio_wu,
    "four-state": init_four_state,
    "vortex": init_vortex,
    "hydro-atmosphere": init_hydro_atmosphere,
    "mhd-atmosphere": init_mhd_atmosphere,
}


def make_case(name, **kwargs):
    """Build a case by name; keyword arguments go to its ``init_*`` function."""
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise ValueError(f"unknown case {name!r}; choose from {', '.join(CASES)}") from None
    return builder(**kwargs)


def diagnostics(U, grid, gas):
    """Field-aligned velocity, perpendicular velocity, plasma beta and div B.

    ``U`` is a full lattice with ghosts filled; results cover interior cells.
    Cells with |B| = 0 get NaN for the B-normalised quantities.
    """
    W = primitive_from_conserved(U, gas)
    core = grid.ix
    u = W[UX:UZ + 1][core]
    B = W[BX:][core]
    b2 = np.sum(B * B, axis=0)
    bmag = np.sqrt(b2)
    with np.errstate(divide="ignore", invalid="ignore"):
        uB = np.where(bmag > 0, np.sum(u * B, axis=0) / bmag, np.nan)
        uperp = np.where(bmag > 0, (-u[0] * B[1] + u[1] * B[0]) / bmag, np.nan)
        beta = np.where(b2 > 0, 2.0 * W[PRES][grid.interior] / b2, np.nan)
    g = grid.ng - 1
    div = divergence_main(U[BX], U[BY], grid.dx, grid.dy)[g:g + grid.nx, g:g + grid.ny]
    return {"uB": uB, "uperpB": uperp, "beta": beta, "divB": div}
