import numpy as np
import pytest

from ucmhd.physics import GasModel, conserved_from_primitive

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def gas53():
    return GasModel(5.0 / 3.0, 0.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20261018)


def random_prim(rng, shape, bscale=1.0):
    """Random admissible primitive lattice of the given spatial shape."""
    prim = np.empty((8,) + tuple(shape))
    prim[0] = rng.uniform(0.5, 2.0, shape)
    prim[1:4] = rng.uniform(-1.0, 1.0, (3,) + tuple(shape))
    prim[4] = rng.uniform(0.5, 2.0, shape)
    prim[5:] = bscale * rng.uniform(-1.0, 1.0, (3,) + tuple(shape))
    return prim


def smooth_prim(grid, amp=0.1, phase=0.0):
    """Smooth periodic primitive field on ``grid`` (ghosts included)."""
    X, Y = grid.mesh()
    kx = 2 * np.pi / (grid.x_max - grid.x_min)
    ky = 2 * np.pi / (grid.y_max - grid.y_min)
    s = np.sin(kx * X + phase) * np.cos(ky * Y)
    c = np.cos(kx * X) * np.sin(ky * Y + phase)
    prim = np.empty((8,) + grid.shape)
    prim[0] = 1.0 + amp * s
    prim[1] = 0.3 + amp * c
    prim[2] = -0.2 + amp * s * c
    prim[3] = 0.1 * c
    prim[4] = 1.0 + amp * c
    prim[5] = 0.5 + amp * s
    prim[6] = 0.4 - amp * c
    prim[7] = 0.2 * s
    return prim


def to_conserved(prim, gas):
    return conserved_from_primitive(prim, gas)
