"""Cartesian cell-centred lattice with ghost layers.

Layout along x (same along y)::

    | ghost | ghost | ghost | 0 | 1 | ... | nx-1 | ghost | ghost | ghost |
      0       1       2       ng                    ng+nx

Fields are plain arrays of shape ``(8, nx + 2*ng, ny + 2*ng)``.  The dual
(staggered) lattice has one node between each pair of neighbouring cells, so
its arrays are one shorter per axis and node ``k`` sits at ``x[k] + dx/2``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import MissingGhostLayer

# the composite step reads 3 cells beyond the interior: limited slopes of the
# predictor, staggered slopes of the back projection
NGHOST = 3


@dataclass(frozen=True)
class Grid:
    nx: int
    ny: int
    x_min: float = 0.0
    x_max: float = 1.0
    y_min: float = 0.0
    y_max: float = 1.0
    ng: int = NGHOST
    x: np.ndarray = field(init=False, repr=False, compare=False)
    y: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.nx < 1 or self.ny < 1:
            raise ValueError("grid needs at least one interior cell per axis")
        if not (self.x_max > self.x_min and self.y_max > self.y_min):
            raise ValueError("degenerate domain")
        if self.ng < NGHOST:
            raise MissingGhostLayer(f"the scheme needs ng >= {NGHOST}, got {self.ng}")
        x = self.x_min + (np.arange(self.nx + 2 * self.ng) - self.ng + 0.5) * self.dx
        y = self.y_min + (np.arange(self.ny + 2 * self.ng) - self.ng + 0.5) * self.dy
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def dx(self):
        return (self.x_max - self.x_min) / self.nx

    @property
    def dy(self):
        return (self.y_max - self.y_min) / self.ny

    @property
    def shape(self):
        return (self.nx + 2 * self.ng, self.ny + 2 * self.ng)

    @property
    def interior(self):
        """Slice tuple selecting interior cells of a lattice (no component axis)."""
        g = self.ng
        return (slice(g, g + self.nx), slice(g, g + self.ny))

    @property
    def ix(self):
        """Slice tuple selecting interior cells of an ``(8, ...)`` field."""
        return (slice(None),) + self.interior

    def mesh(self, ghosts=True):
        """Cell-centre coordinates as two 2-D arrays (``ij`` indexing)."""
        if ghosts:
            return np.meshgrid(self.x, self.y, indexing="ij")
        return np.meshgrid(self.x_interior, self.y_interior, indexing="ij")

    @property
    def x_interior(self):
        return self.x[self.ng:self.ng + self.nx]

    @property
    def y_interior(self):
        return self.y[self.ng:self.ng + self.ny]

    def empty(self, nvar=8):
        return np.zeros((nvar,) + self.shape)

    def check_field(self, q):
        if q.shape[-2:] != self.shape:
            raise MissingGhostLayer(
                f"field shape {q.shape[-2:]} does not match grid {self.shape}")
