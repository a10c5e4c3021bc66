"""CSV and legacy-VTK field output, CSV read-back and cross sections."""
from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .cases import diagnostics
from .errors import OutOfDomain
from .physics import ENE, primitive_from_conserved

BASE_COLUMNS = ("x", "y", "rho", "u1", "u2", "u3", "p", "E", "B1", "B2", "B3", "divB")
DIAG_COLUMNS = ("uB", "uperpB", "beta")
FORMATS = ("csv", "vtk")


def field_table(U, grid, gas, with_diagnostics=True):
    """Interior cells as named 2-D arrays, keyed by output column."""
    W = primitive_from_conserved(U, gas)
    core = grid.interior
    X, Y = grid.mesh(ghosts=False)
    diag = diagnostics(U, grid, gas)
    names = ("rho", "u1", "u2", "u3", "p")
    table = {"x": X, "y": Y}
    table.update({name: W[k][core] for k, name in enumerate(names)})
    table["E"] = U[ENE][core]
    table.update({f"B{k + 1}": W[5 + k][core] for k in range(3)})
    table["divB"] = diag["divB"]
    if with_diagnostics:
        table.update({name: diag[name] for name in DIAG_COLUMNS})
    return table


def write_csv(table, path):
    """One row per cell, x-major order (x index outer, y inner), 17 digits."""
    path = Path(path)
    columns = [c for c in BASE_COLUMNS + DIAG_COLUMNS if c in table]
    data = np.column_stack([np.asarray(table[c]).ravel() for c in columns])
    try:
        with open(path, "w", newline="") as fh:
            fh.write(",".join(columns) + "\n")
            np.savetxt(fh, data, fmt="%.17g", delimiter=",")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror}") from exc
    return path


def read_csv(path):
    """Inverse of :func:`write_csv`: column name -> 1-D float array."""
    path = Path(path)
    try:
        with open(path, newline="") as fh:
            header = next(csv.reader(fh))
            data = np.loadtxt(fh, delimiter=",", ndmin=2)
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc.strerror}") from exc
    return {name: data[:, k] for k, name in enumerate(header)}


def write_vtk(table, grid, path, title="ucmhd field"):
    """Legacy ASCII STRUCTURED_POINTS with one scalar per variable.

    VTK points run with x fastest, so arrays are written transposed.
    """
    path = Path(path)
    lines = [
        "# vtk DataFile Version 3.0",
        title[:255],
        "ASCII",
        "DATASET STRUCTURED_POINTS",
        f"DIMENSIONS {grid.nx} {grid.ny} 1",
        f"ORIGIN {float(grid.x_interior[0])!r} {float(grid.y_interior[0])!r} 0",
        f"SPACING {float(grid.dx)!r} {float(grid.dy)!r} 1",
        f"POINT_DATA {grid.nx * grid.ny}",
    ]
    for name in BASE_COLUMNS[2:] + DIAG_COLUMNS:
        if name not in table:
            continue
        values = np.asarray(table[name]).T.ravel()
        lines.append(f"SCALARS {name} double 1")
        lines.append("LOOKUP_TABLE default")
        # NaN is not portable across VTK readers
        lines.extend(f"{v:.17g}" for v in np.nan_to_num(values, nan=0.0))
    try:
        path.write_text("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror}") from exc
    return path


def write_field(U, grid, gas, path, fmt="csv", with_diagnostics=True):
    """Write the interior of a ghost-filled conserved lattice to ``path``."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; choose from {FORMATS}")
    table = field_table(U, grid, gas, with_diagnostics)
    if fmt == "csv":
        return write_csv(table, path)
    return write_vtk(table, grid, path)


def cross_section(table, grid, axis, coord, variables=None):
    """Nearest-line extraction along ``axis`` at the given other coordinate.

    ``axis="x"`` returns the row of cells whose y centre is closest to
    ``coord`` (one entry per x cell), and vice versa.
    """
    if axis == "x":
        lo, hi, centres = grid.y_min, grid.y_max, grid.y_interior
    elif axis == "y":
        lo, hi, centres = grid.x_min, grid.x_max, grid.x_interior
    else:
        raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")
    if not lo <= coord <= hi:
        raise OutOfDomain(f"{coord} outside [{lo}, {hi}]")
    k = int(np.argmin(np.abs(centres - coord)))
    names = list(table) if variables is None else list(variables)
    missing = [n for n in names if n not in table]
    if missing:
        raise KeyError(f"unknown variables {missing}")
    if axis == "x":
        return {n: np.asarray(table[n])[:, k].copy() for n in names}
    return {n: np.asarray(table[n])[k, :].copy() for n in names}
