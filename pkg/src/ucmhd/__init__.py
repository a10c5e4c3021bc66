"""Well-balanced unstaggered central finite-volume solver for ideal MHD with gravity."""
from .bc import BoundaryConfig
from .cases import CASES, Case, CaseConfig, diagnostics, make_case
from .driver import RunConfig, RunReport, parse_config, run
from .errors import (InvalidState, MissingGhostLayer, NonpositiveDensity, NonpositivePressure,
                     OutOfDomain, SolverError, UsageError, ZeroFieldInPiston)
from .grid import Grid
from .physics import GasModel, conserved_from_primitive, primitive_from_conserved
from .scheme import ReferenceState, fill_ghosts, step

__version__ = "0.1.0"

__all__ = [
    "BoundaryConfig", "CASES", "Case", "CaseConfig", "diagnostics", "make_case",
    "RunConfig", "RunReport", "parse_config", "run",
    "InvalidState", "MissingGhostLayer", "NonpositiveDensity", "NonpositivePressure",
    "OutOfDomain", "SolverError", "UsageError", "ZeroFieldInPiston",
    "Grid", "GasModel", "conserved_from_primitive", "primitive_from_conserved",
    "ReferenceState", "fill_ghosts", "step",
]
