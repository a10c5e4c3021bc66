"""Command line, run configuration and the time loop."""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import io as _io
from .cases import CASES, make_case
from .ctm import max_abs_div
from .errors import SolverError, UsageError
from .physics import BX, BY, ENE, RHO
from .scheme import CTM_MODES, fill_ghosts, step
from .wavespeed import MAX_CFL

log = logging.getLogger("ucmhd")

EXIT_OK, EXIT_USAGE, EXIT_SOLVER, EXIT_IO = 0, 2, 3, 4

# case-specific keyword arguments accepted by each init_* builder
CASE_PARAMS = {
    "brio-wu": (),
    "four-state": (),
    "vortex": ("u0", "v0", "reference"),
    "hydro-atmosphere": ("c",),
    "mhd-atmosphere": ("mu", "c"),
}
SECTION_SEP = ":"


@dataclass
class RunConfig:
    case: str
    nx: int | None = None
    ny: int | None = None
    t_final: float | None = None
    cfl: float | None = None
    theta: float | None = None
    ctm: str | None = None
    mu: float | None = None
    c: float | None = None
    u0: float | None = None
    v0: float | None = None
    reference: str | None = None
    output: str | None = None
    formats: tuple = ("csv",)
    every: int | None = None
    snapshots: int = 10
    sections: tuple = ()
    diagnostics: bool = True
    seed: int = 0

    def __post_init__(self):
        if self.case not in CASES:
            raise UsageError(f"unknown case {self.case!r}; valid cases: {', '.join(CASES)}")
        if self.cfl is not None and not 0 < self.cfl <= MAX_CFL:
            raise UsageError(f"cfl must lie in (0, {MAX_CFL}], got {self.cfl}")
        if self.theta is not None and not 1 <= self.theta <= 2:
            raise UsageError(f"theta must lie in [1, 2], got {self.theta}")
        if self.ctm is not None and self.ctm not in CTM_MODES:
            raise UsageError(f"ctm must be one of {', '.join(CTM_MODES)}")
        if self.every is not None and self.every < 1:
            raise UsageError("--every must be a positive step count")
        if self.snapshots < 1:
            raise UsageError("snapshots must be positive")
        for n in (self.nx, self.ny):
            if n is not None and n < 1:
                raise UsageError("grid sizes must be positive")
        if self.t_final is not None and not self.t_final > 0:
            raise UsageError("t_final must be positive")
        bad = set(self.formats) - set(_io.FORMATS)
        if bad:
            raise UsageError(f"unknown formats {sorted(bad)}; valid: {', '.join(_io.FORMATS)}")
        for key in ("mu", "c", "u0", "v0", "reference"):
            if getattr(self, key) is not None and key not in CASE_PARAMS[self.case]:
                raise UsageError(f"--{key} does not apply to case {self.case!r}")
        for sec in self.sections:
            _parse_section(sec)

    def build_case(self):
        kwargs = {k: getattr(self, k) for k in CASE_PARAMS[self.case]
                  if getattr(self, k) is not None}
        for k in ("nx", "ny", "t_final", "cfl", "theta", "ctm"):
            if getattr(self, k) is not None:
                kwargs[k] = getattr(self, k)
        return make_case(self.case, **kwargs)


def _parse_section(text):
    try:
        axis, coord = text.split(SECTION_SEP)
        coord = float(coord)
    except ValueError:
        raise UsageError(f"section must look like 'x:0.5', got {text!r}") from None
    if axis not in ("x", "y"):
        raise UsageError(f"section axis must be x or y, got {axis!r}")
    return axis, coord


@dataclass
class RunReport:
    case: str
    status: str = "running"
    steps: int = 0
    wall_time: float = 0.0
    t: float = 0.0
    error: dict | None = None
    series: dict = field(default_factory=lambda: {
        "t": [], "step": [], "max_div_b": [], "mass": [], "energy": [], "max_delta": []})

    def record(self, t, n, div, mass, energy, max_delta):
        for key, value in zip(self.series, (t, n, div, mass, energy, max_delta)):
            self.series[key].append(float(value))

    def to_json(self):
        return json.dumps(asdict(self), indent=2, allow_nan=True)


def _output_times(cfg, t_final):
    if cfg.every is not None:
        return [t_final]
    return [t_final * k / cfg.snapshots for k in range(1, cfg.snapshots + 1)]


def run(cfg, case=None):
    """Advance a case to its final time, writing snapshots and a report.

    A :class:`~ucmhd.errors.SolverError` is caught, stored in the report
    (status ``"failed"``) and the report is flushed before returning.
    """
    case = cfg.build_case() if case is None else case
    cc, grid, gas, ref = case.config, case.grid, case.gas, case.ref
    bc = cc.bc
    clean = cc.ctm != "off"
    out_dir = Path(cfg.output) if cfg.output else None
    if out_dir is not None:
        try:
            out_dir.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise OSError(f"cannot create output directory {out_dir}: {exc.strerror}") from exc

    report = RunReport(cc.name)
    cell = grid.dx * grid.dy
    wall0 = time.perf_counter()
    targets = _output_times(cfg, cc.t_final)
    snap = 0

    def observe(delta, t, n):
        nonlocal snap
        filled = fill_ghosts(delta, ref, grid, gas, bc, t, clean_div=clean)
        U = filled + ref.U
        core = grid.ix
        report.record(t, n, max_abs_div(U[BX], U[BY], grid.dx, grid.dy, grid.ng),
                      np.sum(U[RHO][grid.interior]) * cell,
                      np.sum(U[ENE][grid.interior]) * cell,
                      np.max(np.abs(delta[core])))
        if out_dir is not None:
            for fmt in cfg.formats:
                _io.write_field(U, grid, gas, out_dir / f"{cc.name}_{snap:04d}.{fmt}", fmt,
                                cfg.diagnostics)
            if cfg.sections:
                table = _io.field_table(U, grid, gas, cfg.diagnostics)
                for sec in cfg.sections:
                    axis, coord = _parse_section(sec)
                    part = _io.cross_section(table, grid, axis, coord)
                    _io.write_csv(part, out_dir / f"{cc.name}_{snap:04d}_{axis}{coord:g}.csv")
        snap += 1

    delta = case.delta0.copy()
    t, n = 0.0, 0
    observe(delta, t, n)
    try:
        for target in targets:
            while t < target:
                delta, info = step(delta, ref, grid, gas, bc, t, cfl=cc.cfl, theta=cc.theta,
                                   ctm=cc.ctm, t_final=target)
                n += 1
                # land exactly on the snapshot time
                t = target if info.dt >= target - t else t + info.dt
                if cfg.every is not None and n % cfg.every == 0 and t < target:
                    observe(delta, t, n)
            observe(delta, t, n)
            log.info("t=%.6g step=%d max|divB|=%.3e", t, n, report.series["max_div_b"][-1])
        report.status = "ok"
    except SolverError as exc:
        report.status = "failed"
        report.error = {"type": type(exc).__name__, "message": str(exc),
                        "index": [int(i) for i in exc.index] if exc.index is not None else None,
                        "t": t, "step": n}
        log.error("solver failure at step %d, t=%.6g: %s", n, t, exc)
    finally:
        report.steps, report.t = n, t
        report.wall_time = time.perf_counter() - wall0
        if out_dir is not None:
            (out_dir / "report.json").write_text(report.to_json())
    report.final_state = delta + ref.U
    return report


def _build_parser():
    p = argparse.ArgumentParser(prog="ucmhd", description="Well-balanced central MHD solver")
    sub = p.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", help="run one test case")
    r.add_argument("--config", help="key=value file with the same keys as the flags")
    r.add_argument("--case", choices=CASES)
    r.add_argument("--nx", type=int)
    r.add_argument("--ny", type=int)
    r.add_argument("--t-final", type=float)
    r.add_argument("--cfl", type=float)
    r.add_argument("--theta", type=float)
    r.add_argument("--ctm", choices=CTM_MODES)
    r.add_argument("--mu", type=float)
    r.add_argument("--c", type=float)
    r.add_argument("--u0", type=float)
    r.add_argument("--v0", type=float)
    r.add_argument("--reference", choices=("vortex", "uniform"))
    r.add_argument("--output")
    r.add_argument("--format", help="comma separated: csv,vtk")
    r.add_argument("--every", type=int, help="extra snapshot every N steps")
    r.add_argument("--snapshots", type=int, help="evenly spaced snapshots (default 10)")
    r.add_argument("--section", action="append", help="cross section, e.g. x:0 or y:1.5")
    r.add_argument("--no-diagnostics", action="store_true", default=None)
    r.add_argument("--seed", type=int)
    r.add_argument("-v", "--verbose", action="store_true")
    return p


_CONVERTERS = {
    "case": str, "nx": int, "ny": int, "t_final": float, "cfl": float, "theta": float,
    "ctm": str, "mu": float, "c": float, "u0": float, "v0": float, "reference": str,
    "output": str, "format": str, "every": int, "snapshots": int, "section": str,
    "no_diagnostics": lambda s: s.strip().lower() in ("1", "true", "yes"), "seed": int,
}


def read_config_file(path):
    """Flat ``key = value`` file; ``#`` starts a comment, dashes equal underscores."""
    values = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc.strerror}") from exc
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _CONVERTERS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}; valid keys: "
                             f"{', '.join(sorted(_CONVERTERS))}")
        try:
            values[key] = _CONVERTERS[key](value)
        except ValueError:
            raise UsageError(f"{path}:{lineno}: bad value {value!r} for {key}") from None
    return values


def parse_config(argv):
    """CLI flags override config-file values, which override case defaults."""
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code == 0:
            raise
        raise UsageError(f"invalid arguments; valid cases: {', '.join(CASES)}") from None
    merged = read_config_file(ns.config) if ns.config else {}
    for key, value in vars(ns).items():
        if key in ("command", "config", "verbose") or value is None:
            continue
        merged[key] = value
    if "case" not in merged:
        raise UsageError(f"--case is required; valid cases: {', '.join(CASES)}")
    sections = merged.pop("section", ())
    if isinstance(sections, str):
        sections = (sections,)
    fmt = merged.pop("format", None)
    kwargs = dict(merged)
    kwargs["sections"] = tuple(sections)
    kwargs["diagnostics"] = not kwargs.pop("no_diagnostics", False)
    if fmt is not None:
        kwargs["formats"] = tuple(f.strip() for f in fmt.split(",") if f.strip())
    return RunConfig(**kwargs), bool(ns.verbose)


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    logging.basicConfig(format="%(levelname)s %(message)s")
    try:
        cfg, verbose = parse_config(argv)
        log.setLevel(logging.INFO if verbose else logging.WARNING)
        report = run(cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, SolverError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SOLVER if isinstance(exc, SolverError) else EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"{report.case}: status={report.status} steps={report.steps} t={report.t:.6g} "
          f"wall={report.wall_time:.2f}s")
    if report.status != "ok":
        print(json.dumps(report.error), file=sys.stderr)
        return EXIT_SOLVER
    return EXIT_OK
