"""Command-line driver: sweeps, constants, and the validation suite.

Every command writes one table (CSV with a config echo in ``#`` lines,
or JSON as one object per line) so figures and regressions can be
rebuilt from artifacts alone.  Numeric rows always carry their error
estimates.  Output is deterministic: fixed grids, fixed summation
order, and a worker pool that only reorders work, never results.

The only environment variable honored is PARACASIMIR_THREADS, the
sweep worker-pool size (default 1).
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import warnings
from dataclasses import asdict, dataclass, fields

from .specfun import DomainError

__all__ = ["RunConfig", "parse_config_file", "build_config", "run", "main"]

COMMANDS = ("energy", "cperp", "ctheta-sweep", "h-sweep", "thermal", "pfa",
            "validate")
_CHANNEL_CHOICES = ("em", "dirichlet", "neumann")
_FORMAT_CHOICES = ("csv", "json")


@dataclass(frozen=True)
class RunConfig:
    """One fully resolved invocation.

    Angles are degrees here and radians inside the library; sweeps read
    their range from ``sweep_from``/``sweep_to``/``points`` and the
    thermal command its temperature (k_B T H / hbar c) from
    ``temperature``.  ``qmax_scaled = None`` lets the library pick the
    cutoff for the geometry.
    """

    command: str
    radius: float = 0.0
    separation: float = 1.0
    angle_deg: float = 0.0
    numax: int = 100
    quad_nodes: int = 10
    qmax_scaled: float | None = None
    tolerance: float = 1e-6
    channel: str = "em"
    format: str = "csv"
    path: str | None = None
    sweep_from: float | None = None
    sweep_to: float | None = None
    points: int = 7
    temperature: float | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise DomainError(f"unknown command {self.command!r}")
        if self.channel not in _CHANNEL_CHOICES:
            raise DomainError(f"channel must be one of {_CHANNEL_CHOICES}")
        if self.format not in _FORMAT_CHOICES:
            raise DomainError(f"format must be one of {_FORMAT_CHOICES}")
        if self.radius < 0 or self.separation <= 0:
            raise DomainError("need radius >= 0 and separation > 0")
        if self.numax < 0 or self.quad_nodes < 2 or self.points < 1:
            raise DomainError("need numax >= 0, quad_nodes >= 2, points >= 1")
        if not self.tolerance > 0:
            raise DomainError("tolerance must be positive")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise DomainError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)


_OPTIONAL_FLOATS = ("qmax_scaled", "sweep_from", "sweep_to", "temperature")


def _parse_value(key: str, text: str):
    kind = {f.name: f.type for f in fields(RunConfig)}.get(key)
    if kind is None:
        raise DomainError(f"unknown config key {key!r}")
    if key in _OPTIONAL_FLOATS:
        return None if text.lower() == "none" else float(text)
    if key == "path":
        return None if text.lower() == "none" else text
    if kind == "int":
        return int(text)
    if kind == "float":
        return float(text)
    return text


def parse_config_file(path: str) -> dict:
    """Read a plain-text config of `key = value` lines.

    Blank lines and ``#`` comments are skipped; keys match RunConfig
    field names (hyphens normalize to underscores).
    """
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DomainError(f"{path}:{lineno}: expected 'key = value'")
            key, text = line.split("=", 1)
            key = key.strip().replace("-", "_")
            values[key] = _parse_value(key, text.strip())
    return values


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="FILE",
                        help="key = value file merged below explicit flags")
    common.add_argument("--radius", type=float, help="parabolic radius R")
    common.add_argument("--separation", type=float, help="tip-plane distance H")
    common.add_argument("--angle", dest="angle_deg", type=float,
                        help="tilt angle in degrees")
    common.add_argument("--numax", type=int, help="partial-wave truncation order")
    common.add_argument("--quad-nodes", dest="quad_nodes", type=int,
                        help="Gauss-Legendre nodes per frequency panel")
    common.add_argument("--qmax-scaled", dest="qmax_scaled", type=float,
                        help="upper frequency cutoff in units of 1/H")
    common.add_argument("--tolerance", type=float, help="relative accuracy target")
    common.add_argument("--channel", choices=_CHANNEL_CHOICES)
    common.add_argument("--format", choices=_FORMAT_CHOICES)
    common.add_argument("--output", dest="path", metavar="FILE",
                        help="write the table here instead of stdout")
    parser = argparse.ArgumentParser(
        prog="paracasimir",
        description="Casimir energies of a parabolic cylinder facing a plane")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("energy", parents=[common],
                   help="energy per unit length for one geometry")
    sub.add_parser("cperp", parents=[common],
                   help="knife-edge constant C of E = -C/H^2")
    p = sub.add_parser("ctheta-sweep", parents=[common],
                       help="tilt coefficient c(theta) over a range of angles")
    p.add_argument("--from", dest="sweep_from", type=float, metavar="DEG")
    p.add_argument("--to", dest="sweep_to", type=float, metavar="DEG")
    p.add_argument("--points", type=int)
    p = sub.add_parser("h-sweep", parents=[common],
                       help="energy and PFA ratio versus H/R")
    p.add_argument("--from", dest="sweep_from", type=float, metavar="H_OVER_R")
    p.add_argument("--to", dest="sweep_to", type=float, metavar="H_OVER_R")
    p.add_argument("--points", type=int)
    p = sub.add_parser("thermal", parents=[common],
                       help="finite-temperature energy per unit length")
    p.add_argument("--temperature", type=float, metavar="T_SCALED")
    sub.add_parser("pfa", parents=[common],
                   help="proximity force approximation baseline")
    sub.add_parser("validate", parents=[common],
                   help="run the internal identity suite")
    return parser


def build_config(argv=None) -> RunConfig:
    """Parse flags (and an optional config file) into a RunConfig."""
    args = vars(_build_parser().parse_args(argv))
    config_path = args.pop("config", None)
    merged = parse_config_file(config_path) if config_path else {}
    for key, value in args.items():
        if value is not None:
            merged[key] = value
    merged["command"] = args["command"]
    return RunConfig.from_dict(merged)


def _quadrature(config):
    from .energy import QuadratureSpec, default_quadrature
    from .scattering import Geometry
    geom = Geometry(config.radius, config.separation,
                    math.radians(config.angle_deg))
    base = default_quadrature(geom)
    qmax = config.qmax_scaled if config.qmax_scaled is not None else base.qmax_scaled
    return geom, QuadratureSpec(node_count=config.quad_nodes,
                                panel_count=base.panel_count,
                                qmin_scaled=base.qmin_scaled,
                                qmax_scaled=qmax,
                                tolerance=config.tolerance)


def _worker_count() -> int:
    try:
        return max(1, int(os.environ.get("PARACASIMIR_THREADS", "1")))
    except ValueError:
        return 1


def _map_ordered(fn, items):
    count = _worker_count()
    if count <= 1:
        return [fn(item) for item in items]
    from concurrent.futures import ThreadPoolExecutor
    with ThreadPoolExecutor(max_workers=count) as pool:
        return list(pool.map(fn, items))


def _linspace(lo: float, hi: float, count: int):
    if count == 1:
        return [lo]
    step = (hi - lo) / (count - 1)
    return [lo + step * i for i in range(count)]


def _geomspace(lo: float, hi: float, count: int):
    if count == 1:
        return [lo]
    ratio = (hi / lo) ** (1.0 / (count - 1))
    return [lo * ratio ** i for i in range(count)]


def _rows_energy(config):
    from .energy import energy_per_length
    geom, spec = _quadrature(config)
    res = energy_per_length(geom, spec, config.numax, config.channel)
    header = ["radius", "separation", "angle_deg", "channel", "nu_max",
              "energy", "extrapolated", "trunc_error", "quad_error"]
    return header, [{
        "radius": config.radius, "separation": config.separation,
        "angle_deg": config.angle_deg, "channel": config.channel,
        "nu_max": res.series[-1][0], "energy": res.value,
        "extrapolated": res.extrapolated, "trunc_error": res.trunc_error,
        "quad_error": res.quad_error,
    }], True


def _rows_cperp(config):
    from .energy import energy_per_length
    from .scattering import Geometry
    _, spec = _quadrature(config)
    geom = Geometry(0.0, 1.0, 0.0)
    res = energy_per_length(geom, spec, config.numax, config.channel)
    header = ["channel", "nu_max", "c_perp", "trunc_error", "quad_error"]
    return header, [{
        "channel": config.channel, "nu_max": res.series[-1][0],
        "c_perp": -res.extrapolated, "trunc_error": res.trunc_error,
        "quad_error": res.quad_error,
    }], True


def _rows_ctheta(config):
    from .energy import energy_per_length
    from .scattering import Geometry
    _, spec = _quadrature(config)
    lo = config.sweep_from if config.sweep_from is not None else 0.0
    hi = config.sweep_to if config.sweep_to is not None else 90.0
    header = ["theta_deg", "c_theta", "channel", "trunc_error", "quad_error"]

    def point(theta_deg):
        theta = math.radians(theta_deg)
        if abs(abs(theta) - math.pi / 2) < 1e-12:
            exact = math.pi ** 2 / (1440.0 if config.channel == "em" else 2880.0)
            return {"theta_deg": theta_deg, "c_theta": exact,
                    "channel": config.channel, "trunc_error": 0.0,
                    "quad_error": 0.0}
        eff = max(config.numax, 200) if abs(theta) > math.radians(80.0) else config.numax
        res = energy_per_length(Geometry(0.0, 1.0, theta), spec, eff,
                                config.channel)
        cos = math.cos(theta)
        return {"theta_deg": theta_deg, "c_theta": -cos * res.extrapolated,
                "channel": config.channel, "trunc_error": cos * res.trunc_error,
                "quad_error": cos * res.quad_error}

    rows = _map_ordered(point, _linspace(lo, hi, config.points))
    return header, rows, True


def _rows_hsweep(config):
    from .approx import pfa_energy
    from .energy import energy_per_length
    from .scattering import Geometry
    if config.radius <= 0:
        raise DomainError("h-sweep requires --radius > 0")
    lo = config.sweep_from if config.sweep_from is not None else 0.25
    hi = config.sweep_to if config.sweep_to is not None else 4.0
    if not 0 < lo <= hi:
        raise DomainError("h-sweep range must satisfy 0 < from <= to")
    _, spec = _quadrature(config)
    header = ["h_over_r", "energy_h2", "pfa_ratio", "trunc_error", "quad_error"]

    def point(ratio):
        H = ratio * config.radius
        geom = Geometry(config.radius, H, 0.0)
        res = energy_per_length(geom, spec, config.numax, config.channel)
        h2 = H * H
        return {"h_over_r": ratio, "energy_h2": res.value * h2,
                "pfa_ratio": res.value / pfa_energy(H, config.radius),
                "trunc_error": res.trunc_error * h2,
                "quad_error": res.quad_error * h2}

    rows = _map_ordered(point, _geomspace(lo, hi, config.points))
    return header, rows, True


def _rows_thermal(config):
    from .energy import thermal_energy
    geom, spec = _quadrature(config)
    if config.temperature is None or config.temperature < 0:
        raise DomainError("thermal requires --temperature >= 0")
    res = thermal_energy(geom, config.temperature, config.numax, spec,
                         config.channel)
    header = ["t_scaled", "channel", "nu_max", "energy", "extrapolated",
              "trunc_error", "quad_error"]
    return header, [{
        "t_scaled": config.temperature, "channel": config.channel,
        "nu_max": res.series[-1][0], "energy": res.value,
        "extrapolated": res.extrapolated, "trunc_error": res.trunc_error,
        "quad_error": res.quad_error,
    }], True


def _rows_pfa(config):
    from .approx import EdgeLimitWarning, pfa_energy
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        value = pfa_energy(config.separation, config.radius)
    edge_limited = any(issubclass(w.category, EdgeLimitWarning) for w in caught)
    header = ["radius", "separation", "pfa_energy", "edge_limited", "error"]
    return header, [{
        "radius": config.radius, "separation": config.separation,
        "pfa_energy": value, "edge_limited": edge_limited, "error": 0.0,
    }], True


def _rows_validate(config):
    from .testing import run_identity_suite
    checks = run_identity_suite()
    header = ["check", "measure", "bound", "passed"]
    rows = [{"check": c.name, "measure": c.measure, "bound": c.bound,
             "passed": c.passed} for c in checks]
    return header, rows, all(c.passed for c in checks)


_DISPATCH = {
    "energy": _rows_energy,
    "cperp": _rows_cperp,
    "ctheta-sweep": _rows_ctheta,
    "h-sweep": _rows_hsweep,
    "thermal": _rows_thermal,
    "pfa": _rows_pfa,
    "validate": _rows_validate,
}


def _format_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_csv(stream, config: RunConfig, header, rows):
    for key, value in sorted(config.to_dict().items()):
        stream.write(f"# {key} = {value}\n")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_format_cell(row[key]) for key in header])


def _write_json(stream, config: RunConfig, header, rows):
    stream.write(json.dumps({"config": config.to_dict()}, sort_keys=True))
    stream.write("\n")
    for row in rows:
        stream.write(json.dumps({key: row[key] for key in header}))
        stream.write("\n")


def run(config: RunConfig) -> int:
    """Execute one command; returns the process exit status.

    0: all requested computations converged.  1: a physical-regime,
    accuracy, or fit error occurred (a machine-readable JSON diagnostic
    is written to the output), or a validation check failed.
    """
    from .energy import FitRejectedError
    from .roundtrip import PhysicalRegimeError
    from .scattering import SingularDenominatorError
    from .translation import AccuracyError
    stream = open(config.path, "w", encoding="utf-8", newline="") \
        if config.path else sys.stdout
    try:
        try:
            header, rows, converged = _DISPATCH[config.command](config)
        except (PhysicalRegimeError, AccuracyError, FitRejectedError,
                SingularDenominatorError) as exc:
            stream.write(json.dumps({"error": type(exc).__name__,
                                     "message": str(exc)}))
            stream.write("\n")
            return 1
        if config.format == "csv":
            _write_csv(stream, config, header, rows)
        else:
            _write_json(stream, config, header, rows)
        return 0 if converged else 1
    finally:
        if config.path:
            stream.close()


def main(argv=None) -> int:
    """Console entry point."""
    try:
        config = build_config(argv)
    except DomainError as exc:
        print(f"paracasimir: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"paracasimir: {exc}", file=sys.stderr)
        return 2
    try:
        return run(config)
    except DomainError as exc:
        print(f"paracasimir: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
