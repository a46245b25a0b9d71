"""
Flat ``section.key = value`` run configuration.

Example (every key shown with its default where one exists)::

    # physical constants; all media keys except kappa and gravity are required
    media.rho1 = 1000
    media.rho2 = 990
    media.h1 = 100
    media.h2 = 50
    media.l1 = 20
    media.l2 = 20
    media.kappa = 0.0
    media.gravity = 9.81

    # optional and purely descriptive: only kappa enters the dynamics
    shear.sigma = 0.5
    shear.upper = 20:0.0, 35:-0.3, 50:-0.5      # (y:U) pairs from (l2, kappa) to (h2, -sigma)
    shear.lower = -100:0.0, -20:0.0             # (y:U) pairs from (-h1, 0) to (-l1, kappa)

    grid.n = 128
    grid.length = 6.283185307179586

    ic.type = monochromatic                     # monochromatic | gaussian | random
    ic.k = 1.0                                  # default: 2*pi/grid.length
    ic.eta_amp = 0.01
    ic.xi_amp = 0.0
    ic.phase = 0.0
    ic.center = 3.14159                         # gaussian; default grid.length/2
    ic.width = 0.3                              # gaussian; default grid.length/20

    evolve.dt = 0.01
    evolve.n_steps = 100
    evolve.record_every = 10

    dno.order = 2
    dno.ny = 128                                # vertical mesh of the oracle solve
    solver.tol = 1e-10

    output.format = csv                         # csv | json
    output.path = run.csv                       # default: standard output

Unknown keys are errors.  Blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Any

import numpy as np

from .params import MediaParams, ShearProfile
from .spectral import PeriodicGrid

__all__ = ["ConfigError", "InitialCondition", "EvolveSettings", "RunConfig", "parse_config", "serialize_config"]


class ConfigError(ValueError):
    """Invalid configuration; carries the offending line number or field path."""

    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(field)
        super().__init__(f"{': '.join(where)}: {message}" if where else message)
        self.line = line
        self.field = field


@dataclass(frozen=True)
class InitialCondition:
    type: str = "monochromatic"
    k: float | None = None
    eta_amp: float = 0.01
    xi_amp: float = 0.0
    phase: float = 0.0
    center: float | None = None
    width: float | None = None


@dataclass(frozen=True)
class EvolveSettings:
    dt: float = 0.01
    n_steps: int = 100
    record_every: int = 10


@dataclass(frozen=True)
class RunConfig:
    media: MediaParams
    grid: PeriodicGrid
    shear: ShearProfile | None = None
    initial_condition: InitialCondition = field(default_factory=InitialCondition)
    evolve: EvolveSettings = field(default_factory=EvolveSettings)
    dno_order: int = 2
    dno_ny: int = 128
    solver_tol: float = 1e-10
    output_format: str = "csv"
    output_path: str | None = None

    def to_dict(self) -> dict[str, Any]:
        """Fully resolved configuration as plain data (used for JSON ``meta``)."""
        d = {
            "media": asdict(self.media),
            "grid": {"n": self.grid.n, "length": self.grid.length},
            "initial_condition": asdict(self.initial_condition),
            "evolve": asdict(self.evolve),
            "dno": {"order": self.dno_order, "ny": self.dno_ny},
            "solver": {"tol": self.solver_tol},
            "output": {"format": self.output_format, "path": self.output_path},
        }
        if self.shear is not None:
            d["shear"] = {
                "sigma": self.shear.sigma,
                "upper": self.shear.upper_samples.tolist(),
                "lower": self.shear.lower_samples.tolist(),
            }
        return d

    def __eq__(self, other):
        if not isinstance(other, RunConfig):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    __hash__ = None


_KEYS: dict[str, dict[str, type]] = {
    "media": {k: float for k in ("rho1", "rho2", "h1", "h2", "l1", "l2", "kappa", "gravity")},
    "shear": {"sigma": float, "upper": list, "lower": list},
    "grid": {"n": int, "length": float},
    "ic": {
        "type": str,
        "k": float,
        "eta_amp": float,
        "xi_amp": float,
        "phase": float,
        "center": float,
        "width": float,
    },
    "evolve": {"dt": float, "n_steps": int, "record_every": int},
    "dno": {"order": int, "ny": int},
    "solver": {"tol": float},
    "output": {"format": str, "path": str},
}

_REQUIRED_MEDIA = ("rho1", "rho2", "h1", "h2", "l1", "l2")


def _convert(raw: str, kind: type, key: str, line: int):
    try:
        if kind is float:
            v = float(raw)
            if not math.isfinite(v):
                raise ValueError
            return v
        if kind is int:
            return int(raw)
        if kind is list:
            pairs = []
            for item in raw.split(","):
                y, u = item.split(":")
                pairs.append((float(y), float(u)))
            return pairs
        return raw
    except ValueError:
        raise ConfigError(f"cannot read {raw!r} as {kind.__name__}", line=line, field=key) from None


def _read(text: str) -> dict[str, Any]:
    values: dict[str, Any] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigError("expected 'section.key = value'", line=lineno)
        key, raw = (s.strip() for s in body.split("=", 1))
        if key.count(".") != 1:
            raise ConfigError(f"malformed key {key!r}", line=lineno)
        section, name = key.split(".")
        if section not in _KEYS or name not in _KEYS[section]:
            raise ConfigError(f"unknown key {key!r}", line=lineno)
        if key in values:
            raise ConfigError(f"duplicate key {key!r}", line=lineno)
        if not raw:
            raise ConfigError(f"missing value for {key!r}", line=lineno)
        values[key] = _convert(raw, _KEYS[section][name], key, lineno)
    return values


def _section(values, name):
    return {k.split(".", 1)[1]: v for k, v in values.items() if k.startswith(name + ".")}


def _build(factory, path, **kwargs):
    try:
        return factory(**kwargs)
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc), field=path) from None


def parse_config(text: str) -> RunConfig:
    """Parse and validate a configuration document."""
    values = _read(text)

    media_kw = _section(values, "media")
    missing = [k for k in _REQUIRED_MEDIA if k not in media_kw]
    if missing:
        raise ConfigError(f"missing required keys {', '.join('media.' + k for k in missing)}", field="media")
    media = _build(MediaParams, "media", **media_kw)

    grid_kw = _section(values, "grid")
    grid = _build(PeriodicGrid, "grid", n=grid_kw.get("n", 128), length=grid_kw.get("length", 2 * np.pi))

    shear = None
    shear_kw = _section(values, "shear")
    if shear_kw:
        sigma = shear_kw.get("sigma", 0.0)
        upper = shear_kw.get("upper", [(media.l2, media.kappa), (media.h2, -sigma)])
        lower = shear_kw.get("lower", [(-media.h1, 0.0), (-media.l1, media.kappa)])
        shear = _build(ShearProfile, "shear", params=media, sigma=sigma, upper_samples=upper, lower_samples=lower)

    ic_kw = _section(values, "ic")
    ic = InitialCondition(**ic_kw)
    if ic.type not in ("monochromatic", "gaussian", "random"):
        raise ConfigError(f"unknown initial condition {ic.type!r}", field="ic.type")
    if ic.type == "monochromatic":
        k = ic.k if ic.k is not None else 2 * np.pi / grid.length
        try:
            m = grid.wavenumber_index(k)
        except ValueError as exc:
            raise ConfigError(str(exc), field="ic.k") from None
        if not 0 < m < grid.n // 2:
            raise ConfigError("monochromatic k must be nonzero and below the Nyquist mode", field="ic.k")
        ic = InitialCondition(ic.type, k, ic.eta_amp, ic.xi_amp, ic.phase, ic.center, ic.width)
    elif ic.type == "gaussian":
        center = ic.center if ic.center is not None else 0.5 * grid.length
        width = ic.width if ic.width is not None else grid.length / 20
        if width <= 0:
            raise ConfigError("width must be positive", field="ic.width")
        ic = InitialCondition(ic.type, ic.k, ic.eta_amp, ic.xi_amp, ic.phase, center, width)

    evolve = EvolveSettings(**_section(values, "evolve"))
    if not (evolve.dt != 0 and math.isfinite(evolve.dt)):
        raise ConfigError("dt must be finite and nonzero", field="evolve.dt")
    if evolve.n_steps < 1:
        raise ConfigError("n_steps must be >= 1", field="evolve.n_steps")
    if evolve.record_every < 1:
        raise ConfigError("record_every must be >= 1", field="evolve.record_every")

    dno_kw = _section(values, "dno")
    order = dno_kw.get("order", 2)
    if order not in (0, 1, 2):
        raise ConfigError("order must be 0, 1 or 2", field="dno.order")
    ny = dno_kw.get("ny", 128)
    if ny < 32:
        raise ConfigError("ny must be >= 32", field="dno.ny")
    tol = _section(values, "solver").get("tol", 1e-10)
    if not 0 < tol < 1:
        raise ConfigError("tol must lie in (0, 1)", field="solver.tol")

    out_kw = _section(values, "output")
    fmt = out_kw.get("format", "csv")
    if fmt not in ("csv", "json"):
        raise ConfigError("format must be csv or json", field="output.format")

    return RunConfig(
        media=media,
        grid=grid,
        shear=shear,
        initial_condition=ic,
        evolve=evolve,
        dno_order=order,
        dno_ny=ny,
        solver_tol=tol,
        output_format=fmt,
        output_path=out_kw.get("path"),
    )


def serialize_config(cfg: RunConfig) -> str:
    """Write ``cfg`` back in the key-value format; ``parse_config`` inverts it."""
    lines = []

    def put(key, value):
        if value is None:
            return
        if isinstance(value, float):
            value = repr(value)
        lines.append(f"{key} = {value}")

    for name, v in asdict(cfg.media).items():
        put(f"media.{name}", v)
    if cfg.shear is not None:
        put("shear.sigma", float(cfg.shear.sigma))
        for side, arr in (("upper", cfg.shear.upper_samples), ("lower", cfg.shear.lower_samples)):
            put(f"shear.{side}", ", ".join(f"{float(y)!r}:{float(u)!r}" for y, u in arr))
    put("grid.n", cfg.grid.n)
    put("grid.length", cfg.grid.length)
    for name, v in asdict(cfg.initial_condition).items():
        put(f"ic.{name}", float(v) if isinstance(v, (int, float)) and name != "type" else v)
    for name, v in asdict(cfg.evolve).items():
        put(f"evolve.{name}", v)
    put("dno.order", cfg.dno_order)
    put("dno.ny", cfg.dno_ny)
    put("solver.tol", cfg.solver_tol)
    put("output.format", cfg.output_format)
    put("output.path", cfg.output_path)
    return "\n".join(lines) + "\n"
