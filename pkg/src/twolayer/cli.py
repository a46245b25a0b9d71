"""
Command-line front end.

Subcommands ``dispersion``, ``evolve``, ``energy`` and ``dno-check`` read a
run configuration (see :mod:`twolayer.config`) and write CSV or JSON.

Exit status: 0 on success, 2 for configuration errors, 3 for numerical
failures (non-convergence, strip breach).
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
import warnings
from typing import Sequence

import numpy as np

from . import dispersion as disp
from .config import ConfigError, RunConfig, parse_config
from .dno import ConvergenceError, apply_G
from .evolution import (
    evolve,
    frame_equivalence_residual,
    gaussian_packet,
    monochromatic_state,
    random_state,
)
from .hamiltonian import background_energy_offset, energy, momentum, quadratic_energy
from .oracle import BvpResolution, OracleError, dno_bvp
from .params import StripBreachError, WaveState
from .spectral import RealField

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

SCHEMA_VERSION = 1

DISPERSION_COLUMNS = [
    "k",
    "c_plus",
    "c_minus",
    "omega_plus",
    "omega_minus",
    "group_plus",
    "group_minus",
    "c_long_plus",
    "c_deep_plus",
    "c_single_plus",
    "deep_rel_diff",
]
EVOLVE_COLUMNS = ["t", "x", "eta", "xi"]
ENERGY_COLUMNS = ["quantity", "value"]
DNO_CHECK_COLUMNS = ["amplitude", "layer", "order", "error", "exponent"]


class Table:
    """Rows plus a schema name, a column list and summary key-values."""

    def __init__(self, name: str, columns: list[str], rows=None, summary=None):
        self.name = name
        self.columns = columns
        self.rows = rows if rows is not None else []
        self.summary = summary if summary is not None else {}


def _fmt(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    # + 0.0 maps -0.0 to 0.0
    return format(float(v) + 0.0, ".17g")


def _json_value(v):
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else None
    return v


def render(table: Table, cfg: RunConfig, fmt: str) -> str:
    if fmt == "csv":
        out = io.StringIO()
        out.write(f"#schema={table.name}/v{SCHEMA_VERSION}:{','.join(table.columns)}\n")
        out.write(",".join(table.columns) + "\n")
        for row in table.rows:
            out.write(",".join(_fmt(v) for v in row) + "\n")
        for key, v in table.summary.items():
            out.write(f"#summary.{key}={_fmt(v)}\n")
        return out.getvalue()
    doc = {
        "meta": {
            "schema": f"{table.name}/v{SCHEMA_VERSION}",
            "columns": table.columns,
            "config": cfg.to_dict(),
        },
        "data": {
            "rows": [[_json_value(v) for v in row] for row in table.rows],
            "summary": {k: _json_value(v) for k, v in table.summary.items()},
        },
    }
    return json.dumps(doc, indent=1, sort_keys=False) + "\n"


# --- commands -----------------------------------------------------------------


def initial_state(cfg: RunConfig, seed: int | None = None) -> WaveState:
    ic, grid = cfg.initial_condition, cfg.grid
    try:
        if ic.type == "monochromatic":
            return monochromatic_state(grid, ic.k, ic.eta_amp, ic.xi_amp, ic.phase)
        if ic.type == "gaussian":
            return gaussian_packet(grid, ic.center, ic.width, ic.eta_amp)
        return random_state(grid, np.random.default_rng(seed), ic.eta_amp, ic.xi_amp)
    except StripBreachError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc), field="ic") from None


def cmd_dispersion(cfg: RunConfig, k_min: float, k_max: float, n_samples: int) -> Table:
    """Sweep of both branches with the three limiting laws alongside."""
    if not 0 <= k_min <= k_max or n_samples < 1 or (n_samples > 1 and k_min == k_max):
        raise ConfigError("need 0 <= k_min < k_max and n_samples >= 1", field="dispersion")
    p = cfg.media
    ks = np.linspace(k_min, k_max, n_samples) if n_samples > 1 else np.array([k_min])
    long = disp.long_wave_speed(p)
    rows = []
    for k in ks:
        b = disp.wave_speed(p, k)
        single = disp.single_medium_speed(p, k)
        if k > 0:
            gp = disp.group_velocity(p, k, "+")
            gm = disp.group_velocity(p, k, "-")
            deep = disp.deep_water_speed(p, k).c_plus
            rel = abs((b.c_plus - p.kappa) - (deep - p.kappa)) / abs(deep - p.kappa)
        else:
            gp, gm = long.c_plus, long.c_minus
            deep, rel = math.nan, math.nan
        rows.append(
            [k, b.c_plus, b.c_minus, b.omega_plus, b.omega_minus, gp, gm, long.c_plus, deep, single.c_plus, rel]
        )
    return Table("dispersion", DISPERSION_COLUMNS, rows)


def cmd_evolve(cfg: RunConfig, check_frame: bool = False, seed: int | None = None) -> Table:
    """Snapshots of the linear evolution plus drift diagnostics."""
    p, ev = cfg.media, cfg.evolve
    state = initial_state(cfg, seed)
    traj = evolve(p, state, ev.dt, ev.n_steps, ev.record_every)
    x = cfg.grid.x
    rows = []
    for t, s in zip(traj.times, traj.states):
        for xj, e, z in zip(x, s.eta.values, s.xi.values):
            rows.append([t, xj, e, z])
    summary = {
        "n_snapshots": len(traj),
        "t_final": ev.n_steps * ev.dt,
        "max_energy_drift": traj.energy_drift(),
        "max_momentum_drift": traj.momentum_drift(),
        "return_error": traj.final.max_abs_diff(state),
    }
    if check_frame:
        summary["frame_residual"] = frame_equivalence_residual(p, state, ev.dt, ev.n_steps)
    return Table("evolve", EVOLVE_COLUMNS, rows, summary)


def cmd_energy(cfg: RunConfig, seed: int | None = None) -> Table:
    p = cfg.media
    state = initial_state(cfg, seed)
    e = energy(p, state, order=cfg.dno_order, tol=cfg.solver_tol)
    rows = [[name, v] for name, v in e.as_dict().items()]
    rows.append(["quadratic_total", quadratic_energy(p, state)])
    rows.append(["momentum", momentum(state)])
    if cfg.shear is not None:
        rows.append(["background_offset", background_energy_offset(cfg.shear, cfg.grid.length)])
    return Table("energy", ENERGY_COLUMNS, rows)


def cmd_dno_check(cfg: RunConfig, amplitudes: Sequence[float]) -> Table:
    """Expansion error against the boundary-value oracle for ``eta = a cos(k0 x)``."""
    p, grid = cfg.media, cfg.grid
    amps = [float(a) for a in amplitudes]
    if any(a < 0 for a in amps):
        raise ConfigError("amplitudes must be non-negative", field="amplitudes")
    if any(a > 0.5 * p.strip_halfwidth for a in amps):
        raise ConfigError("amplitudes must stay within half the strip half-width", field="amplitudes")
    k0 = 2 * np.pi / grid.length
    f = RealField(grid, np.cos(k0 * grid.x))
    res = BvpResolution(grid.n, cfg.dno_ny)
    errors: dict[tuple[int, int], list[float]] = {}
    rows = []
    for a in amps:
        eta = RealField(grid, a * np.cos(k0 * grid.x))
        for layer in (1, 2):
            ref = dno_bvp(layer, p, eta, f, res, extrapolate=True)
            for order in (0, 1, 2):
                err = float(np.linalg.norm((apply_G(layer, p, eta, order, f) - ref).values) * np.sqrt(grid.dx))
                hist = errors.setdefault((layer, order), [])
                exponent = math.nan
                if hist:
                    a_prev, e_prev = hist[-1]
                    if a_prev > 0 and a > 0 and a != a_prev and e_prev > 0 and err > 0:
                        exponent = math.log(err / e_prev) / math.log(a / a_prev)
                hist.append((a, err))
                rows.append([a, layer, order, err, exponent])
    return Table("dno-check", DNO_CHECK_COLUMNS, rows)


# --- entry point ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="path to the key-value run configuration")
    common.add_argument("--output", help="output path (default: config output.path, else stdout)")
    common.add_argument("--format", choices=("csv", "json"), help="override output.format")
    common.add_argument("--seed", type=int, default=None, help="seed for ic.type = random")
    common.add_argument("--check-frame", action="store_true", help="evolve: report the frame-equivalence residual")

    parser = argparse.ArgumentParser(prog="twolayer", description=__doc__.split("\n\n")[0].strip())
    sub = parser.add_subparsers(dest="command", required=True)
    d = sub.add_parser("dispersion", parents=[common], help="dispersion sweep")
    d.add_argument("--k-min", type=float, default=0.0)
    d.add_argument("--k-max", type=float, default=None, help="default: 10 * 2*pi/grid.length")
    d.add_argument("--n-samples", type=int, default=50)
    sub.add_parser("evolve", parents=[common], help="linear time evolution")
    sub.add_parser("energy", parents=[common], help="energy audit of the initial state")
    c = sub.add_parser("dno-check", parents=[common], help="DNO expansion vs boundary-value oracle")
    c.add_argument("--amplitudes", default=None, help="comma-separated; default 0.01,0.02,0.04 times min(l1, l2)")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        try:
            with open(args.config) as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from None
        cfg = parse_config(text)
        if cfg.shear is not None:
            warnings.warn(
                "shear profile is descriptive only: the dynamics depend on media.kappa alone",
                stacklevel=1,
            )
        fmt = args.format or cfg.output_format
        if args.command == "dispersion":
            k_max = args.k_max if args.k_max is not None else 10 * 2 * np.pi / cfg.grid.length
            table = cmd_dispersion(cfg, args.k_min, k_max, args.n_samples)
        elif args.command == "evolve":
            table = cmd_evolve(cfg, check_frame=args.check_frame, seed=args.seed)
        elif args.command == "energy":
            table = cmd_energy(cfg, seed=args.seed)
        else:
            if args.amplitudes is None:
                amps = [f * cfg.media.strip_halfwidth for f in (0.01, 0.02, 0.04)]
            else:
                try:
                    amps = [float(a) for a in args.amplitudes.split(",")]
                except ValueError:
                    raise ConfigError(f"cannot read amplitudes {args.amplitudes!r}", field="amplitudes") from None
            table = cmd_dno_check(cfg, amps)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ConvergenceError, StripBreachError, OracleError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL

    text = render(table, cfg, fmt)
    path = args.output or cfg.output_path
    if path:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for key, v in table.summary.items():
        print(f"{key}: {_fmt(v)}", file=sys.stderr)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
