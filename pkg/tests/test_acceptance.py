"""Acceptance criteria; each test prints one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` (the lines are printed with
output capture disabled).
"""

import ast
import inspect
import json
from dataclasses import replace

import numpy as np
import pytest

import twolayer.cli as cli
from twolayer import dispersion, dno, evolution, hamiltonian, oracle, spectral
from twolayer.config import parse_config
from twolayer.dispersion import deep_water_speed, long_wave_speed, single_medium_speed, wave_speed
from twolayer.dno import apply_B, apply_G, composite_kinetic, g0, solve_B
from twolayer.evolution import evolve, frame_equivalence_residual, random_state, travelling_wave
from twolayer.hamiltonian import quadratic_energy, quadratic_variational_derivatives
from twolayer.oracle import BvpResolution, dno_bvp, functional_gradient_fd
from twolayer.params import MediaParams, WaveState
from twolayer.spectral import PeriodicGrid, RealField, inner_product

from conftest import random_field
from test_audit import ALLOWED, BASE, CLI_DYNAMICS, shear_reads

OCEAN = MediaParams(rho1=1000.0, rho2=990.0, h1=100.0, h2=50.0, l1=20.0, l2=20.0, gravity=9.8)
UNIT = MediaParams(rho1=2.0, rho2=1.0, h1=1.0, h2=1.0, l1=0.5, l2=0.5, gravity=9.8)
MIXED = MediaParams(rho1=1.3, rho2=1.0, h1=1.0, h2=0.6, l1=0.4, l2=0.3)


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number} ({title}): {detail}")
        assert ok, detail

    return emit


def test_criterion_1_dispersion_limits(report):
    long = long_wave_speed(OCEAN).c_plus
    near = wave_speed(OCEAN, 1e-6).c_plus
    e_long = abs(near - long) / long
    # both tanh factors saturated: h k >= 20 for the shallower layer
    k = 20.0 / min(OCEAN.h1, OCEAN.h2)
    deep = deep_water_speed(OCEAN, k).c_plus
    e_deep = abs(wave_speed(OCEAN, k).c_plus - deep) / deep
    ks = np.linspace(0.0, 2.0, 41)
    single = single_medium_speed(OCEAN, ks).c_plus
    direct = wave_speed(replace(OCEAN, rho2=0.0), ks).c_plus
    e_single = float(np.max(np.abs(direct - single) / single))
    ok = e_long <= 1e-6 and abs(long - 1.81345) < 5e-6 and e_deep <= 1e-8 and e_single <= 1e-12
    report(1, "dispersion limits", ok, f"long {e_long:.2e} (c={long:.6f}), deep {e_deep:.2e}, single {e_single:.2e}")


def test_criterion_2_dno_correctness(report):
    grid = PeriodicGrid(64)
    f = RealField(grid, np.cos(grid.x))
    exact = g0(1.0, f).values
    errs = []
    for ny in (32, 64, 128):
        out = dno_bvp(1, UNIT, grid.zeros(), f, BvpResolution(64, ny))
        errs.append(np.max(np.abs(out.values - exact)) / np.max(np.abs(exact)))
    rates = [float(np.log2(a / b)) for a, b in zip(errs, errs[1:])]

    exps = []
    for layer in (1, 2):
        e = []
        for a in (0.01, 0.02, 0.04):
            eta = RealField(grid, a * np.cos(grid.x))
            ref = dno_bvp(layer, UNIT, eta, f, BvpResolution(64, 128), extrapolate=True)
            e.append(np.linalg.norm((apply_G(layer, UNIT, eta, 2, f) - ref).values))
        exps += [float(np.log2(e[1] / e[0])), float(np.log2(e[2] / e[1]))]

    ok = errs[1] <= 1e-3 and all(abs(r - 2.0) <= 0.3 for r in rates) and all(abs(x - 3.0) <= 0.5 for x in exps)
    report(
        2,
        "DNO correctness",
        ok,
        f"flat error {errs[1]:.2e} at ny=64, orders {np.round(rates, 3).tolist()}, "
        f"order-2 exponents {np.round(exps, 3).tolist()}",
    )


def test_criterion_3_conservation(report):
    p = MediaParams(rho1=1000.0, rho2=990.0, h1=1.0, h2=0.5, l1=0.2, l2=0.2, kappa=0.7, gravity=9.8)
    s = random_state(PeriodicGrid(128), np.random.default_rng(3), eta_amp=0.01, xi_amp=1.0)
    tr = evolve(p, s, 0.01, 10_000, record_every=10)
    scale = s.eta.max_abs() * s.xi.max_abs() * s.grid.length
    dh, dm = tr.energy_drift(), tr.momentum_drift()
    ok = dh <= 1e-12 and dm <= 1e-12 * scale
    report(3, "conservation", ok, f"|dH|/|H| {dh:.2e}, |dP| {dm:.2e} (scale {scale:.2e})")


def test_criterion_4_frame_equivalence(report):
    p = MediaParams(rho1=1000.0, rho2=990.0, h1=1.0, h2=0.5, l1=0.2, l2=0.2, gravity=9.8)
    rng = np.random.default_rng(4)
    worst = 0.0
    for kappa in (-2.0, 0.5, 3.0):
        for _ in range(3):
            s = random_state(PeriodicGrid(64, 10.0), rng, eta_amp=0.01)
            worst = max(worst, frame_equivalence_residual(replace(p, kappa=kappa), s, 0.01, 1000))
    report(4, "frame equivalence", worst <= 1e-10, f"max residual {worst:.2e} over 9 runs")


def test_criterion_5_variational_derivatives(report):
    grid = PeriodicGrid(64)
    p = MediaParams(rho1=1000.0, rho2=990.0, h1=1.0, h2=1.0, l1=0.5, l2=0.5, kappa=0.8, gravity=9.8)
    rng = np.random.default_rng(5)
    worst = 0.0
    for _ in range(20):
        s = WaveState(random_field(grid, rng, 0.05), random_field(grid, rng))
        d = random_field(grid, rng)
        de, dx = quadratic_variational_derivatives(p, s)
        for comp, g in (("eta", de), ("xi", dx)):
            exact = inner_product(g, d)
            fd = functional_gradient_fd(lambda st: quadratic_energy(p, st), s, d, component=comp)
            worst = max(worst, abs(fd - exact) / abs(exact))
    report(5, "variational derivatives", worst <= 1e-6, f"max relative gap {worst:.2e} over 20 states")


def test_criterion_6_modal_frequency(report):
    p = MediaParams(rho1=1000.0, rho2=990.0, h1=1.0, h2=0.5, l1=0.2, l2=0.2, kappa=0.35, gravity=9.8)
    grid = PeriodicGrid(64)
    worst = 0.0
    for m in (1, 3):
        k = grid.k[m]
        c = wave_speed(p, k)
        for branch, cb in (("+", c.c_plus), ("-", c.c_minus)):
            expected = k * cb
            period = 2 * np.pi / abs(k * (c.c_plus - p.kappa))
            tr = evolve(p, travelling_wave(p, grid, k, 0.01, branch), 10 * period / 400, 400)
            t = np.array(tr.times)
            ph = np.unwrap([np.angle(s.eta.spectrum()[m]) for s in tr.states])
            measured = -np.polyfit(t, ph, 1)[0]
            worst = max(worst, abs(measured - expected) / abs(expected))
    report(6, "evolution-dispersion consistency", worst <= 1e-8, f"max relative gap {worst:.2e}")


def test_criterion_7_operator_algebra(report):
    grid = PeriodicGrid(64)
    rng = np.random.default_rng(7)
    tol = 1e-12
    worst_g, worst_k, worst_res = 0.0, 0.0, 0.0

    def checked_solve(eta, rhs):
        nonlocal worst_res
        f = solve_B(MIXED, eta, 2, rhs, tol=tol)
        r = np.linalg.norm((apply_B(MIXED, eta, 2, f) - rhs).values) / np.linalg.norm(rhs.values)
        worst_res = max(worst_res, r / tol)
        return f

    def symmetric_K(eta, xi):
        g1xi = apply_G(1, MIXED, eta, 2, xi)
        return (g1xi - MIXED.rho2 * apply_G(1, MIXED, eta, 2, checked_solve(eta, g1xi))) * (1.0 / MIXED.rho1)

    for _ in range(5):
        eta = random_field(grid, rng, 0.05, mmax=32)
        a, b = random_field(grid, rng, mmax=32), random_field(grid, rng, mmax=32)
        for layer in (1, 2):
            for order in (0, 1, 2):
                lhs = inner_product(a, apply_G(layer, MIXED, eta, order, b))
                rhs = inner_product(apply_G(layer, MIXED, eta, order, a), b)
                worst_g = max(worst_g, abs(lhs - rhs))
        ka, kb = symmetric_K(eta, a), symmetric_K(eta, b)
        worst_k = max(worst_k, abs(inner_product(a, kb) - inner_product(ka, b)))
        # the composite as implemented agrees with the symmetric form
        direct = composite_kinetic(MIXED, eta, 2, b, tol=tol)
        worst_k = max(worst_k, float(np.max(np.abs((direct - kb).values))))
    ok = worst_g <= 1e-10 and worst_k <= 1e-10 and worst_res <= 1.0
    report(
        7,
        "operator algebra",
        ok,
        f"G asymmetry {worst_g:.2e}, composite {worst_k:.2e}, worst residual/tol {worst_res:.2f}",
    )


def test_criterion_8_shear_independence(report):
    hits = []
    for module in (spectral, dno, hamiltonian, dispersion, evolution, oracle):
        tree = ast.parse(inspect.getsource(module))
        imports = {n.lineno for n in ast.walk(tree) if isinstance(n, ast.ImportFrom)}
        hits += [
            (module.__name__, f, line)
            for f, line in shear_reads(tree)
            if f not in ALLOWED and not (f is None and line in imports)
        ]
    for name in CLI_DYNAMICS:
        hits += [("cli", name, line) for _, line in shear_reads(ast.parse(inspect.getsource(getattr(cli, name))))]

    rng = np.random.default_rng(8)

    def run(text, fmt):
        cfg = parse_config(text + f"output.format = {fmt}\n")
        return cli.render(cli.cmd_evolve(cfg, check_frame=True, seed=11), cfg, fmt)

    csv0, json0 = run(BASE, "csv"), json.loads(run(BASE, "json"))["data"]
    identical = True
    for _ in range(10):
        up = rng.uniform(-5, 5, 3).tolist()
        lo = rng.uniform(-5, 5, 3).tolist()
        sigma = float(rng.uniform(0, 5))
        shear = (
            f"shear.sigma = {sigma!r}\n"
            f"shear.upper = 10:0.3, 20:{up[0]!r}, 30:{up[1]!r}, 40:{up[2]!r}, 50:{-sigma!r}\n"
            f"shear.lower = -100:0, -80:{lo[0]!r}, -60:{lo[1]!r}, -40:{lo[2]!r}, -20:0.3\n"
        )
        identical &= run(BASE + shear, "csv") == csv0
        identical &= json.loads(run(BASE + shear, "json"))["data"] == json0
    ok = not hits and identical
    report(8, "shear independence", ok, f"audit hits {hits}, outputs bit-identical over 10 profiles: {identical}")
