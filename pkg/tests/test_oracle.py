import numpy as np
import pytest

from twolayer.dno import apply_G, g0
from twolayer.hamiltonian import energy, quadratic_energy
from twolayer.oracle import BvpResolution, dno_bvp, functional_gradient_fd
from twolayer.params import MediaParams, WaveState
from twolayer.spectral import PeriodicGrid, RealField, inner_product

from conftest import random_field

pytestmark = pytest.mark.slow


@pytest.fixture(scope="module")
def setup():
    p = MediaParams(rho1=2.0, rho2=1.0, h1=1.0, h2=1.0, l1=0.5, l2=0.5)
    g = PeriodicGrid(64)
    return p, g, RealField(g, np.cos(g.x))


def test_resolution_bounds():
    with pytest.raises(ValueError):
        BvpResolution(16, 64)
    with pytest.raises(ValueError):
        BvpResolution(64, 16)


def test_nx_must_be_multiple(setup):
    p, g, f = setup
    with pytest.raises(ValueError, match="multiple"):
        dno_bvp(1, p, g.zeros(), f, BvpResolution(96, 32))


@pytest.mark.parametrize("layer", [1, 2])
def test_flat_strip_second_order(setup, layer):
    p, g, f = setup
    exact = g0(1.0, f).values
    errs = []
    for ny in (32, 64, 128):
        out = dno_bvp(layer, p, g.zeros(), f, BvpResolution(64, ny))
        errs.append(np.max(np.abs(out.values - exact)) / np.max(np.abs(exact)))
    assert errs[1] < 1e-3
    for a, b in zip(errs, errs[1:]):
        assert 4 * 0.8 <= a / b <= 4 * 1.2


def test_constant_trace(setup):
    p, g, _ = setup
    eta = RealField(g, 0.05 * np.cos(g.x))
    out = dno_bvp(1, p, eta, RealField(g, np.full(64, 3.0)), BvpResolution(64, 32))
    assert out.max_abs() < 1e-10


def test_refined_x_grid(setup):
    p, g, f = setup
    eta = RealField(g, 0.05 * np.cos(g.x))
    a = dno_bvp(1, p, eta, f, BvpResolution(64, 64))
    b = dno_bvp(1, p, eta, f, BvpResolution(128, 64))
    np.testing.assert_allclose(a.values, b.values, atol=1e-10)


def test_linear_in_trace(setup, rng):
    p, g, _ = setup
    eta = RealField(g, 0.05 * np.cos(g.x))
    f, h = random_field(g, rng), random_field(g, rng)
    res = BvpResolution(64, 48)
    lhs = dno_bvp(2, p, eta, 2.0 * f - h, res)
    rhs = 2.0 * dno_bvp(2, p, eta, f, res) - dno_bvp(2, p, eta, h, res)
    np.testing.assert_allclose(lhs.values, rhs.values, atol=1e-9)


def test_discrete_self_adjoint(setup, rng):
    p, g, _ = setup
    eta = RealField(g, 0.05 * np.cos(g.x) + 0.02 * np.sin(2 * g.x))
    f, h = random_field(g, rng, mmax=6), random_field(g, rng, mmax=6)
    res = BvpResolution(64, 128)
    lhs = inner_product(f, dno_bvp(1, p, eta, h, res, extrapolate=True))
    rhs = inner_product(dno_bvp(1, p, eta, f, res, extrapolate=True), h)
    assert abs(lhs - rhs) < 1e-6 * abs(lhs)


@pytest.mark.parametrize("layer", [1, 2])
def test_order_two_cubic_scaling(setup, layer):
    p, g, f = setup
    res = BvpResolution(64, 96)
    errs = []
    for a in (0.01, 0.02):
        eta = RealField(g, a * np.cos(g.x))
        ref = dno_bvp(layer, p, eta, f, res, extrapolate=True)
        errs.append(np.linalg.norm((apply_G(layer, p, eta, 2, f) - ref).values))
    assert 4.0 <= errs[1] / errs[0] <= 16.0


def test_g1_against_oracle_minus_g0(setup):
    p, g, f = setup
    a = 0.01
    eta = RealField(g, a * np.cos(g.x))
    ref = dno_bvp(1, p, eta, f, BvpResolution(64, 96), extrapolate=True) - g0(1.0, f)
    first = apply_G(1, p, eta, 1, f) - g0(1.0, f)
    # leftover is the quadratic term, O(a^2) against an O(a) signal
    assert np.linalg.norm((ref - first).values) < 5 * a * np.linalg.norm(first.values)


class TestFunctionalGradient:
    def setup_method(self):
        self.p = MediaParams(rho1=1000.0, rho2=990.0, h1=1.0, h2=0.5, l1=0.2, l2=0.2, kappa=0.7, gravity=9.8)
        self.g = PeriodicGrid(32)

    def test_potential_at_rest(self):
        def potential(s):
            return energy(self.p, s, order=0).potential

        d = RealField(self.g, np.cos(self.g.x))
        assert functional_gradient_fd(potential, WaveState.zeros(self.g), d, 1e-6) == 0.0

    @pytest.mark.parametrize("step", [1e-1, 1e-3, 1e-6])
    def test_quadratic_exact_for_any_step(self, rng, step):
        s = WaveState(random_field(self.g, rng, 0.01), random_field(self.g, rng))
        d = random_field(self.g, rng)
        ref = functional_gradient_fd(lambda st: quadratic_energy(self.p, st), s, d, 1e-2, component="xi")
        got = functional_gradient_fd(lambda st: quadratic_energy(self.p, st), s, d, step, component="xi")
        assert got == pytest.approx(ref, rel=1e-8)

    def test_bad_arguments(self, rng):
        s = WaveState.zeros(self.g)
        with pytest.raises(ValueError):
            functional_gradient_fd(lambda st: 0.0, s, self.g.zeros(), step=0.0)
        with pytest.raises(ValueError):
            functional_gradient_fd(lambda st: 0.0, s, self.g.zeros(), component="phi")
