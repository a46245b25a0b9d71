import warnings

import numpy as np
import pytest

from twolayer.params import MediaParams, ShearProfile, StripBreachError, StripWarning, WaveState, check_strip
from twolayer.spectral import PeriodicGrid, RealField

BASE = dict(rho1=1000.0, rho2=990.0, h1=100.0, h2=50.0, l1=20.0, l2=10.0, kappa=0.5, gravity=9.8)


def make(**kw):
    return MediaParams(**{**BASE, **kw})


@pytest.mark.parametrize(
    "kw, match",
    [
        (dict(rho2=1000.0), "stability"),
        (dict(rho2=1010.0), "stability"),
        (dict(rho2=-1.0), "stability"),
        (dict(l1=100.0), "h1 > l1"),
        (dict(l2=0.0), "h2 > l2"),
        (dict(gravity=0.0), "gravity"),
        (dict(kappa=np.nan), "finite"),
    ],
)
def test_media_invariants(kw, match):
    with pytest.raises(ValueError, match=match):
        make(**kw)


def test_negative_kappa_allowed():
    assert make(kappa=-2.0).kappa == -2.0


def test_single_medium_limit_allowed():
    assert make(rho2=0.0).rho2 == 0.0


class TestShearProfile:
    def test_linear_profile_values(self):
        p = make()
        prof = ShearProfile.linear(p, sigma=0.3)
        np.testing.assert_allclose(prof([-100, -20, 0, 10, 50]), [0, 0.5, 0.5, 0.5, -0.3])

    @pytest.mark.parametrize(
        "upper, lower",
        [
            ([(10, 0.4), (50, -0.3)], [(-100, 0), (-20, 0.5)]),  # U(l2) != kappa
            ([(10, 0.5), (50, -0.3)], [(-100, 0.1), (-20, 0.5)]),  # U(-h1) != 0
            ([(10, 0.5), (50, 0.3)], [(-100, 0), (-20, 0.5)]),  # U(h2) != -sigma
            ([(10, 0.5), (40, -0.3)], [(-100, 0), (-20, 0.5)]),  # wrong end point
        ],
    )
    def test_boundary_values(self, upper, lower):
        with pytest.raises(ValueError, match="shear profile must satisfy"):
            ShearProfile(make(), 0.3, upper, lower)

    def test_monotone_y(self):
        with pytest.raises(ValueError, match="increasing"):
            ShearProfile(make(), 0.3, [(10, 0.5), (30, 0.0), (30, 0.1), (50, -0.3)], [(-100, 0), (-20, 0.5)])

    def test_negative_sigma(self):
        with pytest.raises(ValueError):
            ShearProfile.linear(make(), sigma=-0.1)


class TestWaveState:
    def test_zero_mean_required(self):
        g = PeriodicGrid(16)
        with pytest.raises(ValueError, match="zero mean"):
            WaveState(RealField(g, np.full(16, 0.1)), g.zeros())

    def test_xi_mean_allowed(self):
        g = PeriodicGrid(16)
        s = WaveState(g.zeros(), RealField(g, np.full(16, 4.0)))
        assert s.xi.mean() == 4.0

    def test_grid_mismatch(self):
        with pytest.raises(ValueError):
            WaveState(PeriodicGrid(16).zeros(), PeriodicGrid(32).zeros())


class TestStripCheck:
    def setup_method(self):
        self.p = make(l1=1.0, l2=0.5, h1=10.0, h2=10.0)
        self.g = PeriodicGrid(16)

    def eta(self, a):
        return RealField(self.g, a * np.cos(self.g.x))

    def test_inside_quietly(self):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            check_strip(self.p, self.eta(0.2))

    def test_warns_near_edge(self):
        with pytest.warns(StripWarning):
            check_strip(self.p, self.eta(0.4))

    def test_breach_reports_time(self):
        with pytest.raises(StripBreachError) as err:
            check_strip(self.p, self.eta(0.6), time=1.25)
        assert err.value.time == 1.25
        assert "t = 1.25" in str(err.value)
