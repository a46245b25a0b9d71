import numpy as np
import pytest

from twolayer.params import MediaParams
from twolayer.spectral import PeriodicGrid, RealField

# high-precision scalar references (mpmath, 30 digits)
TANH1 = 0.761594155955764888119458282605
THREE_TANH1 = 2.28478246786729466435837484781
TANH1_OVER_3 = 0.253864718651921629373152760868


@pytest.fixture
def grid64():
    return PeriodicGrid(64)


@pytest.fixture
def unit_params():
    """h1 = h2 = 1, rho1 = 2, rho2 = 1: the operator examples' parameter set."""
    return MediaParams(rho1=2.0, rho2=1.0, h1=1.0, h2=1.0, l1=0.5, l2=0.5, kappa=0.0, gravity=9.8)


@pytest.fixture
def ocean_params():
    return MediaParams(rho1=1000.0, rho2=990.0, h1=100.0, h2=50.0, l1=20.0, l2=20.0, kappa=0.0, gravity=9.8)


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


def random_field(grid, rng, amp=1.0, mmax=None, zero_mean=True):
    """Smooth band-limited random field with ``max|f| = amp``."""
    mmax = mmax or grid.n // 6
    ch = np.zeros(grid.n // 2 + 1, dtype=complex)
    m = np.arange(1, mmax + 1)
    ch[1 : mmax + 1] = (rng.standard_normal(mmax) + 1j * rng.standard_normal(mmax)) / m
    if not zero_mean:
        ch[0] = grid.n * rng.standard_normal()
    f = np.fft.irfft(ch, n=grid.n)
    return RealField(grid, amp * f / np.max(np.abs(f)))
