"""
Linear dispersion law of interfacial waves in the strip current.

The two branches satisfy::

    (c - kappa)^2 = g (rho1 - rho2) tanh(h1 k) tanh(h2 k) / (k (rho1 tanh(h2 k) + rho2 tanh(h1 k)))

with the long-wave limit ``g h1 h2 (rho1 - rho2) / (rho1 h2 + rho2 h1)`` at
``k = 0``.  All functions accept scalars or arrays of ``k``; negative ``k``
is folded to ``|k|``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .params import MediaParams

__all__ = [
    "DispersionBranch",
    "speed_squared",
    "wave_speed",
    "deep_water_speed",
    "long_wave_speed",
    "single_medium_speed",
    "group_velocity",
]


@dataclass(frozen=True)
class DispersionBranch:
    """Phase speeds and angular frequencies of the two branches at ``k``."""

    k: np.ndarray | float
    c_plus: np.ndarray | float
    c_minus: np.ndarray | float

    @property
    def omega_plus(self):
        return self.c_plus * self.k

    @property
    def omega_minus(self):
        return self.c_minus * self.k


def speed_squared(g, rho1, rho2, h1, h2, k):
    """``(c - kappa)**2`` from raw constants; the ``k = 0`` entries take the long-wave limit."""
    k = np.abs(np.asarray(k, dtype=float))
    t1, t2 = np.tanh(h1 * k), np.tanh(h2 * k)
    den = rho1 * t2 + rho2 * t1
    limit = g * h1 * h2 * (rho1 - rho2) / (rho1 * h2 + rho2 * h1)
    with np.errstate(divide="ignore", invalid="ignore"):
        r = g * (rho1 - rho2) * t1 * t2 / (k * den)
    return np.where(k > 0, r, limit)


def _branch(kappa, k, r):
    s = np.sqrt(r)
    k = np.abs(np.asarray(k, dtype=float))
    if k.ndim == 0:
        return DispersionBranch(float(k), float(kappa + s), float(kappa - s))
    return DispersionBranch(k, kappa + s, kappa - s)


def wave_speed(params: MediaParams, k) -> DispersionBranch:
    p = params
    r = speed_squared(p.gravity, p.rho1, p.rho2, p.h1, p.h2, k)
    return _branch(p.kappa, k, r)


def long_wave_speed(params: MediaParams) -> DispersionBranch:
    """Nondispersive ``k -> 0`` limit."""
    p = params
    r = p.gravity * p.h1 * p.h2 * (p.rho1 - p.rho2) / (p.rho1 * p.h2 + p.rho2 * p.h1)
    return _branch(p.kappa, 0.0, r)


def deep_water_speed(params: MediaParams, k) -> DispersionBranch:
    """Both layers infinitely deep: ``(c - kappa)^2 = (g/k)(rho1 - rho2)/(rho1 + rho2)``."""
    k = np.abs(np.asarray(k, dtype=float))
    if np.any(k == 0):
        raise ValueError("deep-water speed diverges at k = 0")
    p = params
    r = p.gravity / k * (p.rho1 - p.rho2) / (p.rho1 + p.rho2)
    return _branch(p.kappa, k, r)


def single_medium_speed(params: MediaParams, k) -> DispersionBranch:
    """``rho2 -> 0``: ``(c - kappa)^2 = (g/k) tanh(h1 k)``, ``g h1`` at ``k = 0``."""
    p = params
    r = speed_squared(p.gravity, p.rho1, 0.0, p.h1, p.h2, k)
    return _branch(p.kappa, k, r)


def group_velocity(params: MediaParams, k, branch: str = "+", rel_step: float = 1e-5):
    """``d Omega / dk`` by centered differences with one Richardson extrapolation."""
    if branch not in ("+", "-"):
        raise ValueError(f"branch must be '+' or '-', got {branch!r}")
    k = np.asarray(k, dtype=float)
    if np.any(k <= 0):
        raise ValueError("group velocity requires k > 0")
    sign = 1.0 if branch == "+" else -1.0

    def omega(kk):
        p = params
        return kk * (p.kappa + sign * np.sqrt(speed_squared(p.gravity, p.rho1, p.rho2, p.h1, p.h2, kk)))

    h = rel_step * k

    def central(hh):
        return (omega(k + hh) - omega(k - hh)) / (2 * hh)

    out = (4.0 * central(h / 2) - central(h)) / 3.0
    return float(out) if out.ndim == 0 else out
