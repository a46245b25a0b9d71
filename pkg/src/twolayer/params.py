"""Physical parameters, the background shear profile and the wave state."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .spectral import PeriodicGrid, RealField

__all__ = [
    "MediaParams",
    "ShearProfile",
    "WaveState",
    "StripBreachError",
    "StripWarning",
    "check_strip",
]


class StripBreachError(ValueError):
    """The interface left the band ``-l1 < eta < l2`` where the current is uniform."""

    def __init__(self, message: str, time: float | None = None):
        super().__init__(message)
        self.time = time


class StripWarning(UserWarning):
    pass


@dataclass(frozen=True)
class MediaParams:
    """Two-layer fluid between a flat bed at ``y = -h1`` and a rigid lid at ``y = h2``.

    Index 1 is the lower (dense) layer, index 2 the upper one.  ``l1`` and
    ``l2`` bound the strip ``-l1 <= y <= l2`` in which the background current
    equals ``kappa``.  ``rho2 = 0`` is accepted and gives the single-layer
    (free-surface-like) limit.
    """

    rho1: float
    rho2: float
    h1: float
    h2: float
    l1: float
    l2: float
    kappa: float = 0.0
    gravity: float = 9.81

    def __post_init__(self):
        for name in ("rho1", "rho2", "h1", "h2", "l1", "l2", "kappa", "gravity"):
            v = getattr(self, name)
            if not np.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v}")
            object.__setattr__(self, name, float(v))
        if not self.rho1 > self.rho2 >= 0:
            raise ValueError(
                f"stability condition rho1 > rho2 violated (rho1={self.rho1}, rho2={self.rho2})"
            )
        if not self.h1 > self.l1 > 0:
            raise ValueError(f"need h1 > l1 > 0, got h1={self.h1}, l1={self.l1}")
        if not self.h2 > self.l2 > 0:
            raise ValueError(f"need h2 > l2 > 0, got h2={self.h2}, l2={self.l2}")
        if self.gravity <= 0:
            raise ValueError(f"gravity must be positive, got {self.gravity}")

    @property
    def reduced_buoyancy(self) -> float:
        """``(rho1 - rho2) * g``, the restoring coefficient of the interface."""
        return (self.rho1 - self.rho2) * self.gravity

    @property
    def strip_halfwidth(self) -> float:
        return min(self.l1, self.l2)

    def depth(self, layer: int) -> float:
        if layer == 1:
            return self.h1
        if layer == 2:
            return self.h2
        raise ValueError(f"layer must be 1 or 2, got {layer!r}")


def _as_samples(pairs) -> np.ndarray:
    a = np.asarray(pairs, dtype=float)
    if a.ndim != 2 or a.shape[1] != 2 or a.shape[0] < 2:
        raise ValueError("profile samples must be a sequence of at least two (y, U) pairs")
    if not np.all(np.isfinite(a)):
        raise ValueError("profile samples must be finite")
    if np.any(np.diff(a[:, 0]) <= 0):
        raise ValueError("profile y values must be strictly increasing")
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class ShearProfile:
    """Background current ``U(y)`` outside the strip.

    ``lower_samples`` run from ``(-h1, 0)`` up to ``(-l1, kappa)``;
    ``upper_samples`` from ``(l2, kappa)`` up to ``(h2, -sigma)``.  ``U`` is
    the piecewise-linear interpolant of the samples.  Nothing in the wave
    dynamics reads this object; it only feeds the constant energy offset.
    """

    params: MediaParams
    sigma: float
    upper_samples: Sequence[tuple[float, float]]
    lower_samples: Sequence[tuple[float, float]]

    def __post_init__(self):
        p = self.params
        if not self.sigma >= 0:
            raise ValueError(f"sigma must be >= 0, got {self.sigma}")
        up = _as_samples(self.upper_samples)
        lo = _as_samples(self.lower_samples)
        object.__setattr__(self, "upper_samples", up)
        object.__setattr__(self, "lower_samples", lo)
        tol = 1e-12 * max(1.0, p.h1, p.h2)
        utol = 1e-12 * max(1.0, abs(p.kappa), self.sigma)

        def close(a, b, t):
            return abs(a - b) <= t

        checks = [
            (close(lo[0, 0], -p.h1, tol) and close(lo[0, 1], 0.0, utol), "U(-h1) = 0"),
            (close(lo[-1, 0], -p.l1, tol) and close(lo[-1, 1], p.kappa, utol), "U(-l1) = kappa"),
            (close(up[0, 0], p.l2, tol) and close(up[0, 1], p.kappa, utol), "U(l2) = kappa"),
            (close(up[-1, 0], p.h2, tol) and close(up[-1, 1], -self.sigma, utol), "U(h2) = -sigma"),
        ]
        for ok, what in checks:
            if not ok:
                raise ValueError(f"shear profile must satisfy {what}")

    def __call__(self, y):
        """Evaluate ``U(y)`` on ``[-h1, h2]``."""
        y = np.asarray(y, dtype=float)
        p = self.params
        if np.any((y < -p.h1) | (y > p.h2)):
            raise ValueError("y outside [-h1, h2]")
        lo, up = self.lower_samples, self.upper_samples
        return np.where(
            y <= -p.l1,
            np.interp(y, lo[:, 0], lo[:, 1]),
            np.where(y >= p.l2, np.interp(y, up[:, 0], up[:, 1]), p.kappa),
        )

    @staticmethod
    def linear(params: MediaParams, sigma: float = 0.0) -> "ShearProfile":
        """Profile that ramps linearly between the boundary and strip values."""
        p = params
        return ShearProfile(
            p,
            sigma,
            upper_samples=[(p.l2, p.kappa), (p.h2, -sigma)],
            lower_samples=[(-p.h1, 0.0), (-p.l1, p.kappa)],
        )


class WaveState:
    """Interface elevation ``eta`` (m) and weighted interface potential ``xi``.

    ``xi = rho1*xi1 - rho2*xi2`` where ``xi_i`` are the traces of the layer
    velocity potentials on the interface.  ``eta`` must have zero mean.
    """

    __slots__ = ("eta", "xi")

    def __init__(self, eta: RealField, xi: RealField, mean_tol: float = 1e-10):
        if eta.grid != xi.grid:
            raise ValueError(f"grid mismatch: {eta.grid} vs {xi.grid}")
        scale = max(1.0, eta.max_abs())
        if abs(eta.mean()) > mean_tol * scale:
            raise ValueError(f"eta must have zero mean, got mean {eta.mean():.3e}")
        self.eta = eta
        self.xi = xi

    @property
    def grid(self) -> PeriodicGrid:
        return self.eta.grid

    @classmethod
    def zeros(cls, grid: PeriodicGrid) -> "WaveState":
        return cls(grid.zeros(), grid.zeros())

    @classmethod
    def from_arrays(cls, grid: PeriodicGrid, eta, xi) -> "WaveState":
        return cls(RealField(grid, eta), RealField(grid, xi))

    def max_abs_diff(self, other: "WaveState") -> float:
        return max((self.eta - other.eta).max_abs(), (self.xi - other.xi).max_abs())

    def __repr__(self):
        return f"WaveState(n={self.grid.n}, max|eta|={self.eta.max_abs():.3g}, max|xi|={self.xi.max_abs():.3g})"


def check_strip(params: MediaParams, eta: RealField, time: float | None = None) -> None:
    """Enforce ``-l1 < eta < l2``.

    Warns once ``max|eta|`` exceeds half the strip half-width and raises
    :class:`StripBreachError` when the interface leaves the strip.
    """
    lo, hi = float(np.min(eta.values)), float(np.max(eta.values))
    if lo <= -params.l1 or hi >= params.l2:
        when = "" if time is None else f" at t = {time!r}"
        raise StripBreachError(
            f"interface left the strip{when}: min eta = {lo:.6g} (limit {-params.l1}), "
            f"max eta = {hi:.6g} (limit {params.l2})",
            time=time,
        )
    if max(-lo, hi) > 0.5 * params.strip_halfwidth:
        warnings.warn(
            f"max|eta| = {max(-lo, hi):.4g} exceeds half the strip half-width "
            f"{params.strip_halfwidth:.4g}; expansion accuracy degrades",
            StripWarning,
            stacklevel=3,
        )
