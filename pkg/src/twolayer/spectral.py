"""
Periodic spectral calculus on a uniform grid.

The real line is replaced by one period ``[0, L)`` sampled at ``n`` nodes.
Fields are real; their spectra follow the ``numpy.fft.rfft`` layout, so the
wavenumber array holds ``k_m = 2*pi*m/L`` for ``m = 0 .. n/2``.

Localized data must be small near the period boundary, otherwise the
periodic images interact (wrap-around).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Literal

import numpy as np

__all__ = [
    "PeriodicGrid",
    "RealField",
    "FourierMultiplier",
    "apply_multiplier",
    "derivative",
    "inner_product",
    "dealias",
    "spectral_norm_squared",
]

Parity = Literal["even", "odd"]


@dataclass(frozen=True)
class PeriodicGrid:
    """Uniform collocation grid on one period.

    Attributes
    ----------
    n : int
        Number of samples, even and at least 8.
    length : float
        Period ``L`` in meters.
    """

    n: int
    length: float = 2 * np.pi

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 8 or self.n % 2:
            raise ValueError(f"grid size must be an even integer >= 8, got n={self.n}")
        if not np.isfinite(self.length) or self.length <= 0:
            raise ValueError(f"grid length must be positive, got {self.length}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "length", float(self.length))

    @property
    def dx(self) -> float:
        return self.length / self.n

    @cached_property
    def x(self) -> np.ndarray:
        x = self.length * np.arange(self.n) / self.n
        x.flags.writeable = False
        return x

    @cached_property
    def k(self) -> np.ndarray:
        """Non-negative wavenumbers of the rfft layout, ``2*pi*m/L``."""
        k = 2 * np.pi * np.arange(self.n // 2 + 1) / self.length
        k.flags.writeable = False
        return k

    @cached_property
    def dealias_mask(self) -> np.ndarray:
        # 2/3 rule: keep |m| <= n/3
        m = np.arange(self.n // 2 + 1)
        mask = m <= self.n // 3
        mask.flags.writeable = False
        return mask

    def field(self, values) -> "RealField":
        return RealField(self, values)

    def zeros(self) -> "RealField":
        return RealField(self, np.zeros(self.n))

    def wavenumber_index(self, k: float, rtol: float = 1e-9) -> int:
        """Return ``m`` with ``k = 2*pi*m/L``; raise if ``k`` is off the lattice."""
        m = k * self.length / (2 * np.pi)
        mi = int(round(m))
        if abs(m - mi) > rtol * max(1.0, abs(m)) or not 0 <= mi <= self.n // 2:
            raise ValueError(
                f"wavenumber {k} is not on the lattice 2*pi*m/{self.length} "
                f"with 0 <= m <= {self.n // 2}"
            )
        return mi


class RealField:
    """Real samples of a field on a :class:`PeriodicGrid`.

    Supports ``+``, ``-`` and scalar ``*`` so linear combinations read
    naturally.  The sample array is read-only.
    """

    __slots__ = ("grid", "values")

    def __init__(self, grid: PeriodicGrid, values):
        values = np.array(values, dtype=float)
        if values.shape != (grid.n,):
            raise ValueError(f"expected {grid.n} samples, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("field samples must be finite")
        values.flags.writeable = False
        self.grid = grid
        self.values = values

    @classmethod
    def from_function(cls, grid: PeriodicGrid, func: Callable[[np.ndarray], np.ndarray]):
        return cls(grid, func(grid.x))

    @classmethod
    def from_spectrum(cls, grid: PeriodicGrid, coeffs) -> "RealField":
        return cls(grid, np.fft.irfft(coeffs, n=grid.n))

    def spectrum(self) -> np.ndarray:
        return np.fft.rfft(self.values)

    def mean(self) -> float:
        return float(np.mean(self.values))

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))

    def _check(self, other: "RealField"):
        if not isinstance(other, RealField):
            return NotImplemented
        if other.grid != self.grid:
            raise ValueError(f"grid mismatch: {self.grid} vs {other.grid}")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return RealField(self.grid, self.values + other.values)

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return RealField(self.grid, self.values - other.values)

    def __mul__(self, scalar):
        if isinstance(scalar, RealField):
            return NotImplemented
        return RealField(self.grid, float(scalar) * self.values)

    __rmul__ = __mul__

    def __neg__(self):
        return RealField(self.grid, -self.values)

    def __repr__(self):
        return f"RealField(n={self.grid.n}, length={self.grid.length}, max|f|={self.max_abs():.3g})"


@dataclass(frozen=True)
class FourierMultiplier:
    """Operator acting diagonally on the spectrum.

    ``parity="even"``: the symbol ``s(k)`` is real and even and the operator
    multiplies the coefficient at ``k`` by ``s(k)``.

    ``parity="odd"``: ``s(k)`` is real and odd and the operator multiplies by
    ``1j * s(k)``; the derivative is the odd symbol ``s(k) = k``.  The Nyquist
    coefficient is dropped because an odd symbol cannot act on it and keep the
    output real.

    ``zero_value`` is the symbol at ``k = 0``; it must be given explicitly so
    removable singularities (``tanh(hk)/k``...) are resolved by the caller.
    """

    symbol: Callable[[np.ndarray], np.ndarray]
    parity: Parity = "even"
    zero_value: float = 0.0
    name: str = "multiplier"

    def __post_init__(self):
        if self.parity not in ("even", "odd"):
            raise ValueError(f"parity must be 'even' or 'odd', got {self.parity!r}")
        if self.parity == "odd" and self.zero_value != 0.0:
            raise ValueError("an odd symbol must vanish at k = 0")
        if not np.isfinite(self.zero_value):
            raise ValueError(f"{self.name}: symbol at k = 0 must be finite")

    def values(self, grid: PeriodicGrid) -> np.ndarray:
        """Real symbol values on ``grid.k`` (including ``k = 0``)."""
        k = grid.k
        s = np.empty_like(k)
        s[0] = self.zero_value
        with np.errstate(all="ignore"):
            s[1:] = self.symbol(k[1:])
        bad = ~np.isfinite(s)
        if np.any(bad):
            kb = k[np.argmax(bad)]
            raise ValueError(f"{self.name}: symbol is not finite at wavenumber k = {float(kb)!r}")
        return s

    def __call__(self, f: RealField) -> RealField:
        return apply_multiplier(self, f)


def apply_multiplier(m: FourierMultiplier, f: RealField) -> RealField:
    s = m.values(f.grid)
    fh = f.spectrum()
    if m.parity == "even":
        out = s * fh
    else:
        out = 1j * s * fh
        out[-1] = 0.0
    return RealField.from_spectrum(f.grid, out)


def _ik(grid: PeriodicGrid) -> np.ndarray:
    ik = 1j * grid.k
    ik = ik.copy()
    ik[-1] = 0.0
    return ik


def derivative(f: RealField) -> RealField:
    """Spectral ``d/dx``; the Nyquist mode is dropped."""
    return RealField.from_spectrum(f.grid, _ik(f.grid) * f.spectrum())


def inner_product(f: RealField, g: RealField) -> float:
    """``integral f*g dx`` over one period with weight ``L/n`` per node."""
    if f.grid != g.grid:
        raise ValueError(f"grid mismatch: {f.grid} vs {g.grid}")
    return float(f.grid.dx * np.dot(f.values, g.values))


def spectral_norm_squared(f: RealField) -> float:
    """Parseval form of ``inner_product(f, f)`` computed from the rfft spectrum."""
    n = f.grid.n
    c = np.abs(f.spectrum() / n) ** 2
    w = np.full(c.shape, 2.0)
    w[0] = 1.0
    w[-1] = 1.0
    return float(f.grid.length * np.sum(w * c))


def dealias(f: RealField) -> RealField:
    """Zero every coefficient above the 2/3 cutoff."""
    return RealField.from_spectrum(f.grid, f.spectrum() * f.grid.dealias_mask)
