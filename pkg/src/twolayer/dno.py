"""
Truncated Dirichlet-Neumann operators of the two layers.

``G_i(eta)`` maps the trace of a layer potential on the interface to its
outward normal derivative scaled by ``sqrt(1 + eta_x**2)``.  The operators are
expanded in powers of ``eta`` up to second order::

    G_i0 = D tanh(h_i D)
    G_11 =  D eta D - G_10 eta G_10
    G_21 = -D eta D + G_20 eta G_20
    G_i2 = -1/2 (D^2 eta^2 G_i0 - 2 G_i0 eta G_i0 eta G_i0 + G_i0 eta^2 D^2)

with ``D = -i d/dx``.  Every multiplication by ``eta`` (or ``eta**2``) is
sandwiched between 2/3-rule projections, ``P eta P``, which keeps each
truncated operator exactly symmetric on the grid.

``B = rho1 G_2 + rho2 G_1`` is inverted iteratively, and the kinetic energy
operator ``G_1 B^-1 G_2`` is assembled from it.
"""

from __future__ import annotations

import logging
import warnings

import numpy as np
from scipy.sparse.linalg import LinearOperator, gmres

from .params import MediaParams, StripBreachError, StripWarning
from .spectral import PeriodicGrid, RealField

__all__ = [
    "ConvergenceError",
    "g0",
    "g1",
    "g2",
    "apply_G",
    "apply_B",
    "solve_B",
    "composite_kinetic",
    "flat_kinetic_symbol",
    "amplitude_guard",
]

log = logging.getLogger(__name__)

MAX_ORDER = 2


class ConvergenceError(RuntimeError):
    """Iterative inversion failed; ``residual`` is the final relative residual."""

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


# --- spectral helpers on raw rfft coefficient arrays -----------------------


def _tanh_symbol(grid: PeriodicGrid, h: float) -> np.ndarray:
    k = grid.k
    return k * np.tanh(h * k)


def _ik(grid: PeriodicGrid) -> np.ndarray:
    ik = 1j * grid.k
    ik[-1] = 0.0
    return ik


def _eta_product(grid: PeriodicGrid, eta: np.ndarray, fh: np.ndarray) -> np.ndarray:
    """``P eta P`` acting on a spectrum; returns a spectrum."""
    mask = grid.dealias_mask
    f = np.fft.irfft(fh * mask, n=grid.n)
    return np.fft.rfft(eta * f) * mask


def _check_pair(eta: RealField, f: RealField):
    if eta.grid != f.grid:
        raise ValueError(f"grid mismatch: {eta.grid} vs {f.grid}")


def _check_layer(layer):
    if layer not in (1, 2):
        raise ValueError(f"layer must be 1 or 2, got {layer!r}")


def _check_order(order):
    if order not in (0, 1, 2):
        raise ValueError(f"truncation order must be 0, 1 or 2, got {order!r}")


def amplitude_guard(params: MediaParams, eta: RealField) -> None:
    """Warn above ``0.5*min(l1, l2)``; fail above ``min(l1, l2)``."""
    a = eta.max_abs()
    lim = params.strip_halfwidth
    if a > lim:
        raise StripBreachError(f"max|eta| = {a:.6g} exceeds the strip half-width {lim:.6g}")
    if a > 0.5 * lim:
        warnings.warn(
            f"max|eta| = {a:.4g} exceeds 0.5*min(l1, l2) = {0.5 * lim:.4g}",
            StripWarning,
            stacklevel=3,
        )


# --- individual expansion terms --------------------------------------------


def _g0_hat(grid, h, fh):
    return _tanh_symbol(grid, h) * fh


def _g1_hat(grid, layer, h, eta, fh):
    ik = _ik(grid)
    t = _tanh_symbol(grid, h)
    # D eta D = -(d/dx) eta (d/dx)
    deta_d = -ik * _eta_product(grid, eta, ik * fh)
    g_eta_g = t * _eta_product(grid, eta, t * fh)
    out = deta_d - g_eta_g
    return out if layer == 1 else -out


def _g2_hat(grid, h, eta, fh):
    k2 = grid.k**2
    t = _tanh_symbol(grid, h)
    eta2 = eta * eta
    a = k2 * _eta_product(grid, eta2, t * fh)
    b = t * _eta_product(grid, eta, t * _eta_product(grid, eta, t * fh))
    c = t * _eta_product(grid, eta2, k2 * fh)
    return -0.5 * (a - 2.0 * b + c)


def g0(h: float, f: RealField) -> RealField:
    """Flat-interface operator ``D tanh(h D)``, symbol ``k tanh(hk)``."""
    if not h > 0:
        raise ValueError(f"layer depth must be positive, got {h}")
    return RealField.from_spectrum(f.grid, _g0_hat(f.grid, h, f.spectrum()))


def g1(layer: int, eta: RealField, f: RealField, h: float) -> RealField:
    """First-order term of ``G_layer(eta)`` for a layer of depth ``h``."""
    _check_layer(layer)
    _check_pair(eta, f)
    if not h > 0:
        raise ValueError(f"layer depth must be positive, got {h}")
    return RealField.from_spectrum(f.grid, _g1_hat(f.grid, layer, h, eta.values, f.spectrum()))


def g2(layer: int, eta: RealField, f: RealField, h: float) -> RealField:
    """Second-order term; identical in form for both layers."""
    _check_layer(layer)
    _check_pair(eta, f)
    if not h > 0:
        raise ValueError(f"layer depth must be positive, got {h}")
    return RealField.from_spectrum(f.grid, _g2_hat(f.grid, h, eta.values, f.spectrum()))


def _G_hat(grid, layer, h, eta, order, fh):
    out = _g0_hat(grid, h, fh)
    if order >= 1:
        out = out + _g1_hat(grid, layer, h, eta, fh)
    if order >= 2:
        out = out + _g2_hat(grid, h, eta, fh)
    return out


def apply_G(layer: int, params: MediaParams, eta: RealField, order: int, f: RealField) -> RealField:
    """Dirichlet-Neumann operator of ``layer`` truncated after ``order`` in ``eta``."""
    _check_layer(layer)
    _check_order(order)
    _check_pair(eta, f)
    if order > 0:
        amplitude_guard(params, eta)
    h = params.depth(layer)
    return RealField.from_spectrum(f.grid, _G_hat(f.grid, layer, h, eta.values, order, f.spectrum()))


def _B_hat(params, grid, eta, order, fh):
    return params.rho1 * _G_hat(grid, 2, params.h2, eta, order, fh) + params.rho2 * _G_hat(
        grid, 1, params.h1, eta, order, fh
    )


def _B0_symbol(params, grid):
    return params.rho1 * _tanh_symbol(grid, params.h2) + params.rho2 * _tanh_symbol(grid, params.h1)


def apply_B(params: MediaParams, eta: RealField, order: int, f: RealField) -> RealField:
    """``rho1 G_2(eta) + rho2 G_1(eta)``."""
    _check_order(order)
    _check_pair(eta, f)
    if order > 0:
        amplitude_guard(params, eta)
    return RealField.from_spectrum(f.grid, _B_hat(params, f.grid, eta.values, order, f.spectrum()))


# --- inversion of B ----------------------------------------------------------


def _solve_B_hat(params, grid, eta, order, rh, tol, maxiter):
    """Solve ``B f = rhs`` on spectra with ``f_hat[0] = 0``; returns (f_hat, rel_residual)."""
    b0 = _B0_symbol(params, grid)
    inv_b0 = np.zeros_like(b0)
    inv_b0[1:] = 1.0 / b0[1:]
    rnorm = np.linalg.norm(rh)
    if rnorm == 0.0:
        return np.zeros_like(rh), 0.0
    fh = inv_b0 * rh
    if order == 0:
        res = np.linalg.norm(b0 * fh - rh) / rnorm
        return fh, res

    def residual(fh):
        return rh - _B_hat(params, grid, eta, order, fh)

    # preconditioned fixed point f <- B0^-1 (rhs - (B - B0) f)
    r = residual(fh)
    res = np.linalg.norm(r) / rnorm
    prev = np.inf
    it = 0
    while res > tol and it < maxiter:
        fh = fh + inv_b0 * r
        r = residual(fh)
        prev, res = res, np.linalg.norm(r) / rnorm
        it += 1
        if res > 0.5 * prev:
            break
    if res <= tol:
        log.debug("solve_B: fixed point converged in %d iterations (res %.2e)", it, res)
        return fh, res

    # contraction stalled: GMRES on the real representation, same preconditioner
    log.debug("solve_B: fixed point stalled at res %.2e after %d iterations; using GMRES", res, it)
    n = grid.n

    def to_real(ch):
        return np.fft.irfft(ch, n=n)

    def B_real(v):
        return to_real(_B_hat(params, grid, eta, order, np.fft.rfft(v)))

    def M_real(v):
        return to_real(inv_b0 * np.fft.rfft(v))

    A = LinearOperator((n, n), matvec=B_real, dtype=float)
    M = LinearOperator((n, n), matvec=M_real, dtype=float)
    x0 = to_real(fh)
    x, info = gmres(A, to_real(rh), x0=x0, M=M, rtol=0.1 * tol, atol=0.0, restart=min(n, 60), maxiter=max(1, maxiter))
    fh = np.fft.rfft(x)
    fh[0] = 0.0
    res = np.linalg.norm(residual(fh)) / rnorm
    return fh, res


def solve_B(
    params: MediaParams,
    eta: RealField,
    order: int,
    rhs: RealField,
    tol: float = 1e-10,
    maxiter: int = 200,
) -> RealField:
    """Zero-mean ``f`` with ``||B f - rhs|| <= tol ||rhs||``.

    ``B`` annihilates constants, so ``rhs`` must have zero mean and the
    returned solution is gauged to zero mean.

    Raises
    ------
    ValueError
        If ``rhs`` has a nonzero mean.
    ConvergenceError
        If the residual contract cannot be met within ``maxiter`` iterations.
    """
    _check_order(order)
    _check_pair(eta, rhs)
    if order > 0:
        amplitude_guard(params, eta)
    grid = rhs.grid
    if abs(rhs.mean()) > 1e-12 * max(rhs.max_abs(), np.finfo(float).tiny):
        raise ValueError(
            f"rhs must have zero mean (B annihilates constants), got mean {rhs.mean():.3e}"
        )
    rh = rhs.spectrum()
    rh[0] = 0.0
    fh, _ = _solve_B_hat(params, grid, eta.values, order, rh, tol, maxiter)
    fh[0] = 0.0
    # the residual contract is re-checked on the returned field
    f = RealField.from_spectrum(grid, fh)
    target = np.fft.irfft(rh, n=grid.n)
    r = np.fft.irfft(_B_hat(params, grid, eta.values, order, f.spectrum()), n=grid.n) - target
    rnorm = np.linalg.norm(target)
    res = np.linalg.norm(r) / rnorm if rnorm > 0 else 0.0
    if res > tol:
        raise ConvergenceError(f"solve_B did not reach tol {tol:.1e}; residual {res:.3e}", res)
    return f


def flat_kinetic_symbol(params: MediaParams, k) -> np.ndarray:
    """Symbol of ``G_1 B^-1 G_2`` at ``eta = 0``.

    ``k tanh(h1 k) tanh(h2 k) / (rho1 tanh(h2 k) + rho2 tanh(h1 k))``, zero at
    ``k = 0``.
    """
    k = np.abs(np.asarray(k, dtype=float))
    t1, t2 = np.tanh(params.h1 * k), np.tanh(params.h2 * k)
    den = params.rho1 * t2 + params.rho2 * t1
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(k > 0, k * t1 * t2 / np.where(den > 0, den, 1.0), 0.0)
    return out


def composite_kinetic(
    params: MediaParams,
    eta: RealField,
    order: int,
    xi: RealField,
    tol: float = 1e-10,
) -> RealField:
    """``G_1(eta) B(eta)^-1 G_2(eta) xi`` at the given truncation order.

    The mean of ``xi`` is dropped (``G_2`` annihilates constants).
    """
    _check_order(order)
    _check_pair(eta, xi)
    if order == 0:
        lam = flat_kinetic_symbol(params, xi.grid.k)
        return RealField.from_spectrum(xi.grid, lam * xi.spectrum())
    g2xi = apply_G(2, params, eta, order, xi)
    # exact zero-mean by construction; remove round-off before the gauge check
    g2xi = g2xi - RealField(xi.grid, np.full(xi.grid.n, g2xi.mean()))
    f = solve_B(params, eta, order, g2xi, tol=tol)
    return apply_G(1, params, eta, order, f)
