"""
Reference solvers used to check the spectral machinery.

:func:`dno_bvp` solves Laplace's equation directly in a deformed layer and
returns the exact (non-expanded) Dirichlet-Neumann map up to discretization
error.  The layer ``-h <= y <= eta(x)`` is mapped onto the rectangle
``0 <= s <= 1`` with ``y = -h + s (h + eta(x))``; the mapped operator is
discretized with Fourier collocation in ``x`` and second-order centered
differences in ``s``, so the error is ``O(1/ny**2)``.  The upper layer is the
mirror image of a lower layer of depth ``h2`` under ``y -> -y``,
``eta -> -eta``.

:func:`functional_gradient_fd` is the centered-difference directional
derivative used to check variational derivatives.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla
from scipy.linalg import toeplitz

from .params import MediaParams, WaveState
from .spectral import PeriodicGrid, RealField, derivative

__all__ = ["BvpResolution", "OracleError", "dno_bvp", "functional_gradient_fd"]


class OracleError(RuntimeError):
    pass


@dataclass(frozen=True)
class BvpResolution:
    """Mesh of the boundary-value solve: ``nx`` columns, ``ny`` vertical intervals."""

    nx: int
    ny: int

    def __post_init__(self):
        if self.nx < 32 or self.ny < 32:
            raise ValueError(f"need nx >= 32 and ny >= 32, got nx={self.nx}, ny={self.ny}")
        if self.nx % 2:
            raise ValueError(f"nx must be even, got {self.nx}")


def _fourier_diff_matrices(n: int, length: float):
    """First and second Fourier differentiation matrices on ``n`` periodic nodes."""
    h = 2 * np.pi / n
    j = np.arange(1, n)
    col1 = np.zeros(n)
    col1[1:] = 0.5 * (-1.0) ** j / np.tan(j * h / 2)
    D1 = toeplitz(col1, np.r_[0.0, col1[:0:-1]])
    col2 = np.zeros(n)
    col2[0] = -(np.pi**2) / (3 * h**2) - 1.0 / 6
    col2[1:] = -0.5 * (-1.0) ** j / np.sin(j * h / 2) ** 2
    D2 = toeplitz(col2)
    scale = 2 * np.pi / length
    return D1 * scale, D2 * scale**2


def _lower_layer_dno(grid: PeriodicGrid, h: float, eta: np.ndarray, xi: np.ndarray, ny: int):
    n = grid.n
    eta_f = RealField(grid, eta)
    eta_x = derivative(eta_f).values
    eta_xx = derivative(derivative(eta_f)).values
    H = h + eta
    if np.any(H <= 0):
        raise OracleError("layer thickness must stay positive")
    D1, D2 = _fourier_diff_matrices(n, grid.length)
    ds = 1.0 / ny
    s = np.arange(ny + 1) * ds  # s = 0 at the bed, s = 1 on the interface

    # Unknowns: Phi at s_0 .. s_{ny-1} (s_ny is Dirichlet data), index = m*n + j.
    m_int = ny
    N = m_int * n
    rhs = np.zeros(N)

    Hp, Hpp = eta_x, eta_xx
    D1c = sp.csr_matrix(D1)
    D2c = sp.csr_matrix(D2)

    blocks = {}
    for m in range(m_int):
        sm = s[m]
        a = -sm * Hp / H  # ds/dx at fixed y
        coef_ss = a**2 + 1.0 / H**2
        coef_s = -sm * Hpp / H + 2.0 * sm * Hp**2 / H**2
        coef_xs = 2.0 * a
        # Phi_XX
        diag_blocks = {m: D2c.copy()}
        # neighbours in s: centered differences, ghost Phi_{-1} = Phi_{1} at the bed
        lo, hi = m - 1, m + 1
        w_ss = coef_ss / ds**2
        w_s = coef_s / (2 * ds)
        w_xs = coef_xs / (2 * ds)
        diag_blocks[m] = diag_blocks[m] - sp.diags(2.0 * w_ss)
        up = sp.diags(w_ss + w_s) + sp.diags(w_xs) @ D1c
        dn = sp.diags(w_ss - w_s) - sp.diags(w_xs) @ D1c
        if m == 0:
            # Phi_s = 0 at the bed: the ghost value mirrors s_1
            diag_blocks[1] = up + dn
        else:
            diag_blocks[lo] = dn
            if hi < m_int:
                diag_blocks[hi] = up
            else:
                rhs[m * n:(m + 1) * n] -= up @ xi
        blocks[m] = diag_blocks

    block_rows = []
    for m in range(m_int):
        row = [None] * m_int
        for c, b in blocks[m].items():
            row[c] = b
        block_rows.append(row)
    A = sp.bmat(block_rows, format="csc")
    lu = spla.splu(A)
    phi = lu.solve(rhs)
    resid = np.linalg.norm(A @ phi - rhs) / max(np.linalg.norm(rhs), np.finfo(float).tiny)
    phi = np.concatenate([phi, xi]).reshape(ny + 1, n)

    phi_s = (3.0 * phi[ny] - 4.0 * phi[ny - 1] + phi[ny - 2]) / (2 * ds)
    xi_x = derivative(RealField(grid, xi)).values
    # n-scaled normal derivative: phi_y - eta_x phi_x on y = eta
    out = (1.0 + eta_x**2) * phi_s / H - eta_x * xi_x
    return out, resid


def dno_bvp(
    layer: int,
    params: MediaParams,
    eta: RealField,
    xi_layer: RealField,
    res: BvpResolution,
    extrapolate: bool = False,
    residual_tol: float = 1e-10,
) -> RealField:
    """Exact Dirichlet-Neumann map of one layer by a direct boundary-value solve.

    Parameters
    ----------
    layer : {1, 2}
        1 for the lower layer ``-h1 <= y <= eta``, 2 for ``eta <= y <= h2``.
    params : MediaParams
    eta : RealField
        Interface elevation; must satisfy ``max|eta| < min(l1, l2)``.
    xi_layer : RealField
        Trace of the layer potential on the interface (m^2/s).
    res : BvpResolution
        ``res.nx`` must be a multiple of the field grid size; the solve runs
        on the finer grid and the result is sampled back.
    extrapolate : bool
        If True, combine the solves at ``ny`` and ``2*ny`` by Richardson
        extrapolation, removing the ``O(1/ny**2)`` error term.
    residual_tol : float
        A posteriori bound on the relative residual of the linear solve.

    Returns
    -------
    RealField
        ``G_layer(eta) xi_layer`` on the grid of ``eta``.
    """
    if layer not in (1, 2):
        raise ValueError(f"layer must be 1 or 2, got {layer!r}")
    if eta.grid != xi_layer.grid:
        raise ValueError(f"grid mismatch: {eta.grid} vs {xi_layer.grid}")
    grid = eta.grid
    if res.nx % grid.n:
        raise ValueError(f"BVP nx={res.nx} must be a multiple of the grid size {grid.n}")
    if eta.max_abs() >= params.strip_halfwidth:
        raise ValueError("oracle requires max|eta| < min(l1, l2)")

    fine = PeriodicGrid(res.nx, grid.length)
    r = res.nx // grid.n

    def upsample(f: RealField) -> np.ndarray:
        if r == 1:
            return f.values
        ch = np.zeros(fine.n // 2 + 1, dtype=complex)
        fh = f.spectrum()
        fh[-1] *= 0.5  # split the Nyquist coefficient symmetrically
        ch[: grid.n // 2 + 1] = fh * r
        return np.fft.irfft(ch, n=fine.n)

    e = upsample(eta)
    x = upsample(xi_layer)
    if layer == 2:
        e = -e
    h = params.depth(layer)

    def solve(ny):
        out, resid = _lower_layer_dno(fine, h, e, x, ny)
        if resid > residual_tol:
            raise OracleError(f"linear solve residual {resid:.2e} exceeds {residual_tol:.1e}")
        return out

    out = solve(res.ny)
    if extrapolate:
        out = (4.0 * solve(2 * res.ny) - out) / 3.0
    if not np.all(np.isfinite(out)):
        raise OracleError("non-finite values in the boundary solve; refine the mesh")
    return RealField(grid, out[::r])


def functional_gradient_fd(
    functional: Callable[[WaveState], float],
    state: WaveState,
    direction: RealField,
    step: float | None = None,
    component: str = "eta",
) -> float:
    """Centered difference ``(H(s + step*d) - H(s - step*d)) / (2*step)``.

    ``component`` selects whether ``direction`` perturbs ``eta`` or ``xi``.
    The default step is ``sqrt(eps)`` scaled by the size of the state.
    """
    if component not in ("eta", "xi"):
        raise ValueError(f"component must be 'eta' or 'xi', got {component!r}")
    if step is None:
        scale = max(1.0, state.eta.max_abs(), state.xi.max_abs())
        step = np.sqrt(np.finfo(float).eps) * scale
    if not step > 0:
        raise ValueError(f"step must be positive, got {step}")

    def shifted(sign):
        if component == "eta":
            return WaveState(state.eta + sign * step * direction, state.xi)
        return WaveState(state.eta, state.xi + sign * step * direction)

    return (functional(shifted(+1)) - functional(shifted(-1))) / (2.0 * step)
