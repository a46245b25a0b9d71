"""
Energy and momentum of the interface.

In the variables ``(eta, xi)`` the energy per unit width is::

    H = 1/2 <xi, G_1 B^-1 G_2 xi> + 1/2 (rho1 - rho2) g <eta, eta> - kappa <xi, eta_x>

The strip current ``kappa`` enters only through the last term, which is
``-kappa`` times the momentum ``<xi, eta_x>``.  The shear outside the strip
contributes a constant (:func:`background_energy_offset`) and nothing else.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dno import composite_kinetic, flat_kinetic_symbol
from .params import MediaParams, ShearProfile, WaveState
from .spectral import FourierMultiplier, RealField, derivative, inner_product

__all__ = [
    "EnergyBreakdown",
    "energy",
    "quadratic_energy",
    "momentum",
    "quadratic_variational_derivatives",
    "kinetic_multiplier",
    "background_energy_offset",
]


@dataclass(frozen=True)
class EnergyBreakdown:
    """Energy components in J/m."""

    kinetic: float
    potential: float
    current_term: float

    @property
    def total(self) -> float:
        return self.kinetic + self.potential + self.current_term

    def as_dict(self) -> dict:
        return {
            "kinetic": self.kinetic,
            "potential": self.potential,
            "current_term": self.current_term,
            "total": self.total,
        }


def kinetic_multiplier(params: MediaParams) -> FourierMultiplier:
    """Flat-interface kinetic operator as a :class:`FourierMultiplier`."""
    return FourierMultiplier(
        lambda k: flat_kinetic_symbol(params, k), "even", 0.0, name="flat kinetic operator"
    )


def momentum(state: WaveState) -> float:
    """``integral xi * eta_x dx``."""
    return inner_product(state.xi, derivative(state.eta))


def energy(params: MediaParams, state: WaveState, order: int = 2, tol: float = 1e-10) -> EnergyBreakdown:
    """Energy of ``state`` with the Dirichlet-Neumann operators truncated at ``order``.

    The mean of ``xi`` does not contribute (it is a gauge direction of the
    kinetic term).
    """
    K_xi = composite_kinetic(params, state.eta, order, state.xi, tol=tol)
    kinetic = 0.5 * inner_product(state.xi, K_xi)
    potential = 0.5 * params.reduced_buoyancy * inner_product(state.eta, state.eta)
    current = -params.kappa * momentum(state)
    return EnergyBreakdown(kinetic, potential, current)


def quadratic_energy(params: MediaParams, state: WaveState) -> float:
    """The quadratic Hamiltonian ``H2`` (flat-interface kinetic term)."""
    return energy(params, state, order=0).total


def quadratic_variational_derivatives(params: MediaParams, state: WaveState) -> tuple[RealField, RealField]:
    """Variational derivatives of ``H2``.

    Returns
    -------
    dH_deta : RealField
        ``(rho1 - rho2) g eta + kappa xi_x``
    dH_dxi : RealField
        ``K0 xi - kappa eta_x`` with ``K0`` the flat kinetic operator.

    The linearized motion is ``eta_t = dH_dxi``, ``xi_t = -dH_deta``.
    """
    kappa = params.kappa
    dH_dxi = kinetic_multiplier(params)(state.xi) - kappa * derivative(state.eta)
    dH_deta = params.reduced_buoyancy * state.eta + kappa * derivative(state.xi)
    return dH_deta, dH_dxi


def _segment_u2(samples: np.ndarray) -> float:
    # exact integral of the square of the piecewise-linear interpolant
    y, u = samples[:, 0], samples[:, 1]
    dy = np.diff(y)
    a, b = u[:-1], u[1:]
    return float(np.sum(dy * (a * a + a * b + b * b) / 3.0))


def background_energy_offset(profile: ShearProfile, band_length: float) -> float:
    """Kinetic energy of the background current over a horizontal band (J/m).

    ``1/2 sum_i rho_i integral U_i^2 dy`` times ``band_length``, where the
    in-strip part uses ``integral eta dx = 0``.  This constant never enters
    the dynamics; on the whole line it diverges, hence the finite band.
    """
    if not band_length > 0:
        raise ValueError(f"band_length must be positive, got {band_length}")
    p = profile.params
    lower = _segment_u2(profile.lower_samples) + p.kappa**2 * p.l1
    upper = _segment_u2(profile.upper_samples) + p.kappa**2 * p.l2
    return 0.5 * (p.rho1 * lower + p.rho2 * upper) * band_length
