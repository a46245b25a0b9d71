# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # Energy bookkeeping
#
# The Hamiltonian splits into kinetic, potential and current terms.  The
# current enters only through kappa times the momentum, and the shear
# outside the strip adds a constant that no state can change.

# %%
from dataclasses import replace

import numpy as np

from twolayer import MediaParams, PeriodicGrid, ShearProfile
from twolayer.evolution import travelling_wave
from twolayer.hamiltonian import background_energy_offset, energy, momentum

p = MediaParams(rho1=1000.0, rho2=990.0, h1=100.0, h2=50.0, l1=20.0, l2=20.0, gravity=9.8)
grid = PeriodicGrid(128, 2000.0)
state = travelling_wave(p, grid, grid.k[3], 1.0)

# %%
for kappa in (0.0, 0.2, -0.2):
    e = energy(replace(p, kappa=kappa), state)
    print(f"kappa={kappa:+.1f}  " + "  ".join(f"{k}={v:.6e}" for k, v in e.as_dict().items()))
print(f"momentum = {momentum(state):.6e}")

# %% [markdown]
# The order-0 and order-2 kinetic energies differ by a relative amount set by
# the wave slope.

# %%
e0 = energy(p, state, order=0).kinetic
e2 = energy(p, state, order=2).kinetic
print(f"kinetic: order 0 {e0:.8e}, order 2 {e2:.8e}, relative gap {abs(e2 - e0) / e0:.2e}")

# %%
pk = replace(p, kappa=0.2)
for sigma in (0.0, 0.5, 1.0):
    offset = background_energy_offset(ShearProfile.linear(pk, sigma), grid.length)
    print(f"sigma={sigma:.1f}  background offset = {offset:.6e} J/m")
