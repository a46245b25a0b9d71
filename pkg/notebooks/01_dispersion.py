# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # Interfacial wave dispersion
#
# Phase speed of the two branches for an ocean-like stratification, compared
# with the long-wave, deep-water and single-medium laws.

# %%
import matplotlib.pyplot as plt
import numpy as np

from twolayer import MediaParams
from twolayer.dispersion import (
    deep_water_speed,
    group_velocity,
    long_wave_speed,
    single_medium_speed,
    wave_speed,
)

p = MediaParams(rho1=1000.0, rho2=990.0, h1=100.0, h2=50.0, l1=20.0, l2=20.0, gravity=9.8)
k = np.geomspace(1e-4, 2.0, 400)
c = wave_speed(p, k)
print(f"long-wave speed: {long_wave_speed(p).c_plus:.6f} m/s")

# %% [markdown]
# The interfacial speed is tiny compared with a free surface of the same depth,
# because only the density jump drives the restoring force.

# %%
fig, ax = plt.subplots(figsize=(6, 4))
ax.loglog(k, c.c_plus, label="two-layer")
ax.loglog(k, deep_water_speed(p, k).c_plus, "--", label="deep water")
ax.axhline(long_wave_speed(p).c_plus, ls=":", color="k", label="long wave")
ax.set_xlabel("k [1/m]")
ax.set_ylabel("c [m/s]")
ax.legend()

# %%
ratio = single_medium_speed(p, k).c_plus / c.c_plus
print(f"free-surface / interfacial speed ratio at k = {k[0]:.0e}: {ratio[0]:.1f}")

# %% [markdown]
# ## Strip current
#
# A uniform current kappa in the strip shifts both branches by kappa and the
# group velocity by exactly the same amount.

# %%
pk = MediaParams(rho1=1000.0, rho2=990.0, h1=100.0, h2=50.0, l1=20.0, l2=20.0, kappa=0.3, gravity=9.8)
for kk in (0.01, 0.1, 1.0):
    g0 = group_velocity(p, kk)
    g1 = group_velocity(pk, kk)
    print(f"k={kk:5.2f}  c_g={g0:.6f}  c_g(kappa=0.3)={g1:.6f}  diff={g1 - g0:.3e}")
