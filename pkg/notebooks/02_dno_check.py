# ---
# jupyter:
#   jupytext:
#     formats: py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # Dirichlet-Neumann operator: expansion vs direct solve
#
# The truncated Taylor expansion of the layer DNOs is compared with a
# boundary-fitted finite-difference solution of Laplace's equation.  The
# error of the order-N expansion should scale like the amplitude to the
# power N+1.

# %%
import matplotlib.pyplot as plt
import numpy as np

from twolayer import MediaParams, PeriodicGrid, RealField
from twolayer.dno import apply_G
from twolayer.oracle import BvpResolution, dno_bvp

p = MediaParams(rho1=2.0, rho2=1.0, h1=1.0, h2=1.0, l1=0.5, l2=0.5, gravity=9.8)
grid = PeriodicGrid(64)
f = RealField(grid, np.cos(grid.x))

# %%
amps = np.array([0.005, 0.01, 0.02, 0.04, 0.08])
errors = {order: [] for order in (0, 1, 2)}
for a in amps:
    eta = RealField(grid, a * np.cos(grid.x))
    ref = dno_bvp(1, p, eta, f, BvpResolution(64, 128), extrapolate=True)
    for order in errors:
        diff = apply_G(1, p, eta, order, f) - ref
        errors[order].append(np.sqrt(grid.dx) * np.linalg.norm(diff.values))

# %%
fig, ax = plt.subplots(figsize=(6, 4))
for order, e in errors.items():
    slope = np.polyfit(np.log(amps), np.log(e), 1)[0]
    ax.loglog(amps, e, "o-", label=f"order {order} (slope {slope:.2f})")
ax.set_xlabel("amplitude a")
ax.set_ylabel("L2 error vs oracle")
ax.legend()

# %% [markdown]
# At the smallest amplitude the order-2 curve flattens: there the oracle's own
# discretization error (about 1e-8 at this resolution) takes over.
