# %% [markdown]
# # Where does the regime switch?
#
# The lopsided design `(1, delta)` beats the symmetric corner exactly when
# `g(eps, delta) > min(pi, 1 - pi)`.  Tabulating `g` over a grid of budgets
# gives a lookup chart: for a given `pi`, budgets above-left of the `pi`
# level curve call for the lopsided design.

# %%
from pathlib import Path

import numpy as np

from rrdp import contour_sweep
from rrdp.cli import contour_csv

levels = (0.05, 0.1, 0.2, 0.3)
sweep = contour_sweep(levels, epsilon_range=(0.01, 3.0), delta_range=(0.0, 0.5), resolution=200)

# %%
for eps_target in (0.25, 0.5, 1.0, 2.0):
    i = int(np.argmin(abs(sweep.epsilons - eps_target)))
    cells = "  ".join(f"g={lv}: delta~{sweep.level_curves[lv][i]:.3f}" for lv in levels)
    print(f"eps={sweep.epsilons[i]:.3f}  {cells}")

# %%
out = Path("g_threshold.csv")
out.write_text(contour_csv(sweep))
print(f"wrote {len(sweep)} rows to {out}")

# %%
try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None
if plt is not None:
    fig, ax = plt.subplots()
    cs = ax.contour(sweep.epsilons, sweep.deltas, sweep.g.T, levels=levels)
    ax.clabel(cs)
    ax.set_xlabel("epsilon")
    ax.set_ylabel("delta")
    fig.savefig("g_threshold.png", dpi=120)
