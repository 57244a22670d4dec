# ---
# jupyter:
#   jupytext:
#     formats: ipynb,py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
#   kernelspec:
#     display_name: Python 3
#     language: python
#     name: python3
# ---

# %% [markdown]
# # Policies in the multi-region model
#
# The bundled calibration is synthetic: regional paths are illustrative,
# only the direction of the comparisons is meaningful.

# %%
import numpy as np

from carbonweights.iam import (
    NegishiWeighted,
    PolicyPath,
    Utilitarian,
    bundled_scenario,
    evaluate_swf,
    optimize_policy,
    preferred_uniform_prices,
)

sc = bundled_scenario()
neg = optimize_policy(sc, NegishiWeighted())
uni = optimize_policy(sc, Utilitarian())
dif = optimize_policy(sc, Utilitarian(), "differentiated", x0=PolicyPath("differentiated", uni.trajectory.mu))

# %%
for name, out in (("negishi", neg), ("uniform", uni), ("differentiated", dif)):
    t = out.trajectory
    print(
        f"{name:15s} welfare {evaluate_swf(t, Utilitarian()):10.1f}  "
        f"cumulative {t.cumulative_emissions[-1]:7.0f} GtCO2  peak {t.temperature.max():.2f} C"
    )

# %% [markdown]
# Differentiated prices fall from the richest to the poorest region.

# %%
x0 = dif.trajectory.per_capita[:, 0]
for i in np.argsort(-x0):
    print(f"{sc.names[i]:10s} consumption {x0[i]:7.2f}  first price {dif.trajectory.price[i, 0]:7.2f}")

# %%
pref = preferred_uniform_prices(sc)
print({k: round(float(v.policy.values[0]), 2) for k, v in pref.items()})
