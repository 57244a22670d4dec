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
# # Welfare accounting
#
# Welfare gaps between policies are expressed as the first-period
# consumption change that makes each region indifferent.

# %%
from carbonweights.iam import (
    NegishiWeighted,
    Utilitarian,
    bundled_scenario,
    marginal_damage_pulse,
    optimize_policy,
    welfare_equivalent_consumption_change,
)

sc = bundled_scenario()
neg = optimize_policy(sc, NegishiWeighted())
uni = optimize_policy(sc, Utilitarian())

res = welfare_equivalent_consumption_change(uni.trajectory, neg.trajectory)
for name, d in zip(sc.names, res.delta):
    print(f"{name:10s} {d:+.4f}")

# %%
glob = welfare_equivalent_consumption_change(uni.trajectory, neg.trajectory, scope="global")
print("global:", glob.delta)

# %% [markdown]
# Regional damages from one extra GtCO2 in a given period, in USD per tonne.

# %%
md = marginal_damage_pulse(sc, uni.policy, pulse_period=2)
print({k: round(float(v), 3) for k, v in zip(sc.names, md)})
