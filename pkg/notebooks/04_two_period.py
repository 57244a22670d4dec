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
# # Two-period model
#
# Abatement costs fall in the first period and damages in the second. The
# Negishi discount factor depends on both regions' consumption growth.

# %%
from carbonweights.dynamic import (
    check_proposition4,
    solve_dynamic_negishi,
    solve_dynamic_utilitarian_uniform,
)
from carbonweights.io import default_dynamic, dynamic_from_dict

econ = dynamic_from_dict(default_dynamic())
neg = solve_dynamic_negishi(econ)
uni = solve_dynamic_utilitarian_uniform(econ)
print(f"Negishi {neg.tau:.4f}  utilitarian {uni.tau:.4f}  ratio {uni.tau / neg.tau:.4f}")

# %%
rep = check_proposition4(econ)
print(f"damage side {rep.left:.6f}, cost side {rep.right:.6f}, verdict {rep.verdict}")

# %% [markdown]
# Faster endowment growth in the poor region shrinks its future weight.

# %%
d = default_dynamic()
for factor in (1.5, 2.7, 4.0, 6.0):
    d["south"]["gw"] = factor
    e = dynamic_from_dict(d)
    r = solve_dynamic_utilitarian_uniform(e).tau / solve_dynamic_negishi(e).tau
    print(f"south endowment growth factor {factor:.1f}: ratio {r:.4f}")
