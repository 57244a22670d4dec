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
# # Approximate price ratios
#
# The closed-form approximation gives the ratio of the utilitarian uniform
# carbon price to the Negishi-weighted one. Values above 1 mean equal
# weighting asks for a higher price.

# %%
from carbonweights.tables import format_panels, table1_cells, table2_cells

static = table1_cells()
print(format_panels(static))

# %% [markdown]
# With two periods, faster growth in the poorer region lowers its future
# marginal utility, and the ratio drops.

# %%
dynamic = table2_cells()
print(format_panels(dynamic))

# %%
hi = max(static, key=lambda c: c.value)
lo = min(static, key=lambda c: c.value)
print(f"static range: {lo.value:.3f} (eta={lo.eta}) to {hi.value:.3f} (eta={hi.eta})")
