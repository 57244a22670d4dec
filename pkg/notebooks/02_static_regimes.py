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
# # Static regimes on one economy
#
# A rich North and a poor South share a global abatement target. Each regime
# below weights regional welfare differently.

# %%
from carbonweights.static import solve_all_static, symmetric_economy, transfer_derivative
from carbonweights.io import default_static, static_from_dict

econ = static_from_dict(default_static())
sols = solve_all_static(econ)
for name, s in sols.items():
    print(f"{name:16s} tau_N={s.tau_n:8.4f} tau_S={s.tau_s:8.4f} abatement={s.abatement:.4f}")

# %% [markdown]
# Under Negishi weights, moving a unit of consumption between regions leaves
# weighted welfare unchanged; under equal weights it does not.

# %%
neg = sols["negishi"]
print("Negishi transfer derivative:", transfer_derivative(econ, neg, neg.weights))
print("equal-weight transfer derivative:", transfer_derivative(econ, neg, (1.0, 1.0)))

# %% [markdown]
# With identical regions every regime agrees.

# %%
same = solve_all_static(symmetric_economy())
print({k: round(v.tau_n, 10) for k, v in same.items()})
