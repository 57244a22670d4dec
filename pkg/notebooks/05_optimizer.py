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
# # Derivative-free optimizer
#
# The subspace simplex search handles the box-bounded problems; an
# augmented Lagrangian wraps it for equality constraints.

# %%
import numpy as np

from carbonweights.optimizer import grid_oracle, maximize_bounded, maximize_eq_constrained

rosen = lambda p: -((1 - p[0]) ** 2 + 100 * (p[1] - p[0] ** 2) ** 2)
res = maximize_bounded(rosen, [-2, -2], [2, 2])
print(res.x, res.evals, res.converged)

# %%
proj = maximize_eq_constrained(lambda p: -(p @ p), lambda p: [p.sum() - 1.0], [-2, -2], [2, 2])
print(proj.x, proj.multipliers, proj.constraint_violation)

# %% [markdown]
# A brute-force grid agrees on low-dimensional problems.

# %%
g = grid_oracle(rosen, [-2, -2], [2, 2], 41, refine=12)
print(g.x, np.max(np.abs(g.x - res.x)))
