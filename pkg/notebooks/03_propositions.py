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
# # Regime orderings on random economies
#
# Draw random two-region economies and test each ordering claim. A verdict
# is indeterminate when either side of a comparison sits inside the
# numerical band.

# %%
from collections import Counter

import numpy as np

from carbonweights.dynamic import check_proposition4, random_dynamic_economy
from carbonweights.static import check_static_propositions, random_static_economy

N = 200
tally = Counter()
for i in range(N):
    rep = check_static_propositions(random_static_economy(np.random.default_rng([0, i])))
    tally.update((k, v) for k, v in rep.verdicts.items())

for (check, verdict), n in sorted(tally.items()):
    print(f"{check:24s} {verdict:14s} {n}")

# %% [markdown]
# The two-period check compares the price gap with a weighted test of
# marginal utilities across periods.

# %%
dyn = Counter(
    check_proposition4(random_dynamic_economy(np.random.default_rng([0, 1_000_000 + i]))).verdict
    for i in range(N)
)
print(dict(dyn))
