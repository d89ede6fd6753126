# %% [markdown]
# # Parametric families
#
# Each family maps integer parameters to a relation number and a witness.

# %%
from collections import Counter

from relnum.families import family_generate, family_sweep

print(family_generate("two_step_i", r=1, s=1, t=1))
print(family_generate("one_step", a=2, b=2, c=1))

# %% [markdown]
# Sweeping a box collects many distinct values, all inside (-4, 4).

# %%
vals = Counter()
for kind in ("one_step", "two_step_ii"):
    for fw in family_sweep(kind, 3):
        vals[fw.lam] += 1
print(len(vals), min(vals), max(vals))
