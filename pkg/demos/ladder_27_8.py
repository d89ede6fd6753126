# %% [markdown]
# # The M_k ladder for 27/8
#
# `mk_table` computes the exact maxima of |[n_1, ..., n_k]| over nonzero
# integer sequences. The ladder stays finite until the minimal u-degree.

# %%
from fractions import Fraction

from relnum.decide import mk_table
from relnum.wcf import format_seq, wcf_eval

lam = Fraction(27, 8)
ladder = mk_table(lam, 8)
for e in ladder.entries:
    print(f"M_{e.k} = {e.value}  ~ {float(e.value):.4f}  at ({format_seq(e.sequence)})")

# %% [markdown]
# Every entry is attained by the sequence printed next to it, so the value can
# be rechecked directly.

# %%
for e in ladder.entries:
    assert abs(wcf_eval(e.sequence, lam)) == e.value

# %% [markdown]
# Scoring only the integer nearest to each singular point gives smaller values
# once M_k passes 1. The two rules agree up to k = 6.

# %%
near = mk_table(lam, 8, leaf_rule="nearest")
for a, b in zip(ladder.entries, near.entries):
    print(a.k, a.value, b.value, "same" if a.value == b.value else "differs")
