# %% [markdown]
# # From a witness to a relation
#
# A zero of s at u = sqrt(-lambda) certifies that X and Y_lambda generate a
# non-free group. `relation_word` turns the sequence into an explicit
# commutator.

# %%
from fractions import Fraction

from relnum.decide import decide, greedy_find, verify_witness
from relnum.numeric import parse_lambda
from relnum.witness import eval_syllables, format_word, relation_word

rep = decide(Fraction(2, 13))
print(rep.verdict, rep.mindeg, rep.witness)

# %%
rw = relation_word(rep.witness, Fraction(2, 13))
print(format_word(rw.commutator))
print(eval_syllables(rw.commutator, Fraction(2, 13)).is_identity())

# %% [markdown]
# Complex values from imaginary quadratic fields use the same calls.

# %%
lam = parse_lambda("(1+sqrt(-3))/2")
rep = decide(lam)
print(rep.verdict, rep.mindeg, rep.witness)
print(verify_witness(lam, rep.witness).flags())

# %% [markdown]
# For larger values the greedy search finds long witnesses quickly; they are
# not minimal.

# %%
for p in (25, 33, 42):
    w = greedy_find(Fraction(p, 13))
    print(p, len(w), verify_witness(Fraction(p, 13), w).ok)
