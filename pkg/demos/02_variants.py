# coding: utf-8

# # Variants of the counterexample
#
# The same failure survives padding, polarity flips and relabeling as long as
# the ordering policy is adjusted to make the same first decision.

# In[1]:

from x3sat.corpus import REVERSAL, frequency_padded, polarity_flipped, relabeled
from x3sat.harness import Disagreement, compare
from x3sat.oracle import brute_force
from x3sat.salum import OrderingPolicy

variants = [
    ("padded with 3 fresh pairs", frequency_padded(3), "freq+pos"),
    ("first variable negated", polarity_flipped(), "lex+neg"),
    ("ids reversed", relabeled(REVERSAL), "revlex+pos"),
]


# In[2]:

for label, f, token in variants:
    d = compare(f, OrderingPolicy.parse(token))
    kind = d.kind.name if isinstance(d, Disagreement) else "agreement"
    print(f"{label:28} {token:11} models={len(brute_force(f)):3}  {kind}")


# Across the full policy matrix only some policies start with the doomed
# decision.  The others reach a SAT claim that the audit confirms.

# In[3]:

from x3sat.harness import policy_matrix

for label, f, _ in variants:
    bad = [p.token() for p in policy_matrix((1,)) if isinstance(compare(f, p), Disagreement)]
    print(f"{label:28} disagrees under {bad}")
