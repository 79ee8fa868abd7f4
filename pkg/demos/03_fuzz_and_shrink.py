# coding: utf-8

# # Differential fuzzing and shrinking
#
# Small random formulas are run through salum under eight ordering policies
# and compared against the DPLL oracle.  Disagreements are then shrunk.

# In[1]:

from collections import Counter

from x3sat.harness import Disagreement, campaign, desk_config, shrink

configs = [desk_config(seed) for seed in range(1, 301)]
results = campaign(configs)
outcomes = Counter(r.outcome.kind.name if isinstance(r.outcome, Disagreement) else "agree"
                   for r in results)
print(len(results), "runs", dict(outcomes))


# Pick the largest disagreement and shrink it.  Each accepted edit keeps the
# same kind of disagreement under the same policy.

# In[2]:

bad = [r.outcome for r in results if isinstance(r.outcome, Disagreement)]
big = max(bad, key=lambda d: sum(len(c) for c in d.formula.clauses))
small = shrink(big)
print(big.policy.token(), big.kind.name)
print("before:", big.formula.pretty())
print("after: ", small.formula.pretty())
