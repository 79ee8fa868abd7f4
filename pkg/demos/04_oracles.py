# coding: utf-8

# # Two oracles
#
# Brute force enumerates all 2^n assignments in numpy chunks.  DPLL searches
# with exactly-one propagation.  They should always agree.

# In[1]:

import time

from x3sat.harness import GenConfig, generate
from x3sat.oracle import brute_force, dpll_solve

f = generate(GenConfig(seed=2024, num_vars=18, num_clauses=10))
print(f.pretty())


# In[2]:

t0 = time.perf_counter()
models = brute_force(f)
t1 = time.perf_counter()
verdict = dpll_solve(f)
t2 = time.perf_counter()
print(f"brute force: {len(models)} models in {t1 - t0:.3f}s")
print(f"dpll: {verdict} in {t2 - t1:.4f}s")
if verdict.sat:
    print("witness among models:", verdict.witness in models)
