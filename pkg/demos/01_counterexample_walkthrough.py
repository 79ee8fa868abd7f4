# coding: utf-8

# # Walking through the counterexample
#
# A five-variable exactly-one formula that has two models, yet the salum
# procedure under lexicographic order and positive polarity reports UNSAT.

# In[1]:

from x3sat.corpus import golden_trace, paper_counterexample
from x3sat.harness import compare
from x3sat.oracle import brute_force
from x3sat.salum import LEX_POS, EventKind, scan

phi = paper_counterexample()
print(phi.pretty())


# The brute-force oracle enumerates every total assignment with numpy.

# In[2]:

models = brute_force(phi)
for bits in models.bit_tuples():
    print(bits)


# Now run salum and print its trace, one event per line.

# In[3]:

verdict = scan(phi, LEX_POS)
for event in verdict.trace.events:
    lit = phi.name(event.literal) if event.literal is not None else ""
    print(f"{event.kind.name:16} {lit:4} {event.detail or ''}")
print("claim:", verdict.claim.name, "after", verdict.removes, "removes")


# The first decision a forces b and c false, which leaves (x . y)(x . ~y).
# Deciding x then kills both y and ~y, and the failure is blamed on x rather
# than on a.  The checkpoints below are the states the walkthrough stops at.

# In[4]:

for label, state in golden_trace().checkpoints:
    if hasattr(state, "literal"):
        print(f"{label:14} conflict on {phi.name(state.literal)} with", state.state.pretty())
    else:
        print(f"{label:14}", state.pretty())


# In[5]:

print(compare(phi, LEX_POS).kind)
