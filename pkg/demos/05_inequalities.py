"""
Combinatorial inequalities behind the moment bound
==================================================

Sweep every composition of 2r up to 16 and check both inequalities at two
heights.
"""

import time

from zetares import composition_inequality_check, exceptional_budget, lemma44_check
from zetares.stats import inequality_sweep

print(composition_inequality_check((4, 2), 100))
print(lemma44_check((1, 1, 2, 2), 100))

t0 = time.perf_counter()
rep = inequality_sweep(16, (1e3, 1e4))
print(f"\nsweep: {rep.lemma_passed}/{rep.enumerated} and {rep.composition_passed}/{rep.composition_applicable} "
      f"in {time.perf_counter() - t0:.2f}s")

# how many exceptional fields the argument can afford at X = 1e6
print(exceptional_budget(1e6, 1.0))
