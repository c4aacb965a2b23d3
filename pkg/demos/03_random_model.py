"""
The random Euler product model
==============================

Draw Frobenius classes independently at each prime with Chebotarev
probabilities and look at the resulting products and prime sums.
"""

import numpy as np

from zetares import ChebotarevDistribution, CycleType, model_L1, moment_bound_rhs
from zetares.model import model_sums, moments_from_sums

dist = ChebotarevDistribution(4)
vals = np.array([model_L1(dist, 1e4, seed=7, sample=s).value for s in range(200)])
print(f"S_4 model at x = 1e4: median {np.median(vals):.3f}, range [{vals.min():.3f}, {vals.max():.3f}]")

# forcing every prime to one class reproduces the envelopes
top = model_L1(dist, 1e4, forced=CycleType((1, 1, 1, 1))).value
bot = model_L1(dist, 1e4, forced=CycleType((4,))).value
print(f"forced identity {top:.3f}, forced 4-cycle {bot:.5f}")

# moments of the tail sum stay far below the proven bound
y, x = 1e3, 1e6
sums = model_sums(dist, y, x, 5000, seed=1)
for r in (1, 2, 3):
    m = moments_from_sums(sums, r)
    print(f"r = {r}: E[S^{2 * r}] = {m.mean:.3e} +/- {m.stderr:.1e}, bound {moment_bound_rhs(dist.d, r, y):.3e}")
