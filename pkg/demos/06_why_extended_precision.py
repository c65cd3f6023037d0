"""The closed forms are alternating sums with heavy cancellation.

In plain double precision the 2-point function with orthogonal arrows loses
up to eight digits at N = 5.  The package evaluates closed forms in mpmath at
40 digits by default (``dps=None`` switches back to double).
"""

import itertools

import numpy as np

from dwbc import correlators as cr
from dwbc.config import random_params
from dwbc.weights import strict_rel_dev

p = random_params(np.random.default_rng(0), 5)
print("  r  c   double precision   40 digits")
for r, c in itertools.product((1, 3, 5), repeat=2):
    oracle = cr.twopoint_case2(r, c, p, backend="oracle")
    d = strict_rel_dev(cr.twopoint_case2(r, c, p, dps=None), oracle)
    e = strict_rel_dev(cr.twopoint_case2(r, c, p), oracle)
    print(f"  {r}  {c}   {d:.1e}            {e:.1e}")
