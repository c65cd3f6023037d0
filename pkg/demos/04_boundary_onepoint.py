"""Where does the c vertex of the rightmost column sit?

H_N^r is the probability that it sits on row r.  The closed form slices the
lattice into the rightmost column and the rest, rolls the inverted arrow of
the rest to the top row and peels it off.
"""

import numpy as np

from dwbc.config import random_params
from dwbc.correlators import bpz_onepoint, right_column_weight

p = random_params(np.random.default_rng(4), 5)
print("rapidities x:", np.round(np.real(p.x), 3))
print("rapidities y:", np.round(np.real(p.y), 3), "(y_1 is the rightmost column)")
print(f"lambda = {p.lam.real:.3f}\n")

total = 0
for r in range(1, 6):
    h = bpz_onepoint(r, p)
    oracle = bpz_onepoint(r, p, backend="oracle")
    total += h
    print(f"r = {r}:  H = {h.real:.12f}   brute force {oracle.real:.12f}   right column weight {right_column_weight(r, p).real:+.4f}")
print(f"\nsum over rows = {total.real:.15f}")
