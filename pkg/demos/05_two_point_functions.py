"""The four kinds of boundary 2-point functions, closed form next to brute force.

Cases 1, 3 and 4 live on the N x (N-2) lattice left after removing the two
rightmost columns; case 2 uses the full N x N lattice.
"""

import itertools

import numpy as np

from dwbc import correlators as cr
from dwbc.config import random_params
from dwbc.weights import strict_rel_dev

n = 5
p = random_params(np.random.default_rng(11), n)
q = p.replace(y=p.y[2:])


def show(label, formula, oracle):
    print(f"  {label:<22} {formula.real:+.10e}   dev {strict_rel_dev(formula, oracle):.1e}")


print("case 1: two inverted right arrows")
for r1, r2 in [(1, 2), (2, 4), (3, 5)]:
    show(f"rows {r1}, {r2}", cr.twopoint_case1(r1, r2, q), cr.twopoint_case1(r1, r2, q, backend="oracle"))

print("case 2: inverted right arrow and inverted top arrow")
for r, c in [(1, 1), (3, 2), (5, 5)]:
    show(f"row {r}, column {c}", cr.twopoint_case2(r, c, p), cr.twopoint_case2(r, c, p, backend="oracle"))

print("case 3: right and left arrows on different rows")
for rr, rl in itertools.islice(itertools.permutations(range(1, n + 1), 2), 0, 20, 7):
    show(f"right {rr}, left {rl}", cr.twopoint_case3(rr, rl, q), cr.twopoint_case3(rr, rl, q, backend="oracle"))

print("case 4: right and left arrows on the same row")
for i in range(1, n + 1):
    f, o = cr.twopoint_case4(i, q), cr.twopoint_case4(i, q, backend="oracle")
    print(f"  row {i:<18} {f.real:+.10e}   brute force {o.real:+.10e}")
print("  (rows 1 and N admit no configuration at all)")
