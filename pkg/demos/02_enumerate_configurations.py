"""Brute-force enumeration of domain-wall configurations.

The number of configurations follows the alternating-sign-matrix sequence,
and every configuration has exactly one c vertex in the rightmost column.
"""

from dwbc.lattice import (
    classify_vertex,
    count_configurations,
    dwbc,
    enumerate_configurations,
)

for n in range(1, 7):
    print(f"N = {n}: {count_configurations(dwbc(n)):>5} configurations")

print("\nThe 7 configurations of the 3x3 lattice as vertex classes (rows top first, columns left to right):")
for g in enumerate_configurations(dwbc(3)):
    rows = ["".join(classify_vertex(g, i, j).weight_class for j in (3, 2, 1)) for i in (1, 2, 3)]
    print("  " + " / ".join(rows))
