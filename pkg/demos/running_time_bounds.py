#!/usr/bin/env python3
"""Reproduce the running-time arithmetic: branching numbers of simple rules
and the combination of n-parameterized and k-parameterized bounds."""

import math
from fractions import Fraction

from vcgen.measure import BranchVector, branching_number, combine_bound

print("=== branching numbers for the 4-clique rules")
cases = [
    ("take v / take N(v) minus v (deterministic 2-way)", ((1, 1), (1, 3))),
    ("branch on each clique vertex (deterministic 4-way)", ((1, 3),) * 4),
    ("pick one vertex uniformly at random (4/3 expected trials)",
     ((Fraction(4, 3), 1),)),
]
for name, entries in cases:
    x = branching_number(BranchVector(entries))
    print(f"{name}: base {x:.5f}")

print("\n=== combining e^(a*mu + b*k) with an e^(c*n) subroutine: d = 2c(a+b)/(a+2c)")
rows = [
    ("degree 4", 0.59303, 0.03958, 1.13735),
    ("degree 5", 0.37997, 0.09725, 1.17354),
    ("degree 6", 0.16828, 0.16570, 1.18922),
    ("general ", 0.02580, 0.21576, 1.19698),
]
print(f"{'class':>8}  {'a':>8}  {'b':>8}  {'n-base':>8}  {'k-base':>8}")
for name, a, b, base_n in rows:
    d = combine_bound(a, b, math.log(base_n))
    print(f"{name:>8}  {a:8.5f}  {b:8.5f}  {base_n:8.5f}  {math.exp(d):8.5f}")
