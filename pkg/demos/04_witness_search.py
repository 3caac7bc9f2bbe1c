"""
Searching for intersection witnesses
====================================

Exact rational search over pairs of disjoint faces, the constraint lift,
and a seeded experiment on either side of the dimension threshold.
"""

# %%
from fractions import Fraction

from vkflores import AffineMap, constraint_lift, find_witness, random_trials, simplex, verify_witness

square = [(0, 0), (2, 0), (2, 2), (0, 2), (1, 1)]
f = AffineMap(2, {i: tuple(map(Fraction, p)) for i, p in enumerate(square)})
w = find_witness(simplex(4), 1, 2, f)
print(w.faces, w.point, verify_witness(w, f))

# %%
lift = constraint_lift(simplex(4), 1, f)
print(lift.witness.faces, lift.witness.point, lift.carriers_in_skeleton)

# %%
for d in (2, 3):
    stats = random_trials(simplex(4), 1, 2, d, trials=50, seed=1)
    print(f"K5 -> R^{d}: hit fraction {float(stats.hit_fraction)}  dim sums {stats.dim_sum_histogram}")
