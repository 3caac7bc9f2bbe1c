"""
Complexes, subdivisions and mod-p homology
==========================================

Build a few standard complexes, subdivide one, and compute reduced Betti
numbers over Z/2 and Z/3.
"""

# %%
from vkflores import boundary, crosspolytope, face_poset, from_facets, order_complex, simplex, skeleton
from vkflores.homology import betti, is_n_acyclic

K5 = skeleton(simplex(4), 1)
print(K5, K5.f_vector())

# %%
# The boundary of a triangle subdivides into a hexagon with the same Euler characteristic.
hexagon = order_complex(face_poset(boundary(2)))
print(hexagon.f_vector(), hexagon.euler_characteristic(), boundary(2).euler_characteristic())

# %%
# Spheres: the boundary of the 4-dimensional cross-polytope is a 3-sphere.
S3 = crosspolytope(4)
print("beta~(S^3) =", betti(S3, 2, 3).values[1:])

# %%
# Coefficients matter: the 6-vertex projective plane has H_1 = Z/2.
rp2 = from_facets([[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 1, 5],
                   [1, 2, 4], [2, 3, 5], [1, 3, 4], [1, 3, 5], [2, 4, 5]])
for p in (2, 3):
    res = is_n_acyclic(rp2, 2, p)
    print(f"RP^2 2-acyclic over Z/{p}: {bool(res)}  evidence {res.evidence.values}")
