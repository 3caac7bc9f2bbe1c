"""
Deleted products and their equivariant maps
===========================================

Conf_2 of the 4-simplex is a homology 3-sphere over Z/2.  We build it in the
product-cell model, check it against the barycentric model, and look at the
cover by the two upper ideals and the antisymmetric function Psi.
"""

# %%
from fractions import Fraction

from vkflores import build_conf, simplex
from vkflores.deleted_product import SWAP, act, conf_order_complex, nerve_map, psi_map, upper_ideal_cover
from vkflores.homology import betti

C = build_conf(simplex(4), 2)
print(C, "f-vector", C.f_vector())
print("product cells :", betti(C, 2, 3).values)
print("order complex :", betti(conf_order_complex(C), 2, 3).values)

# %%
# Cells with a part of dimension > n form P, covered by P_1 and P_2.
cover = upper_ideal_cover(simplex(4), 2, 1)
print(cover.verify())
N = nerve_map(cover)
cell = ((0, 1, 2), (3,))
print(cell, "->", N([cell]), " swapped:", N([act(SWAP, cell)]))

# %%
# Psi vanishes exactly on Conf_2 of the 1-skeleton and flips sign under the swap.
psi = psi_map(simplex(4), 1)
chain = [((0,), (3,)), ((0, 1, 2), (3,))]
w = [Fraction(1, 3), Fraction(2, 3)]
print("Psi =", psi(chain, w), " Psi(swap) =", psi([act(SWAP, c) for c in chain], w))
