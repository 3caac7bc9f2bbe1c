"""Deleted products Conf_r(X) and the equivariant maps built on them.

A cell of Conf_r(X) is an ordered r-tuple of pairwise disjoint faces
``(s_1, ..., s_r)``; cells are ordered by componentwise inclusion.  The
group acting is a subgroup of the symmetric group on the r slots.  Slot
indices are 0-based in code (slot ``i`` here is slot ``i + 1`` in the usual
mathematical notation).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .complex_core import (
    DEFAULT_MAX_FACES,
    Face,
    GuardExceeded,
    OrderComplex,
    Poset,
    SimplicialComplex,
    iter_chains,
)
from .homology import is_prime

Cell = tuple[Face, ...]
Perm = tuple[int, ...]


def total_dim(cell: Cell) -> int:
    return sum(len(s) - 1 for s in cell)


def cell_sort_key(cell: Cell) -> tuple:
    return (total_dim(cell), tuple(len(s) for s in cell), cell)


class ConfComplex:
    """The r-fold deleted product of ``X``, possibly truncated by total dimension."""

    def __init__(self, X: SimplicialComplex, r: int, cells: Iterable[Cell], max_total_dim: int | None = None):
        self.X = X
        self.r = r
        self.max_total_dim = max_total_dim
        self.cells: list[Cell] = sorted(set(cells), key=cell_sort_key)
        self.cell_set = frozenset(self.cells)
        self._by_dim: dict[int, list[Cell]] = {}
        for c in self.cells:
            self._by_dim.setdefault(total_dim(c), []).append(c)
        self._poset: Poset | None = None

    @property
    def is_empty(self) -> bool:
        return not self.cells

    @property
    def dim(self) -> int:
        return max(self._by_dim, default=-1)

    def __len__(self) -> int:
        return len(self.cells)

    def __contains__(self, cell) -> bool:
        return tuple(tuple(s) for s in cell) in self.cell_set

    def __repr__(self) -> str:
        return f"ConfComplex(r={self.r}, cells={len(self)}, dim={self.dim})"

    def cells_of_dim(self, k: int) -> list[Cell]:
        return self._by_dim.get(k, [])

    def f_vector(self) -> list[int]:
        return [len(self.cells_of_dim(k)) for k in range(self.dim + 1)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * c for k, c in enumerate(self.f_vector()))

    def poset(self) -> Poset:
        """Cell poset; covers drop one vertex from one part."""
        if self._poset is None:
            idx = {c: i for i, c in enumerate(self.cells)}
            covers = []
            for c in self.cells:
                for i, s in enumerate(c):
                    if len(s) > 1:
                        for j in range(len(s)):
                            lower = c[:i] + (s[:j] + s[j + 1:],) + c[i + 1:]
                            covers.append((idx[lower], idx[c]))
            self._poset = Poset(self.cells, [total_dim(c) for c in self.cells], covers)
        return self._poset

    def to_dict(self) -> dict:
        lab = self.X.labels
        return {"r": self.r, "cell_count": len(self), "f_vector": self.f_vector(),
                "cells": [[[lab[v] for v in s] for s in c] for c in self.cells]}


def build_conf(X: SimplicialComplex, r: int, max_total_dim: int | None = None,
               max_cells: int | None = None) -> ConfComplex:
    """All ordered r-tuples of pairwise disjoint faces of ``X``.

    ``max_total_dim`` truncates to cells of total dimension at most that
    value while enumerating, so large products can be built degree-capped.
    """
    if r < 2:
        raise ValueError("r must be >= 2")
    limit = DEFAULT_MAX_FACES if max_cells is None else max_cells
    faces = X.sorted_faces()
    masks = [X.mask(f) for f in faces]
    dims = [len(f) - 1 for f in faces]
    cap = float("inf") if max_total_dim is None else max_total_dim
    out: list[Cell] = []

    def extend(prefix: list[int], used: int, dsum: int) -> None:
        if len(prefix) == r:
            out.append(tuple(faces[i] for i in prefix))
            if len(out) > limit:
                raise GuardExceeded(f"deleted product exceeds guard of {limit}")
            return
        for i, m in enumerate(masks):
            if not (m & used) and dsum + dims[i] <= cap:
                prefix.append(i)
                extend(prefix, used | m, dsum + dims[i])
                prefix.pop()

    if X.vertex_count >= r:
        extend([], 0, 0)
    return ConfComplex(X, r, out, max_total_dim)


def conf_skeleton(C: ConfComplex, m: int) -> ConfComplex:
    if m < 0:
        raise ValueError("m must be >= 0")
    if m >= C.dim:
        return C
    cap = m if C.max_total_dim is None else min(m, C.max_total_dim)
    return ConfComplex(C.X, C.r, (c for c in C.cells if total_dim(c) <= m), cap)


def conf_order_complex(C: ConfComplex, max_dim: int | None = None) -> OrderComplex:
    """Barycentric model: chains of the cell poset."""
    P = C.poset()
    return OrderComplex((tuple(sorted(ch)) for ch in iter_chains(P, max_dim)), P)


# -- group actions ---------------------------------------------------------------


def compose(g: Perm, h: Perm) -> Perm:
    """``(g h)(i) = g(h(i))``."""
    return tuple(g[h[i]] for i in range(len(h)))


def invert(g: Perm) -> Perm:
    inv = [0] * len(g)
    for i, gi in enumerate(g):
        inv[gi] = i
    return tuple(inv)


def permutation_sign(g: Perm) -> int:
    s = 1
    for i in range(len(g)):
        for j in range(i + 1, len(g)):
            if g[i] > g[j]:
                s = -s
    return s


@dataclass(frozen=True)
class PermAction:
    """A permutation group on r slots, given by generators."""

    r: int
    generators: tuple[Perm, ...]
    kind: str
    p: int | None = None
    k: int | None = None
    _elements: tuple[Perm, ...] = field(default=(), repr=False, compare=False)

    @classmethod
    def symmetric(cls, r: int) -> "PermAction":
        gens = []
        if r >= 2:
            gens.append((1, 0) + tuple(range(2, r)))
            gens.append(tuple((i + 1) % r for i in range(r)))
        return cls(r, tuple(gens), "symmetric")

    @classmethod
    def elementary_abelian(cls, p: int, k: int) -> "PermAction":
        """(Z/p)^k acting on itself by translation, elements in lexicographic order."""
        if not is_prime(p) or k < 1:
            raise ValueError("need p prime and k >= 1")
        elems = list(product(range(p), repeat=k))
        index = {e: i for i, e in enumerate(elems)}
        gens = []
        for j in range(k):
            shift = tuple(1 if t == j else 0 for t in range(k))
            gens.append(tuple(index[tuple((a + b) % p for a, b in zip(e, shift))] for e in elems))
        return cls(p**k, tuple(gens), "elementary_abelian", p, k)

    def elements(self) -> tuple[Perm, ...]:
        if not self._elements:
            ident = tuple(range(self.r))
            seen = {ident}
            frontier = [ident]
            while frontier:
                nxt = []
                for g in frontier:
                    for s in self.generators:
                        h = compose(s, g)
                        if h not in seen:
                            seen.add(h)
                            nxt.append(h)
                frontier = nxt
            object.__setattr__(self, "_elements", tuple(sorted(seen)))
        return self._elements

    def order(self) -> int:
        return len(self.elements())

    def __contains__(self, g) -> bool:
        return tuple(g) in set(self.elements())

    def is_free_on_slots(self) -> bool:
        ident = tuple(range(self.r))
        return all(g == ident or all(g[i] != i for i in range(self.r)) for g in self.elements())


def act(g: Perm, cell: Cell, group: PermAction | None = None) -> Cell:
    """Move the part in slot i to slot g(i)."""
    g = tuple(g)
    if group is not None and g not in group:
        raise ValueError(f"{g} is not in the declared group")
    if sorted(g) != list(range(len(cell))):
        raise ValueError(f"{g} is not a permutation of {len(cell)} slots")
    out: list[Face] = [()] * len(cell)
    for i, part in enumerate(cell):
        out[g[i]] = part
    return tuple(out)


def koszul_sign(g: Perm, cell: Cell) -> int:
    """Sign of reordering graded parts: (-1)^(dim a * dim b) per inverted pair."""
    s = 0
    for i in range(len(cell)):
        for j in range(i + 1, len(cell)):
            if g[i] > g[j]:
                s += (len(cell[i]) - 1) * (len(cell[j]) - 1)
    return -1 if s % 2 else 1


def act_on_slots(g: Perm, slots: Iterable[int]) -> frozenset[int]:
    return frozenset(g[i] for i in slots)


# -- cover by upper ideals and the maps built from it ---------------------------------


@dataclass
class UpperIdealCover:
    """P = cells of Conf_r(X)_{r(n+1)-1} not in Conf_r(X_n), covered by the P_i."""

    r: int
    n: int
    conf: ConfComplex
    small: frozenset[Cell]
    big: list[Cell]
    parts: list[frozenset[Cell]]

    def index_set(self, cell: Cell) -> frozenset[int]:
        return frozenset(i for i in range(self.r) if cell in self.parts[i])

    def verify(self) -> dict[str, bool]:
        """Up-set, covering and empty-intersection checks over the whole poset."""
        P = self.conf.poset()
        bigset = set(self.big)
        up = True
        for i, part in enumerate(self.parts):
            for c in part:
                for j in P.strictly_above(P.index[c]):
                    above = P.elements[j]
                    if above in bigset and above not in part:
                        up = False
        union = frozenset().union(*self.parts) if self.parts else frozenset()
        inter = frozenset.intersection(*self.parts) if self.parts else frozenset()
        small_closed = all(P.elements[j] in self.small
                           for c in self.small for j in P.lower_covers(P.index[c]))
        return {"upper_ideals": up, "covering": union == bigset,
                "empty_intersection": not inter, "small_is_subcomplex": small_closed}


def upper_ideal_cover(X: SimplicialComplex, r: int, n: int, conf: ConfComplex | None = None) -> UpperIdealCover:
    m = r * (n + 1) - 1
    if m < 0:
        raise ValueError("r(n+1)-1 must be >= 0")
    C = build_conf(X, r, max_total_dim=m) if conf is None else conf_skeleton(conf, m)
    small = frozenset(c for c in C.cells if all(len(s) - 1 <= n for s in c))
    big = [c for c in C.cells if c not in small]
    parts = [frozenset(c for c in big if len(c[i]) - 1 > n) for i in range(r)]
    return UpperIdealCover(r, n, C, small, big, parts)


@dataclass
class NerveMap:
    """Vertex map from the order complex of P to sd of the boundary of the (r-1)-simplex.

    A vertex (cell) goes to its slot set ``{i : cell in P_i}``, a proper
    non-empty subset of the r slots, i.e. a vertex of the subdivided
    boundary sphere.
    """

    cover: UpperIdealCover
    table: dict[Cell, frozenset[int]]

    def __call__(self, chain: Sequence[Cell]) -> frozenset[frozenset[int]]:
        return frozenset(self.table[c] for c in chain)

    def image_is_chain(self, chain: Sequence[Cell]) -> bool:
        imgs = sorted(self(chain), key=len)
        return all(a < b for a, b in zip(imgs, imgs[1:]))

    def to_dict(self) -> dict:
        return {"r": self.cover.r, "n": self.cover.n,
                "vertex_images": [{"cell": [list(s) for s in c], "image": sorted(self.table[c])}
                                  for c in self.cover.big]}


def nerve_map(cover: UpperIdealCover) -> NerveMap:
    if not cover.big:
        raise ValueError("empty cover")
    table = {}
    for c in cover.big:
        s = cover.index_set(c)
        if not s or len(s) == cover.r:
            raise ValueError(f"cell {c} violates the cover invariants")
        table[c] = s
    return NerveMap(cover, table)


def act_on_vertex_set(g: Perm, image: Iterable[frozenset[int]]) -> frozenset[frozenset[int]]:
    return frozenset(act_on_slots(g, s) for s in image)


@dataclass
class JoinDecomposition:
    """Split a chain of Conf_r(X)_{r(n+1)-1} into its Conf_r(X_n) and P parts."""

    cover: UpperIdealCover

    def __call__(self, chain: Sequence[Cell]) -> tuple[tuple[Cell, ...], tuple[Cell, ...]]:
        small = tuple(c for c in chain if c in self.cover.small)
        big = tuple(c for c in chain if c not in self.cover.small)
        return small, big

    def join_parameter(self, chain: Sequence[Cell], weights: Sequence[Fraction]) -> Fraction:
        """Total barycentric weight on the P side (0 on Conf_r(X_n), 1 on P)."""
        return sum((w for c, w in zip(chain, weights) if c not in self.cover.small), Fraction(0))


def join_decomposition(X: SimplicialComplex, r: int, n: int, cover: UpperIdealCover | None = None) -> JoinDecomposition:
    return JoinDecomposition(upper_ideal_cover(X, r, n) if cover is None else cover)


def sd_chains(conf: ConfComplex, max_dim: int | None = None):
    """Simplices of the barycentric subdivision, as tuples of cells bottom first."""
    P = conf.poset()
    for ch in iter_chains(P, max_dim):
        yield tuple(P.elements[i] for i in ch)


# -- the antisymmetric function Psi on Conf_2 ----------------------------------------


SWAP: Perm = (1, 0)


@dataclass
class PLMapOnSubdivision:
    """A real function on sd(Conf_2(X)_{2n+1}), affine on each chain simplex."""

    n: int
    cover: UpperIdealCover
    values: dict[Cell, int]

    def vertex_value(self, cell: Cell) -> int:
        return self.values[cell]

    def __call__(self, chain: Sequence[Cell], weights: Sequence[Fraction]) -> Fraction:
        """Evaluate at the point with barycentric ``weights`` on ``chain``."""
        if len(chain) != len(weights):
            raise ValueError("one weight per chain vertex")
        if any(w < 0 for w in weights) or sum(weights) != 1:
            raise ValueError("weights must be non-negative and sum to 1")
        return sum((Fraction(w) * self.values[c] for c, w in zip(chain, weights)), Fraction(0))

    def join_form(self, chain: Sequence[Cell], weights: Sequence[Fraction]) -> Fraction:
        """The same value written as q * sign, q the weight on the P side."""
        q = Fraction(0)
        sign = 0
        for c, w in zip(chain, weights):
            v = self.values[c]
            if v:
                if sign and v != sign:
                    raise AssertionError("chain meets both P_1 and P_2")
                sign = v
                q += Fraction(w)
        return q * sign

    def zero_cells(self) -> frozenset[Cell]:
        return frozenset(c for c, v in self.values.items() if v == 0)

    def to_dict(self) -> dict:
        return {"n": self.n, "vertex_values": [{"cell": [list(s) for s in c], "value": v}
                                               for c, v in self.values.items()]}


def psi_map(X: SimplicialComplex, n: int, r: int = 2) -> PLMapOnSubdivision:
    """0 on cells of Conf_2(X_n), +1 when the first part is too big, -1 when the second is."""
    if r != 2:
        raise ValueError("psi is defined for r = 2 only")
    cover = upper_ideal_cover(X, 2, n)
    values = {}
    for c in cover.conf.cells:
        if c in cover.small:
            values[c] = 0
        elif c in cover.parts[0]:
            values[c] = 1
        else:
            values[c] = -1
    return PLMapOnSubdivision(n, cover, values)


def conf_to_json(C: ConfComplex) -> str:
    return json.dumps(C.to_dict(), separators=(",", ":"))


def action_boundary_compatible(C: ConfComplex, group: PermAction) -> bool:
    """Exact check that c -> koszul_sign(g, c) * (g c) commutes with the cellular boundary."""
    from .homology import product_cell_boundary

    for c in C.cells:
        for g in group.elements():
            lhs: dict[Cell, int] = {}
            for face, s in product_cell_boundary(act(g, c)):
                lhs[face] = lhs.get(face, 0) + s
            sc = koszul_sign(g, c)
            rhs: dict[Cell, int] = {}
            for face, s in product_cell_boundary(c):
                key = act(g, face)
                rhs[key] = rhs.get(key, 0) + s * sc * koszul_sign(g, face)
            if {k: v for k, v in lhs.items() if v} != {k: v for k, v in rhs.items() if v}:
                return False
    return True
