"""Reduced homology over Z/p by sparse elimination.

Two chain models share one :class:`ChainComplex` type: ordinary simplicial
chains, and cellular chains of a product-cell complex (a deleted product),
whose boundary carries the Koszul sign of the part being differentiated.
All arithmetic is modular integer arithmetic.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Sequence, TextIO

from .complex_core import DEFAULT_MAX_FACES, GuardExceeded, SimplicialComplex

Column = dict[int, int]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p) or p >= 2**31:
        raise ValueError(f"{p!r} is not a prime below 2**31")
    return p


# -- sparse rank ---------------------------------------------------------------


def rank_mod_p(columns: Iterable[Column], p: int) -> int:
    """Rank over F_p of a matrix given as sparse columns ``{row: value}``.

    Gaussian elimination on the column vectors with a Markowitz-style pivot
    rule: take a sparsest remaining vector, and inside it the entry whose
    row is shared with the fewest other vectors.  Values must already be
    reduced mod p (zeros omitted).
    """
    vecs: dict[int, Column] = {}
    where: dict[int, set[int]] = {}
    for vid, col in enumerate(columns):
        if not col:
            continue
        vecs[vid] = dict(col)
        for r in col:
            where.setdefault(r, set()).add(vid)
    heap = [(len(v), vid) for vid, v in vecs.items()]
    heapq.heapify(heap)
    rank = 0
    while heap:
        nnz, vid = heapq.heappop(heap)
        v = vecs.get(vid)
        if v is None or len(v) != nnz:
            continue
        piv = min(v, key=lambda r: (len(where[r]), r))
        inv = pow(v[piv], -1, p)
        for r in v:
            where[r].discard(vid)
        del vecs[vid]
        rank += 1
        for wid in sorted(where[piv]):
            w = vecs[wid]
            factor = (w[piv] * inv) % p
            for r, a in v.items():
                b = (w.get(r, 0) - factor * a) % p
                if b:
                    if r not in w:
                        where[r].add(wid)
                    w[r] = b
                elif r in w:
                    del w[r]
                    where[r].discard(wid)
            if w:
                heapq.heappush(heap, (len(w), wid))
            else:
                del vecs[wid]
    return rank


# -- chain complexes -------------------------------------------------------------


class ChainComplex:
    """Augmented chain complex over F_p, built through degree ``cap + 1``.

    ``bases[k]`` lists the cells of degree k (``bases[-1]`` is the single
    augmentation generator ``()``); ``boundary[k]`` holds the columns of
    D_k : C_k -> C_{k-1} as ``{row index: value}``.
    """

    def __init__(self, p: int, cap: int, bases: dict[int, list], boundary: dict[int, list[Column]]):
        self.p = p
        self.cap = cap
        self.bases = bases
        self.boundary = boundary
        self.augmented = True
        self._ranks: dict[int, int] = {}

    @property
    def top(self) -> int:
        return self.cap + 1

    def size(self, k: int) -> int:
        return len(self.bases.get(k, ()))

    def rank(self, k: int) -> int:
        if k < 0 or k > self.top:
            return 0
        if k not in self._ranks:
            self._ranks[k] = rank_mod_p(self.boundary[k], self.p)
        return self._ranks[k]

    def check_dd(self) -> bool:
        """Exact test of D_{k} D_{k+1} = 0 for every materialized pair."""
        p = self.p
        for k in range(0, self.top):
            lower = self.boundary[k]
            for col in self.boundary[k + 1]:
                acc: dict[int, int] = {}
                for r, a in col.items():
                    for s, b in lower[r].items():
                        acc[s] = (acc.get(s, 0) + a * b) % p
                if any(acc.values()):
                    return False
        return True

    def euler_characteristic(self, upto: int | None = None) -> int:
        top = self.top if upto is None else upto
        return sum((-1) ** k * self.size(k) for k in range(0, top + 1))

    def triples(self):
        """Yield ``(degree, row, col, value)`` for every stored entry."""
        for k in range(0, self.top + 1):
            for c, col in enumerate(self.boundary[k]):
                for r in sorted(col):
                    yield k, r, c, col[r]

    def export_triples(self, fh: TextIO) -> None:
        fh.write(f"# p={self.p} cap={self.cap}\n")
        for k, r, c, v in self.triples():
            fh.write(f"{k} {r} {c} {v}\n")


def _build(cells_by_degree: Callable[[int], list], faces_of: Callable[[Hashable], Iterable[tuple[Hashable, int]]],
           p: int, cap: int, check: bool, max_cells: int | None) -> ChainComplex:
    if cap < 0:
        raise ValueError("cap must be >= 0")
    p = check_prime(p)
    limit = DEFAULT_MAX_FACES if max_cells is None else max_cells
    bases: dict[int, list] = {-1: [()]}
    total = 0
    for k in range(0, cap + 2):
        bases[k] = cells_by_degree(k)
        total += len(bases[k])
        if total > limit:
            raise GuardExceeded(f"chain basis exceeds guard of {limit}")
    boundary: dict[int, list[Column]] = {0: [{0: 1} for _ in bases[0]]}
    for k in range(1, cap + 2):
        idx = {c: i for i, c in enumerate(bases[k - 1])}
        cols = []
        for c in bases[k]:
            col: Column = {}
            for face, sign in faces_of(c):
                r = idx[face]
                v = (col.get(r, 0) + sign) % p
                if v:
                    col[r] = v
                else:
                    col.pop(r, None)
            cols.append(col)
        boundary[k] = cols
    C = ChainComplex(p, cap, bases, boundary)
    if check and not C.check_dd():
        raise AssertionError("boundary of boundary is non-zero")
    return C


def simplex_boundary(face: Sequence[int]):
    if len(face) == 1:
        return
    for j in range(len(face)):
        yield tuple(face[:j]) + tuple(face[j + 1:]), (-1) ** j


def simplicial_chain_complex(X: SimplicialComplex, p: int, cap: int, check: bool = True,
                             max_cells: int | None = None) -> ChainComplex:
    by_dim: dict[int, list] = {}
    for f in X.sorted_faces():
        by_dim.setdefault(len(f) - 1, []).append(f)
    return _build(lambda k: by_dim.get(k, []), simplex_boundary, p, cap, check, max_cells)


def product_cell_boundary(cell: Sequence[Sequence[int]]):
    """Boundary terms of a product of simplices with Koszul signs."""
    offset = 0
    for i, part in enumerate(cell):
        d = len(part) - 1
        if d > 0:
            pre = (-1) ** offset
            for face, s in simplex_boundary(part):
                yield tuple(cell[:i]) + (face,) + tuple(cell[i + 1:]), pre * s
        offset += d


def prodsimplicial_chain_complex(C, p: int, cap: int, check: bool = True,
                                 max_cells: int | None = None) -> ChainComplex:
    """Cellular chains of a deleted product ``C`` (a ConfComplex)."""
    return _build(C.cells_of_dim, product_cell_boundary, p, cap, check, max_cells)


# -- Betti numbers -----------------------------------------------------------------


@dataclass(frozen=True)
class BettiVector:
    """Reduced Betti numbers in degrees -1..m over F_p."""

    p: int
    values: tuple[int, ...]

    @property
    def upto(self) -> int:
        return len(self.values) - 2

    def __getitem__(self, k: int) -> int:
        if k < -1 or k > self.upto:
            raise IndexError(f"degree {k} outside -1..{self.upto}")
        return self.values[k + 1]

    def vanishes_through(self, n: int) -> bool:
        return all(self[k] == 0 for k in range(-1, n + 1))

    def to_dict(self) -> dict:
        return {"p": self.p, "from_degree": -1, "reduced_betti": list(self.values)}


def reduced_betti(C: ChainComplex, m: int) -> BettiVector:
    """beta_k = dim C_k - rank D_k - rank D_{k+1} for k = -1..m."""
    if m > C.cap:
        raise ValueError(f"chain complex built to cap {C.cap}, need {m}")
    vals = [1 - C.rank(0)]
    for k in range(0, m + 1):
        vals.append(C.size(k) - C.rank(k) - C.rank(k + 1))
    return BettiVector(C.p, tuple(vals))


def betti(X, p: int, upto: int, max_cells: int | None = None, check: bool = False) -> BettiVector:
    """Reduced Betti numbers of a simplicial complex or a ConfComplex."""
    cap = max(upto, 0)
    if isinstance(X, SimplicialComplex):
        C = simplicial_chain_complex(X, p, cap, check=check, max_cells=max_cells)
    else:
        C = prodsimplicial_chain_complex(X, p, cap, check=check, max_cells=max_cells)
    return reduced_betti(C, upto)


@dataclass(frozen=True)
class AcyclicityResult:
    """Verdict of an n-acyclicity test; truthiness is the verdict."""

    value: bool
    n: int
    evidence: BettiVector

    def __bool__(self) -> bool:
        return self.value


def is_n_acyclic(X, n: int, p: int, max_cells: int | None = None) -> AcyclicityResult:
    """Non-empty and reduced homology zero in degrees <= n.

    For ``n = -1`` this is plain non-emptiness.
    """
    if n < -1:
        raise ValueError("n must be >= -1")
    ev = betti(X, p, n, max_cells=max_cells)
    return AcyclicityResult(ev.vanishes_through(n), n, ev)
