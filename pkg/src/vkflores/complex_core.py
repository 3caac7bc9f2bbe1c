"""Finite simplicial complexes, face posets and order complexes.

Faces are stored as strictly increasing tuples of dense vertex ids
``0..V-1``; the empty face is never stored.  The original vertex labels
given to :func:`from_facets` are kept in ``SimplicialComplex.labels``.
"""

from __future__ import annotations

import hashlib
import json
from itertools import combinations
from typing import Hashable, Iterable, Sequence

Face = tuple[int, ...]

DEFAULT_MAX_FACES = 10**7


class ComplexError(ValueError):
    """Malformed input to a complex constructor."""


class GuardExceeded(RuntimeError):
    """An enumeration exceeded the configured cell-count guard."""


def _check_guard(count: int, max_faces: int | None) -> None:
    limit = DEFAULT_MAX_FACES if max_faces is None else max_faces
    if count > limit:
        raise GuardExceeded(f"cell count exceeds guard of {limit}")


def face_sort_key(face: Sequence[int]) -> tuple:
    return (len(face), tuple(face))


class SimplicialComplex:
    """An immutable, downward closed set of faces.

    Use :func:`from_facets` for user input; the constructor trusts that
    ``faces`` is already downward closed unless ``check=True``.
    """

    __slots__ = ("_faces", "_sorted", "_facets", "vertex_count", "labels", "_masks")

    def __init__(self, faces: Iterable[Face], vertex_count: int | None = None,
                 labels: Sequence[Hashable] | None = None, check: bool = False):
        fs = frozenset(tuple(f) for f in faces)
        if () in fs:
            fs = fs - {()}
        if vertex_count is None:
            vertex_count = 1 + max((f[-1] for f in fs), default=-1)
        self.vertex_count = vertex_count
        self.labels = tuple(range(vertex_count)) if labels is None else tuple(labels)
        if len(self.labels) != vertex_count:
            raise ComplexError("label table size does not match vertex count")
        self._faces = fs
        self._sorted: list[Face] | None = None
        self._facets: list[Face] | None = None
        self._masks: dict[Face, int] | None = None
        if check:
            self._validate()

    def _validate(self) -> None:
        for f in self._faces:
            if list(f) != sorted(set(f)):
                raise ComplexError(f"face {f} is not strictly increasing")
            if f[0] < 0 or f[-1] >= self.vertex_count:
                raise ComplexError(f"face {f} uses an unknown vertex")
            for k in range(1, len(f)):
                for sub in combinations(f, k):
                    if sub not in self._faces:
                        raise ComplexError(f"face set not downward closed at {sub}")
        used = {v for f in self._faces for v in f}
        if len(used) != self.vertex_count:
            raise ComplexError("every vertex must occur in some face")

    # -- basic queries ---------------------------------------------------

    @property
    def faces(self) -> frozenset[Face]:
        return self._faces

    @property
    def is_empty(self) -> bool:
        return not self._faces

    @property
    def dim(self) -> int:
        return max((len(f) - 1 for f in self._faces), default=-1)

    def __len__(self) -> int:
        return len(self._faces)

    def __contains__(self, face) -> bool:
        return tuple(face) in self._faces

    def __iter__(self):
        return iter(self.sorted_faces())

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self._faces == other._faces and self.vertex_count == other.vertex_count

    def __hash__(self) -> int:
        return hash((self._faces, self.vertex_count))

    def __repr__(self) -> str:
        return (f"SimplicialComplex(vertices={self.vertex_count}, faces={len(self)}, "
                f"dim={self.dim})")

    def sorted_faces(self) -> list[Face]:
        """Faces in canonical (dimension, lexicographic) order."""
        if self._sorted is None:
            self._sorted = sorted(self._faces, key=face_sort_key)
        return self._sorted

    def faces_of_dim(self, k: int) -> list[Face]:
        return [f for f in self.sorted_faces() if len(f) == k + 1]

    def f_vector(self) -> list[int]:
        out = [0] * (self.dim + 1)
        for f in self._faces:
            out[len(f) - 1] += 1
        return out

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * c for k, c in enumerate(self.f_vector()))

    @property
    def facets(self) -> list[Face]:
        if self._facets is None:
            maximal = []
            for f in self.sorted_faces():
                fset = set(f)
                if not any(len(g) == len(f) + 1 for g in self._cofaces_candidates(f, fset)):
                    maximal.append(f)
            self._facets = maximal
        return self._facets

    def _cofaces_candidates(self, f: Face, fset: set[int]):
        for v in range(self.vertex_count):
            if v not in fset:
                g = tuple(sorted(fset | {v}))
                if g in self._faces:
                    yield g

    def mask(self, face: Face) -> int:
        """Bitmask of a face's vertex set."""
        if self._masks is None:
            self._masks = {f: _to_mask(f) for f in self._faces}
        return self._masks[face]

    def vertex_id(self, label: Hashable) -> int:
        return self.labels.index(label)

    def digest(self) -> str:
        """sha256 of the canonical JSON serialization."""
        return hashlib.sha256(to_json(self).encode()).hexdigest()


def _to_mask(face: Iterable[int]) -> int:
    m = 0
    for v in face:
        m |= 1 << v
    return m


def downward_closure(facets: Iterable[Sequence[int]]) -> set[Face]:
    out: set[Face] = set()
    for f in facets:
        f = tuple(sorted(f))
        if f in out:
            continue
        for k in range(1, len(f) + 1):
            out.update(combinations(f, k))
    return out


def from_facets(facets: Sequence[Sequence[Hashable]], max_faces: int | None = None) -> SimplicialComplex:
    """Build the downward closure of a facet list.

    Vertex labels are renumbered densely in sorted order (first-seen order
    when labels are not mutually comparable).  An empty facet list gives
    the empty complex, which reports ``is_empty``.
    """
    seen: dict[Hashable, None] = {}
    for facet in facets:
        if len(facet) == 0:
            raise ComplexError("empty facet")
        if len(set(facet)) != len(facet):
            raise ComplexError(f"repeated vertex in facet {list(facet)}")
        for v in facet:
            seen.setdefault(v, None)
    try:
        labels = sorted(seen)
    except TypeError:
        labels = list(seen)
    index = {lab: i for i, lab in enumerate(labels)}
    for f in facets:
        _check_guard(2 ** len(f) - 1, max_faces)
    faces = downward_closure([index[v] for v in f] for f in facets)
    _check_guard(len(faces), max_faces)
    return SimplicialComplex(faces, len(labels), labels)


def empty_complex() -> SimplicialComplex:
    return SimplicialComplex((), 0)


def _restrict(X: SimplicialComplex, faces: Iterable[Face]) -> SimplicialComplex:
    # subcomplex keeps the ambient numbering; unused vertices are dropped by
    # renumbering so that the "every vertex occurs" invariant holds
    faces = list(faces)
    used = sorted({v for f in faces for v in f})
    if len(used) == X.vertex_count:
        return SimplicialComplex(faces, X.vertex_count, X.labels)
    relabel = {v: i for i, v in enumerate(used)}
    new = [tuple(relabel[v] for v in f) for f in faces]
    return SimplicialComplex(new, len(used), [X.labels[v] for v in used])


def skeleton(X: SimplicialComplex, n: int) -> SimplicialComplex:
    """Faces of dimension at most ``n``."""
    if n < -1:
        raise ValueError("skeleton dimension must be >= -1")
    if n >= X.dim:
        return X
    return _restrict(X, (f for f in X.faces if len(f) <= n + 1))


def deletion(X: SimplicialComplex, sigmas: Sequence[Sequence[int]]) -> SimplicialComplex:
    """The subcomplex of faces disjoint from every ``sigma``.

    Sigmas are given in the dense vertex ids of ``X``.  Vertex labels of the
    result are the labels of the surviving vertices of ``X``.
    """
    removed = 0
    for s in sigmas:
        s = tuple(sorted(s))
        if s not in X.faces:
            raise ComplexError(f"{list(s)} is not a face")
        removed |= _to_mask(s)
    return _restrict(X, (f for f in X.faces if not (X.mask(f) & removed)))


def deletion_by_vertices(X: SimplicialComplex, removed_mask: int) -> SimplicialComplex:
    return _restrict(X, (f for f in X.faces if not (X.mask(f) & removed_mask)))


def join(X: SimplicialComplex, Y: SimplicialComplex) -> SimplicialComplex:
    """Join with Y's vertices shifted past X's; labels become ``(0, a)``/``(1, b)``."""
    off = X.vertex_count
    xf = [()] + list(X.faces)
    yf = [()] + [tuple(v + off for v in g) for g in Y.faces]
    faces = [a + b for a in xf for b in yf if a or b]
    labels = [(0, a) for a in X.labels] + [(1, b) for b in Y.labels]
    return SimplicialComplex(faces, off + Y.vertex_count, labels)


# -- posets ----------------------------------------------------------------


class Poset:
    """A finite poset given by covering pairs.

    ``elements[i]`` is an arbitrary hashable payload with dimension label
    ``dims[i]``; ``covers`` holds pairs ``(lower, upper)`` of indices.
    """

    def __init__(self, elements: Sequence[Hashable], dims: Sequence[int],
                 covers: Iterable[tuple[int, int]]):
        self.elements = list(elements)
        self.dims = list(dims)
        self.index = {e: i for i, e in enumerate(self.elements)}
        self.covers = sorted(set(covers))
        self._up: list[list[int]] = [[] for _ in self.elements]
        self._down: list[list[int]] = [[] for _ in self.elements]
        for a, b in self.covers:
            self._up[a].append(b)
            self._down[b].append(a)
        self._above: list[frozenset[int]] | None = None

    def __len__(self) -> int:
        return len(self.elements)

    def upper_covers(self, i: int) -> list[int]:
        return self._up[i]

    def lower_covers(self, i: int) -> list[int]:
        return self._down[i]

    def strictly_above(self, i: int) -> frozenset[int]:
        if self._above is None:
            order = sorted(range(len(self)), key=lambda j: -self.dims[j])
            above: list[frozenset[int]] = [frozenset()] * len(self)
            for j in order:
                acc = set()
                for b in self._up[j]:
                    acc.add(b)
                    acc |= above[b]
                above[j] = frozenset(acc)
            self._above = above
        return self._above[i]

    def less(self, i: int, j: int) -> bool:
        return j in self.strictly_above(i)

    def up_set(self, i: int) -> set[int]:
        return {i} | self.strictly_above(i)

    def down_set(self, i: int) -> set[int]:
        out, stack = {i}, [i]
        while stack:
            for a in self._down[stack.pop()]:
                if a not in out:
                    out.add(a)
                    stack.append(a)
        return out

    def subposet(self, keep: Iterable[int]) -> "Poset":
        """Induced subposet, with covers recomputed from the induced order."""
        keep = sorted(set(keep))
        pos = {j: t for t, j in enumerate(keep)}
        covers = []
        for j in keep:
            above = [b for b in self.strictly_above(j) if b in pos]
            aset = set(above)
            for b in above:
                if not any(c in aset and b in self.strictly_above(c) for c in above if c != b):
                    covers.append((pos[j], pos[b]))
        return Poset([self.elements[j] for j in keep], [self.dims[j] for j in keep], covers)


def face_poset(X: SimplicialComplex) -> Poset:
    if X.is_empty:
        raise ComplexError("face poset of the empty complex")
    elems = X.sorted_faces()
    idx = {f: i for i, f in enumerate(elems)}
    covers = []
    for f in elems:
        if len(f) > 1:
            for j in range(len(f)):
                covers.append((idx[f[:j] + f[j + 1:]], idx[f]))
    return Poset(elems, [len(f) - 1 for f in elems], covers)


class OrderComplex(SimplicialComplex):
    """Chains of a poset; vertex ``i`` is ``poset.elements[i]``."""

    __slots__ = ("poset",)

    def __init__(self, faces, poset: Poset):
        super().__init__(faces, len(poset), list(range(len(poset))))
        self.poset = poset


def iter_chains(P: Poset, max_dim: int | None = None, elements: Iterable[int] | None = None):
    """Yield chains as tuples of element indices, bottom first."""
    limit = None if max_dim is None else max_dim + 1
    starts = range(len(P)) if elements is None else elements
    allowed = None if elements is None else frozenset(elements)
    stack: list[tuple[int, ...]] = [(i,) for i in sorted(starts, reverse=True)]
    while stack:
        ch = stack.pop()
        yield ch
        if limit is not None and len(ch) >= limit:
            continue
        nxt = P.strictly_above(ch[-1])
        if allowed is not None:
            nxt = nxt & allowed
        for b in sorted(nxt, reverse=True):
            stack.append(ch + (b,))


def order_complex(P: Poset, max_dim: int | None = None, max_faces: int | None = None) -> OrderComplex:
    """All non-empty chains (optionally only those of dimension <= ``max_dim``)."""
    if len(P) == 0:
        raise ComplexError("order complex of the empty poset")
    faces = []
    for ch in iter_chains(P, max_dim):
        faces.append(tuple(sorted(ch)))
        if len(faces) % 65536 == 0:
            _check_guard(len(faces), max_faces)
    _check_guard(len(faces), max_faces)
    return OrderComplex(faces, P)


def barycentric_subdivision(X: SimplicialComplex) -> OrderComplex:
    return order_complex(face_poset(X))


# -- generators --------------------------------------------------------------


def simplex(n: int) -> SimplicialComplex:
    if n < 0:
        raise ValueError("n must be >= 0")
    return from_facets([list(range(n + 1))])


def boundary(n: int) -> SimplicialComplex:
    """Boundary of the n-simplex, an (n-1)-sphere (two points for n = 1)."""
    if n < 1:
        raise ValueError("boundary needs n >= 1")
    verts = range(n + 1)
    return from_facets([[v for v in verts if v != w] for w in verts])


def crosspolytope(d: int) -> SimplicialComplex:
    """Boundary of the d-dimensional cross-polytope: vertices ``±e_i`` as ``2i``, ``2i+1``."""
    if d < 1:
        raise ValueError("d must be >= 1")
    facets = [[]]
    for i in range(d):
        facets = [f + [2 * i + s] for f in facets for s in (0, 1)]
    return from_facets(facets)


def suspension(X: SimplicialComplex) -> SimplicialComplex:
    return join(X, boundary(1))


def generate(kind: str, n: int | None = None, X: SimplicialComplex | None = None) -> SimplicialComplex:
    if kind == "simplex":
        return simplex(n)
    if kind == "boundary":
        return boundary(n)
    if kind == "crosspolytope":
        return crosspolytope(n)
    if kind == "suspension":
        if X is None:
            raise ValueError("suspension needs a complex")
        return suspension(X)
    raise ValueError(f"unknown generator {kind!r}")


# -- serialization -----------------------------------------------------------


def to_dict(X: SimplicialComplex) -> dict:
    lab = list(X.labels)
    if not all(isinstance(a, (int, str)) for a in lab):
        lab = [str(a) for a in lab]
    return {"format_version": 1, "labels": lab,
            "facets": [[lab[v] for v in f] for f in sorted(X.facets, key=face_sort_key)]}


def to_json(X: SimplicialComplex) -> str:
    return json.dumps(to_dict(X), separators=(",", ":"))


def from_dict(doc: dict, max_faces: int | None = None) -> SimplicialComplex:
    if doc.get("format_version") != 1:
        raise ComplexError("unsupported complex format_version")
    facets = doc.get("facets")
    if not isinstance(facets, list):
        raise ComplexError("'facets' must be a list")
    X = from_facets(facets, max_faces=max_faces)
    labels = doc.get("labels")
    if labels is not None and set(labels) != set(X.labels):
        raise ComplexError("label table does not match facet vertices")
    return X


def from_json(text: str, max_faces: int | None = None) -> SimplicialComplex:
    return from_dict(json.loads(text), max_faces=max_faces)
