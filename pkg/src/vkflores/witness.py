"""Exact search for Tverberg-type intersections of affine and PL maps.

A witness is r pairwise disjoint faces together with one exact rational
point lying in all of their images, and barycentric coefficients that
exhibit the point in each image.
"""

from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from typing import Callable, Iterable, Sequence

from .complex_core import DEFAULT_MAX_FACES, Face, GuardExceeded, SimplicialComplex, face_sort_key
from .exact_lp import feasible_point

Point = tuple[Fraction, ...]


def parse_rational(value) -> Fraction:
    if isinstance(value, bool):
        raise ValueError("booleans are not coordinates")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise ValueError(f"coordinate {value!r} must be an integer or a 'p/q' string")


def _barycenter(points: Sequence[Point]) -> Point:
    k = len(points)
    return tuple(sum(c) / k for c in zip(*points))


@dataclass(frozen=True)
class AffineMap:
    """Vertex coordinates in Q^d, extended affinely over every face."""

    d: int
    coords: dict[int, Point]

    def point(self, support: Face) -> Point:
        """Image of the barycenter of ``support``."""
        try:
            return _barycenter([self.coords[v] for v in support])
        except KeyError as exc:
            raise ValueError(f"vertex {exc.args[0]} has no coordinates") from None

    def pieces(self, face: Face) -> list[tuple[tuple[Face, ...], list[Point]]]:
        sup = tuple((v,) for v in face)
        return [(sup, [self.point(s) for s in sup])]

    piecewise = False

    def to_dict(self, X: SimplicialComplex) -> dict:
        return {"dim": self.d,
                "coords": {str(X.labels[v]): [str(c) for c in self.coords[v]] for v in sorted(self.coords)}}


def affine_map_from_dict(doc: dict, X: SimplicialComplex) -> AffineMap:
    d = int(doc["dim"])
    lookup = {str(lab): i for i, lab in enumerate(X.labels)}
    coords = {}
    for key, vals in doc["coords"].items():
        if key not in lookup:
            raise ValueError(f"coordinates given for unknown vertex {key!r}")
        pt = tuple(parse_rational(v) for v in vals)
        if len(pt) != d:
            raise ValueError(f"vertex {key!r} has {len(pt)} coordinates, expected {d}")
        coords[lookup[key]] = pt
    return AffineMap(d, coords)


def affine_map_from_json(text: str, X: SimplicialComplex) -> AffineMap:
    return affine_map_from_dict(json.loads(text), X)


@dataclass(frozen=True)
class ConstraintMap:
    """g = (f, c) on sd(X): the subdivision vertex of a face goes to
    (f(barycenter), 0 if dim <= n else 1)."""

    base: AffineMap
    n: int

    @property
    def d(self) -> int:
        return self.base.d + 1

    piecewise = True

    def c(self, support: Face) -> int:
        return 0 if len(support) - 1 <= self.n else 1

    def point(self, support: Face) -> Point:
        return self.base.point(support) + (Fraction(self.c(support)),)

    def pieces(self, face: Face) -> list[tuple[tuple[Face, ...], list[Point]]]:
        """Images of the top simplices of sd(face): one per vertex ordering."""
        out = []
        for order in permutations(face):
            chain = tuple(tuple(sorted(order[: i + 1])) for i in range(len(order)))
            out.append((chain, [self.point(s) for s in chain]))
        return out


@dataclass(frozen=True)
class DiagonalDescriptor:
    """The thin diagonal of (R^d)^r and the unit sphere of its orthogonal complement."""

    r: int
    d: int

    @property
    def sphere_dim(self) -> int:
        return (self.r - 1) * self.d - 1

    def on_diagonal(self, points: Sequence[Point]) -> bool:
        return all(p == points[0] for p in points)

    def complement_component(self, points: Sequence[Point]) -> list[Point]:
        """Orthogonal projection away from the diagonal: subtract the mean point."""
        mean = _barycenter(points)
        return [tuple(a - b for a, b in zip(p, mean)) for p in points]


@dataclass
class Witness:
    faces: tuple[Face, ...]
    point: Point
    coefficients: tuple[tuple[Fraction, ...], ...]
    supports: tuple[tuple[Face, ...], ...]

    @property
    def dim_sum(self) -> int:
        return sum(len(f) - 1 for f in self.faces)

    def to_dict(self, X: SimplicialComplex) -> dict:
        lab = X.labels
        return {"r": len(self.faces), "dim_sum": self.dim_sum,
                "faces": [[lab[v] for v in f] for f in self.faces],
                "point": [str(c) for c in self.point],
                "coefficients": [[str(c) for c in cs] for cs in self.coefficients],
                "supports": [[[lab[v] for v in s] for s in sup] for sup in self.supports]}


def witness_from_dict(doc: dict, X: SimplicialComplex) -> Witness:
    lookup = {str(lab): i for i, lab in enumerate(X.labels)}

    def face(vs):
        return tuple(sorted(lookup[str(v)] for v in vs))

    return Witness(tuple(face(f) for f in doc["faces"]),
                   tuple(parse_rational(c) for c in doc["point"]),
                   tuple(tuple(parse_rational(c) for c in cs) for cs in doc["coefficients"]),
                   tuple(tuple(face(s) for s in sup) for sup in doc["supports"]))


@dataclass
class Verification:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_witness(w: Witness, f) -> Verification:
    """Exact re-check of a witness against an AffineMap or a ConstraintMap."""
    if not (len(w.faces) == len(w.coefficients) == len(w.supports)):
        return Verification(False, "shape: faces, coefficients and supports differ in length")
    for i in range(len(w.faces)):
        for j in range(i + 1, len(w.faces)):
            if set(w.faces[i]) & set(w.faces[j]):
                return Verification(False, f"disjointness: faces {i} and {j} share a vertex")
    if len(w.point) != f.d:
        return Verification(False, "dimension: point has the wrong length")
    for face, coeffs, sup in zip(w.faces, w.coefficients, w.supports):
        if len(coeffs) != len(sup):
            return Verification(False, "shape: one coefficient per support element")
        if any(c < 0 for c in coeffs):
            return Verification(False, "negativity: negative barycentric coefficient")
        if sum(coeffs) != 1:
            return Verification(False, "normalization: coefficients do not sum to 1")
        if any(not set(s) <= set(face) for s in sup):
            return Verification(False, "support: element not contained in its face")
        if f.piecewise:
            ordered = sorted(sup, key=len)
            if any(not set(a) < set(b) for a, b in zip(ordered, ordered[1:])):
                return Verification(False, "support: not a chain of the subdivision")
        try:
            img = [f.point(s) for s in sup]
        except ValueError as exc:
            return Verification(False, f"coordinates: {exc}")
        x = tuple(sum((c * p[t] for c, p in zip(coeffs, img)), Fraction(0)) for t in range(f.d))
        if x != tuple(w.point):
            return Verification(False, "image: affine image differs from the witness point")
    return Verification(True)


# -- the search ------------------------------------------------------------------


def common_point(point_sets: Sequence[Sequence[Point]]):
    """Exact test of whether the convex hulls share a point.

    Returns ``(x, coefficient lists)`` or ``None``.
    """
    d = len(point_sets[0][0])
    for t in range(d):
        lo = max(min(p[t] for p in ps) for ps in point_sets)
        hi = min(max(p[t] for p in ps) for ps in point_sets)
        if lo > hi:
            return None
    sizes = [len(ps) for ps in point_sets]
    offsets = [sum(sizes[:i]) for i in range(len(sizes))]
    nvar = sum(sizes)
    A: list[list[Fraction]] = []
    b: list[Fraction] = []
    for i, ps in enumerate(point_sets):
        row = [Fraction(0)] * nvar
        for j in range(len(ps)):
            row[offsets[i] + j] = Fraction(1)
        A.append(row)
        b.append(Fraction(1))
    first = point_sets[0]
    for i in range(1, len(point_sets)):
        for t in range(d):
            row = [Fraction(0)] * nvar
            for j, p in enumerate(first):
                row[j] += p[t]
            for j, p in enumerate(point_sets[i]):
                row[offsets[i] + j] -= p[t]
            A.append(row)
            b.append(Fraction(0))
    lam = feasible_point(A, b)
    if lam is None:
        return None
    coeffs = [tuple(lam[offsets[i]: offsets[i] + sizes[i]]) for i in range(len(point_sets))]
    x = tuple(sum((c * p[t] for c, p in zip(coeffs[0], first)), Fraction(0)) for t in range(d))
    return x, coeffs


def disjoint_r_tuples(faces: Sequence[Face], r: int, max_dim_sum: int | None = None,
                      max_tuples: int | None = None) -> list[tuple[Face, ...]]:
    """Unordered r-tuples of pairwise disjoint faces, by dimension sum then lexicographically."""
    limit = DEFAULT_MAX_FACES if max_tuples is None else max_tuples
    faces = sorted(faces, key=face_sort_key)
    masks = []
    for f in faces:
        m = 0
        for v in f:
            m |= 1 << v
        masks.append(m)
    cap = float("inf") if max_dim_sum is None else max_dim_sum
    out = []

    def extend(start: int, chosen: list[int], used: int, dsum: int) -> None:
        if len(chosen) == r:
            out.append(tuple(chosen))
            if len(out) > limit:
                raise GuardExceeded(f"tuple enumeration exceeds guard of {limit}")
            return
        for j in range(start, len(faces)):
            dj = len(faces[j]) - 1
            if not (masks[j] & used) and dsum + dj <= cap:
                chosen.append(j)
                extend(j + 1, chosen, used | masks[j], dsum + dj)
                chosen.pop()

    extend(0, [], 0, 0)
    tuples = [tuple(faces[j] for j in t) for t in out]
    tuples.sort(key=lambda t: (sum(len(f) - 1 for f in t), [face_sort_key(f) for f in t]))
    return tuples


def search(faces: Sequence[Face], r: int, fmap, bound: int | None = None,
           max_tuples: int | None = None) -> Witness | None:
    for tup in disjoint_r_tuples(faces, r, bound, max_tuples):
        pieces = [fmap.pieces(f) for f in tup]
        for combo in product(*pieces):
            hit = common_point([pts for _, pts in combo])
            if hit is not None:
                x, coeffs = hit
                return Witness(tup, x, tuple(coeffs), tuple(sup for sup, _ in combo))
    return None


def find_witness(X: SimplicialComplex, n: int, r: int, f: AffineMap, bound: int | None = None,
                 max_tuples: int | None = None) -> Witness | None:
    """First r-tuple of pairwise disjoint faces of X_n (minimal dimension sum,
    then lexicographic) whose affine images share a point."""
    faces = [s for s in X.sorted_faces() if len(s) - 1 <= n]
    missing = {v for s in faces for v in s if v not in f.coords}
    if missing:
        raise ValueError(f"vertices without coordinates: {sorted(X.labels[v] for v in missing)}")
    return search(faces, r, f, bound, max_tuples)


@dataclass
class ConstraintLiftResult:
    g: ConstraintMap
    r: int
    bound: int
    witness: Witness | None
    carriers_in_skeleton: bool
    last_coordinate_zero: bool

    def to_dict(self, X: SimplicialComplex) -> dict:
        return {"r": self.r, "n": self.g.n, "d": self.g.base.d, "lifted_dim": self.g.d,
                "bound": self.bound,
                "witness": None if self.witness is None else self.witness.to_dict(X),
                "carriers_in_skeleton": self.carriers_in_skeleton,
                "last_coordinate_zero": self.last_coordinate_zero}


def constraint_lift(X: SimplicialComplex, n: int, f: AffineMap, r: int = 2,
                    zero_extend: bool = False, max_tuples: int | None = None) -> ConstraintLiftResult:
    """Search the lifted map g = (f, c) on all of X with dimension sum <= (r-1)(d+1).

    A minimal witness of g has every point in the relative interior of its
    face; its faces then all lie in X_n and the c-coordinate vanishes.
    """
    coords = dict(f.coords)
    for v in range(X.vertex_count):
        if v not in coords:
            if not zero_extend:
                raise ValueError(f"vertex {X.labels[v]!r} has no coordinates")
            coords[v] = (Fraction(0),) * f.d
    g = ConstraintMap(AffineMap(f.d, coords), n)
    bound = (r - 1) * (f.d + 1)
    w = search(X.sorted_faces(), r, g, bound, max_tuples)
    in_skel = w is not None and all(len(s) - 1 <= n for s in w.faces)
    zero = w is not None and w.point[-1] == 0
    return ConstraintLiftResult(g, r, bound, w, in_skel, zero)


# -- randomized experiments ----------------------------------------------------------


def random_affine_map(X: SimplicialComplex, d: int, rng: random.Random,
                      coord_box: int = 10, denominator: int = 1000) -> AffineMap:
    """Coordinates drawn uniformly from {a/denominator : |a| <= coord_box*denominator}."""
    span = coord_box * denominator
    coords = {v: tuple(Fraction(rng.randint(-span, span), denominator) for _ in range(d))
              for v in range(X.vertex_count)}
    return AffineMap(d, coords)


@dataclass
class TrialStats:
    r: int
    n: int
    d: int
    seed: int
    trials: int
    hits: int
    all_verified: bool
    dim_sum_histogram: dict[int, int]
    records: list[dict] = field(repr=False)

    @property
    def hit_fraction(self) -> Fraction:
        return Fraction(self.hits, self.trials)

    def to_dict(self) -> dict:
        return {"r": self.r, "n": self.n, "d": self.d, "seed": self.seed, "trials": self.trials,
                "hits": self.hits, "hit_fraction": float(self.hit_fraction),
                "all_verified": self.all_verified,
                "dim_sum_histogram": {str(k): v for k, v in sorted(self.dim_sum_histogram.items())},
                "records": self.records}


def trial_seeds(seed: int, trials: int) -> list[int]:
    rng = random.Random(seed)
    return [rng.getrandbits(63) for _ in range(trials)]


def random_trials(X: SimplicialComplex, n: int, r: int, d: int, trials: int, seed: int,
                  coord_box: int = 10, denominator: int = 1000, bound: int | None = None,
                  keep_witnesses: bool = False) -> TrialStats:
    """Run ``find_witness`` on ``trials`` random maps; trial i uses ``trial_seeds(seed, trials)[i]``."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    hist: Counter[int] = Counter()
    hits = 0
    verified = True
    records = []
    for i, ts in enumerate(trial_seeds(seed, trials)):
        f = random_affine_map(X, d, random.Random(ts), coord_box, denominator)
        w = find_witness(X, n, r, f, bound)
        rec = {"trial": i, "seed": ts, "hit": w is not None}
        if w is not None:
            hits += 1
            hist[w.dim_sum] += 1
            ok = bool(verify_witness(w, f))
            verified &= ok
            rec["dim_sum"] = w.dim_sum
            rec["verified"] = ok
            if keep_witnesses:
                rec["witness"] = w.to_dict(X)
        records.append(rec)
    return TrialStats(r, n, d, seed, trials, hits, verified, dict(hist), records)
