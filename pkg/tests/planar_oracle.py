"""Brute-force planar intersection of convex hulls of at most three points.

Independent of the LP: uses only exact orientation predicates.  Two planar
convex hulls meet iff a vertex of one lies in the other, or two boundary
segments cross.
"""

from fractions import Fraction
from itertools import combinations


def orient(a, b, c):
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def on_segment(p, a, b):
    return orient(a, b, p) == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) \
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def segments_meet(a, b, c, d):
    o1, o2, o3, o4 = orient(a, b, c), orient(a, b, d), orient(c, d, a), orient(c, d, b)
    if ((o1 > 0 and o2 < 0) or (o1 < 0 and o2 > 0)) and ((o3 > 0 and o4 < 0) or (o3 < 0 and o4 > 0)):
        return True
    return on_segment(c, a, b) or on_segment(d, a, b) or on_segment(a, c, d) or on_segment(b, c, d)


def edges(pts):
    if len(pts) == 1:
        return [(pts[0], pts[0])]
    return list(combinations(pts, 2))


def in_hull(p, pts):
    if len(pts) == 3 and orient(*pts) != 0:
        s = [orient(pts[0], pts[1], p), orient(pts[1], pts[2], p), orient(pts[2], pts[0], p)]
        return all(v >= 0 for v in s) or all(v <= 0 for v in s)
    return any(on_segment(p, a, b) for a, b in edges(pts))


def hulls_meet(A, B):
    if any(in_hull(p, B) for p in A) or any(in_hull(p, A) for p in B):
        return True
    return any(segments_meet(a, b, c, d) for a, b in edges(A) for c, d in edges(B))


def brute_force_exists(X, n, coords):
    faces = [f for f in X.sorted_faces() if len(f) - 1 <= n]
    for s, t in combinations(faces, 2):
        if set(s) & set(t):
            continue
        if hulls_meet([coords[v] for v in s], [coords[v] for v in t]):
            return True
    return False


def as_points(f):
    return {v: tuple(Fraction(c) for c in p) for v, p in f.coords.items()}
