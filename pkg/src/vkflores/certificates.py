"""Machine-checkable certificates for complementary acyclicity, saturation,
weight lower bounds and the hypotheses of the van Kampen-Flores theorem.

Every certificate carries the evidence it was decided from (Betti vectors,
cone apexes, collapse sequences) and serializes to JSON with a fixed field
order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .complex_core import (
    DEFAULT_MAX_FACES,
    Face,
    GuardExceeded,
    SimplicialComplex,
    deletion_by_vertices,
)
from .deleted_product import build_conf
from .homology import BettiVector, betti, check_prime, is_prime

# -- Definition of k-complementary n-acyclicity ---------------------------------------


@dataclass
class TupleRecord:
    faces: tuple[Face, ...]
    dim_sum: int
    nonempty: bool
    required: int
    evidence: BettiVector
    ok: bool

    def to_dict(self, labels) -> dict:
        return {"tuple": [[labels[v] for v in f] for f in self.faces], "dim_sum": self.dim_sum,
                "nonempty": self.nonempty, "required_acyclicity": self.required,
                "betti": self.evidence.to_dict(), "ok": self.ok}


@dataclass
class AcyclicityCertificate:
    digest: str
    k: int
    n: int
    p: int
    records: list[TupleRecord]
    labels: tuple

    @property
    def verdict(self) -> bool:
        return all(r.ok for r in self.records)

    def __bool__(self) -> bool:
        return self.verdict

    def failures(self) -> list[TupleRecord]:
        return [r for r in self.records if not r.ok]

    def tuple_counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for r in self.records:
            out[len(r.faces)] = out.get(len(r.faces), 0) + 1
        return out

    def to_dict(self) -> dict:
        return {"kind": "complementary_acyclicity", "complex_digest": self.digest,
                "k": self.k, "n": self.n, "p": self.p,
                "tuple_counts": {str(i): c for i, c in sorted(self.tuple_counts().items())},
                "verdict": self.verdict,
                "records": [r.to_dict(self.labels) for r in self.records]}


def disjoint_tuples(X: SimplicialComplex, k: int, max_dim_sum: int, max_tuples: int | None = None):
    """Unordered tuples of 0..k pairwise disjoint faces with dimension sum <= max_dim_sum.

    Faces inside a tuple appear in canonical face order; tuples come out by
    size, then lexicographically.
    """
    limit = DEFAULT_MAX_FACES if max_tuples is None else max_tuples
    faces = [f for f in X.sorted_faces() if len(f) - 1 <= max_dim_sum]
    masks = [X.mask(f) for f in faces]
    count = 0
    for i in range(0, k + 1):
        stack = [((), 0, 0, 0)]
        found = []
        while stack:
            chosen, used, dsum, start = stack.pop()
            if len(chosen) == i:
                found.append(chosen)
                count += 1
                if count > limit:
                    raise GuardExceeded(f"tuple enumeration exceeds guard of {limit}")
                continue
            for j in range(len(faces) - 1, start - 1, -1):
                d = len(faces[j]) - 1
                if not (masks[j] & used) and dsum + d <= max_dim_sum:
                    stack.append((chosen + (j,), used | masks[j], dsum + d, j + 1))
        for t in sorted(found):
            yield tuple(faces[j] for j in t)


def check_complementary_acyclic(X: SimplicialComplex, k: int, n: int, p: int,
                                max_tuples: int | None = None) -> AcyclicityCertificate:
    """Check that every deletion X(s_1..s_i), i <= k, of pairwise disjoint faces
    with dimension sum at most n+1 is non-empty and (n - sum)-acyclic over Z/p."""
    if k < 0 or n < -1:
        raise ValueError("need k >= 0 and n >= -1")
    check_prime(p)
    cache: dict[int, BettiVector] = {}
    records = []
    for tup in disjoint_tuples(X, k, n + 1, max_tuples):
        dsum = sum(len(f) - 1 for f in tup)
        need = n - dsum
        removed = 0
        for f in tup:
            removed |= X.mask(f)
        ev = cache.get(removed)
        if ev is None or ev.upto < need:
            ev = betti(deletion_by_vertices(X, removed), p, need)
            cache[removed] = ev
        nonempty = ev[-1] == 0
        ok = nonempty and all(ev[j] == 0 for j in range(-1, need + 1))
        records.append(TupleRecord(tup, dsum, nonempty, need, ev, ok))
    return AcyclicityCertificate(X.digest(), k, n, p, records, X.labels)


# -- saturation ------------------------------------------------------------------------


def cone_apex(elements: Sequence[int], faces: Sequence[Face], masks: dict[Face, int]):
    """Return ``("max", face)`` or ``("min", face)`` if the up-set has an extreme element."""
    union = 0
    inter = -1
    members = set(elements)
    for e in elements:
        union |= masks[faces[e]]
        inter &= masks[faces[e]]
    for e in elements:
        if masks[faces[e]] == union:
            return "max", faces[e]
    for e in elements:
        if masks[faces[e]] == inter:
            return "min", faces[e]
    return None


def replay_cone(kind: str, apex: Face, faces: Sequence[Face]) -> bool:
    a = set(apex)
    if apex not in faces:
        return False
    if kind == "max":
        return all(set(f) <= a for f in faces)
    if kind == "min":
        return all(a <= set(f) for f in faces)
    return False


def greedy_collapse(simplices: set[Face]):
    """Elementary collapses until a point remains; returns the pairs or None."""
    S = set(simplices)
    cofaces: dict[Face, set[Face]] = {s: set() for s in S}
    for s in S:
        if len(s) > 1:
            for j in range(len(s)):
                cofaces[s[:j] + s[j + 1:]].add(s)
    seq = []
    progress = True
    while len(S) > 1 and progress:
        progress = False
        for s in sorted(S, key=lambda f: (-len(f), f)):
            if s not in S or len(cofaces[s]) != 1:
                continue
            (t,) = cofaces[s]
            if len(t) != len(s) + 1:
                continue
            seq.append((s, t))
            for pair_member in (t, s):
                S.discard(pair_member)
                if len(pair_member) > 1:
                    for j in range(len(pair_member)):
                        face = pair_member[:j] + pair_member[j + 1:]
                        if face in cofaces:
                            cofaces[face].discard(pair_member)
            progress = True
    return seq if len(S) == 1 else None


def replay_collapse(simplices: set[Face], seq) -> bool:
    S = set(simplices)
    for s, t in seq:
        if s not in S or t not in S or len(t) != len(s) + 1 or not set(s) < set(t):
            return False
        others = [u for u in S if u != s and len(u) > len(s) and set(s) <= set(u)]
        if others != [t]:
            return False
        S -= {s, t}
    return len(S) == 1


@dataclass
class SaturationRecord:
    faces: tuple[Face, ...]
    label: str
    witness: dict | None = None
    evidence: BettiVector | None = None

    def to_dict(self, labels) -> dict:
        out = {"tuple": [[labels[v] for v in f] for f in self.faces], "label": self.label}
        if self.witness is not None:
            out["witness"] = _witness_json(self.witness, labels)
        if self.evidence is not None:
            out["betti"] = self.evidence.to_dict()
        return out


def _witness_json(w: dict, labels) -> dict:
    if w["type"] == "cone":
        return {"type": "cone", "side": w["side"], "apex": [labels[v] for v in w["apex"]]}
    return {"type": "collapse", "steps": len(w["sequence"])}


@dataclass
class SaturationReport:
    digest: str
    r: int
    p: int
    records: list[SaturationRecord]
    labels: tuple

    @property
    def verdict(self) -> str:
        labels = {rec.label for rec in self.records}
        if "failed" in labels:
            return "not-saturated"
        if "acyclic-only" in labels:
            return "saturated-necessary-only"
        return "saturated-certified"

    def to_dict(self) -> dict:
        return {"kind": "saturation", "complex_digest": self.digest, "r": self.r, "p": self.p,
                "tuple_count": len(self.records), "verdict": self.verdict,
                "records": [rec.to_dict(self.labels) for rec in self.records]}


def open_star_intersection(X: SimplicialComplex, tup: Sequence[Face]) -> list[Face]:
    """Faces meeting every face of ``tup``: the up-set modelling the intersection of open stars."""
    ms = [X.mask(s) for s in tup]
    return [f for f in X.sorted_faces() if all(X.mask(f) & m for m in ms)]


def _upset_order_complex(up: list[Face]) -> set[Face]:
    # chains of the up-set under inclusion, vertices = positions in `up`
    above = []
    sets = [set(f) for f in up]
    for i in range(len(up)):
        above.append([j for j in range(len(up)) if len(up[j]) > len(up[i]) and sets[i] < sets[j]])
    out: set[Face] = set()
    stack = [(i,) for i in range(len(up))]
    while stack:
        ch = stack.pop()
        out.add(ch)
        for j in above[ch[-1]]:
            stack.append(ch + (j,))
    return out


def replay_saturation_witness(X: SimplicialComplex, rec: SaturationRecord) -> bool:
    up = open_star_intersection(X, rec.faces)
    if rec.label == "empty":
        return not up
    if rec.label != "contractible-certified" or rec.witness is None:
        return False
    if rec.witness["type"] == "cone":
        return replay_cone(rec.witness["side"], rec.witness["apex"], up)
    return replay_collapse(_upset_order_complex(up), rec.witness["sequence"])


def check_saturated(X: SimplicialComplex, r: int, p: int, max_tuples: int | None = None) -> SaturationReport:
    """Test that every intersection of at most r open-star unions is contractible or empty.

    Contractibility is certified by a cone apex (the up-set has a maximum or
    a minimum) or by a complete greedy collapse of its order complex.  An
    up-set that is only F_p-acyclic is reported ``acyclic-only``.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    check_prime(p)
    limit = DEFAULT_MAX_FACES if max_tuples is None else max_tuples
    faces = X.sorted_faces()
    masks = {f: X.mask(f) for f in faces}
    records = []
    for k in range(1, r + 1):
        for tup in combinations(faces, k):
            if len(records) >= limit:
                raise GuardExceeded(f"tuple enumeration exceeds guard of {limit}")
            ms = [masks[s] for s in tup]
            up = [i for i, f in enumerate(faces) if all(masks[f] & m for m in ms)]
            if not up:
                records.append(SaturationRecord(tup, "empty"))
                continue
            apex = cone_apex(up, faces, masks)
            if apex is not None:
                records.append(SaturationRecord(tup, "contractible-certified",
                                                {"type": "cone", "side": apex[0], "apex": apex[1]}))
                continue
            upfaces = [faces[i] for i in up]
            sd = _upset_order_complex(upfaces)
            seq = greedy_collapse(sd)
            if seq is not None:
                records.append(SaturationRecord(tup, "contractible-certified",
                                                {"type": "collapse", "sequence": seq}))
                continue
            ev = betti(SimplicialComplex(sd, len(upfaces)), p, max(len(f) for f in upfaces))
            label = "acyclic-only" if all(v == 0 for v in ev.values) else "failed"
            records.append(SaturationRecord(tup, label, evidence=ev))
    return SaturationReport(X.digest(), r, p, records, X.labels)


# -- weight lower bounds -----------------------------------------------------------------

CITE_ACYCLIC = "an n-acyclic G-space over Z/p has weight >= n+1"
CITE_MONOTONE = "a G-map X -> Y gives wgt(X) <= wgt(Y)"
CITE_JOIN = "wgt(X * S) <= wgt(X) + m + 1 for a fixed-point-free mod-p homology m-sphere S"
CITE_SPHERE = "wgt(S) = m for a fixed-point-free mod-p homology m-sphere S"
CITE_CONF = "Conf_r(X) is n-acyclic when X is (r-1)-complementary n-acyclic"


@dataclass
class WeightStep:
    rule: str
    statement: str
    value: int
    citation: str

    def to_dict(self) -> dict:
        return {"rule": self.rule, "statement": self.statement, "value": self.value,
                "citation": self.citation}


@dataclass
class WeightBound:
    space: str
    group: str
    bound: int | None
    chain: list[WeightStep]
    evidence: BettiVector

    def to_dict(self) -> dict:
        return {"kind": "weight_lower_bound", "space": self.space, "group": self.group,
                "bound": self.bound, "chain": [s.to_dict() for s in self.chain],
                "conf_betti": self.evidence.to_dict()}


def prime_power_exponent(r: int, p: int) -> int | None:
    """k with r = p**k (k >= 1), else None."""
    if not is_prime(p) or r < p:
        return None
    k = 0
    while r % p == 0:
        r //= p
        k += 1
    return k if r == 1 else None


def weight_lower_bound(X: SimplicialComplex, r: int, p: int, n: int,
                       max_cells: int | None = None) -> WeightBound:
    """Lower bound wgt_G(Conf_r(X_n)) >= rn, G = (Z/p)^k, from computed acyclicity of Conf_r(X)."""
    k = prime_power_exponent(r, p)
    if k is None:
        raise ValueError(f"r={r} is not a power of the prime p={p}")
    m = r * (n + 1) - 2
    conf = build_conf(X, r, max_total_dim=m + 1, max_cells=max_cells)
    ev = betti(conf, p, m, max_cells=max_cells)
    group = f"(Z/{p})^{k}"
    space = f"Conf_{r}(X_{n})"
    if not ev.vanishes_through(m):
        return WeightBound(space, group, None, [], ev)
    top = m + 1
    chain = [
        WeightStep("acyclicity", f"Conf_{r}(X)_{top} is {m}-acyclic over Z/{p}, so its weight is >= {top}",
                   top, CITE_ACYCLIC),
        WeightStep("g_map_monotonicity",
                   f"G-map Conf_{r}(X)_{top} -> Conf_{r}(X_{n}) * S^{r - 2}, so wgt(Conf_{r}(X_{n}) * S^{r - 2}) >= {top}",
                   top, CITE_MONOTONE),
        WeightStep("join", f"wgt(Conf_{r}(X_{n})) >= {top} - ({r - 2} + 1) = {top - (r - 1)}",
                   top - (r - 1), CITE_JOIN),
    ]
    return WeightBound(space, group, r * n, chain, ev)


# -- hypothesis report ---------------------------------------------------------------------


@dataclass
class HypothesisReport:
    r: int
    p: int
    k: int
    n: int
    d: int
    checks: dict[str, bool]
    definition: AcyclicityCertificate | None
    weight: WeightBound | None
    arithmetic: dict = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return all(self.checks.values())

    @property
    def verdict(self) -> str:
        return "certified" if self.certified else "not certified"

    def failing_clauses(self) -> list[str]:
        return [name for name, ok in self.checks.items() if not ok]

    def to_dict(self) -> dict:
        out = {"kind": "hypothesis_report", "r": self.r, "p": self.p, "k": self.k, "n": self.n,
               "d": self.d, "checks": dict(self.checks), "verdict": self.verdict,
               "failing": self.failing_clauses(), "arithmetic": self.arithmetic}
        out["definition"] = None if self.definition is None else self.definition.to_dict()
        out["weight"] = None if self.weight is None else self.weight.to_dict()
        return out


def certify_hypotheses(X: SimplicialComplex, r: int, p: int, kexp: int, n: int, d: int,
                       with_weight: bool = True, max_cells: int | None = None) -> HypothesisReport:
    """Check every hypothesis of the theorem: r = p^k, (r-1)d <= rn, and
    (r-1)-complementary (r(n+1)-2)-acyclicity over Z/p.

    A certified report means every continuous map X_n -> R^d has r pairwise
    disjoint faces with a common image point.
    """
    checks = {
        "p_prime": is_prime(p),
        "r_is_p_power": is_prime(p) and kexp >= 1 and r == p**kexp,
        "dimension_inequality": (r - 1) * d <= r * n,
    }
    acyc_level = r * (n + 1) - 2
    definition = None
    if checks["p_prime"] and r >= 2 and acyc_level >= -1:
        definition = check_complementary_acyclic(X, r - 1, acyc_level, p, max_tuples=max_cells)
        checks["complementary_acyclic"] = definition.verdict
    else:
        checks["complementary_acyclic"] = False
    weight = None
    if with_weight and checks["r_is_p_power"] and checks["complementary_acyclic"]:
        weight = weight_lower_bound(X, r, p, n, max_cells=max_cells)
    upper = (r - 1) * d - 1
    arithmetic = {
        "weight_lower": r * n,
        "sphere_dim": upper,
        "sphere_weight": upper,
        "statement": f"rn = {r * n} <= wgt(Conf_{r}(X_{n})) <= wgt(S^{upper}) = {upper}",
        "contradiction": r * n > upper,
    }
    return HypothesisReport(r, p, kexp, n, d, checks, definition, weight, arithmetic)


def to_json(cert) -> str:
    return json.dumps(cert.to_dict(), indent=2)
