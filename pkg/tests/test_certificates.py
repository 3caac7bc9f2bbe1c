import json
from itertools import combinations

import pytest

from vkflores.certificates import (
    SaturationRecord,
    SaturationReport,
    certify_hypotheses,
    check_complementary_acyclic,
    check_saturated,
    greedy_collapse,
    prime_power_exponent,
    replay_collapse,
    replay_saturation_witness,
    to_json,
    weight_lower_bound,
)
from vkflores.complex_core import boundary, crosspolytope, from_facets, simplex, skeleton
from vkflores.deleted_product import build_conf
from vkflores.homology import is_n_acyclic


def brute_tuples(X, k, n):
    faces = X.sorted_faces()
    out = set()
    for i in range(k + 1):
        for tup in combinations(faces, i):
            verts = [v for f in tup for v in f]
            if len(verts) == len(set(verts)) and sum(len(f) - 1 for f in tup) <= n + 1:
                out.add(frozenset(tup))
    return out


def test_definition_examples():
    assert check_complementary_acyclic(simplex(4), 1, 2, 2)
    assert check_complementary_acyclic(boundary(3), 1, 1, 2)
    cert = check_complementary_acyclic(boundary(3), 1, 2, 2)
    assert not cert
    first = cert.failures()[0]
    assert first.faces == () and first.evidence[2] == 1


@pytest.mark.parametrize("X,k,n", [(simplex(4), 1, 2), (boundary(4), 2, 1), (crosspolytope(3), 2, 2),
                                   (skeleton(simplex(5), 2), 3, 1)])
def test_tuple_enumeration_complete(X, k, n):
    cert = check_complementary_acyclic(X, k, n, 2)
    got = [frozenset(r.faces) for r in cert.records]
    assert len(got) == len(set(got))
    assert set(got) == brute_tuples(X, k, n)


@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_simplex_example(m):
    # the m-simplex is (r-1)-complementary (m-r)-acyclic
    for r in range(1, m):
        if m - r >= -1:
            assert check_complementary_acyclic(simplex(m), r - 1, m - r, 3)


def test_sphere_example():
    for X in (boundary(3), boundary(4), crosspolytope(3), crosspolytope(4)):
        assert check_complementary_acyclic(X, 1, X.dim - 1, 2)


def test_monotonicity():
    X = crosspolytope(4)
    assert check_complementary_acyclic(X, 1, 2, 2)
    for k in (0, 1):
        for n in (-1, 0, 1, 2):
            assert check_complementary_acyclic(X, k, n, 2)


@pytest.mark.parametrize("X,r,m", [(simplex(4), 2, 2), (simplex(5), 2, 3), (crosspolytope(4), 2, 2),
                                   (boundary(4), 2, 2), (simplex(5), 3, 2), (crosspolytope(3), 2, 1),
                                   (boundary(3), 2, 1)])
def test_conf_acyclicity_implication(X, r, m):
    if check_complementary_acyclic(X, r - 1, m, 2):
        assert is_n_acyclic(build_conf(X, r, max_total_dim=m + 1), m, 2)


def test_saturation_simplex_cones():
    rep = check_saturated(simplex(5), 2, 2)
    assert rep.verdict == "saturated-certified"
    for rec in rep.records:
        assert rec.label == "contractible-certified" and rec.witness["type"] == "cone"
        assert rec.witness["apex"] == tuple(range(6)) or rec.witness["side"] == "min"
        assert replay_saturation_witness(simplex(5), rec)


def test_saturation_vertex_has_minimum():
    X = crosspolytope(3)
    rep = check_saturated(X, 1, 2)
    for rec in rep.records:
        if len(rec.faces[0]) == 1:
            assert rec.witness == {"type": "cone", "side": "min", "apex": rec.faces[0]}


def test_saturation_failure_and_empty():
    rep = check_saturated(boundary(2), 2, 2)
    assert rep.verdict == "not-saturated"
    labels = {rec.faces: rec.label for rec in rep.records}
    assert labels[((0,), (1, 2))] == "failed"
    square = crosspolytope(2)
    rep = check_saturated(square, 2, 2)
    # opposite vertices 0 and 1 share no face
    assert labels and {r.faces: r.label for r in rep.records}[((0,), (1,))] == "empty"


def test_collapse_witness_replays():
    X = boundary(3)
    rep = check_saturated(X, 1, 2)
    used = [rec for rec in rep.records if rec.witness and rec.witness["type"] == "collapse"]
    assert used
    for rec in used:
        assert replay_saturation_witness(X, rec)


def test_greedy_collapse_refuses_cycle():
    cycle = {(0,), (1,), (2,), (0, 1), (1, 2), (0, 2)}
    assert greedy_collapse(cycle) is None
    path = {(0,), (1,), (2,), (0, 1), (1, 2)}
    seq = greedy_collapse(path)
    assert seq is not None and replay_collapse(path, seq)
    assert not replay_collapse(path, [((1,), (1, 2))])


def test_saturation_verdict_levels():
    recs = [SaturationRecord(((0,),), "contractible-certified"), SaturationRecord(((1,),), "acyclic-only")]
    assert SaturationReport("x", 1, 2, recs, (0, 1)).verdict == "saturated-necessary-only"
    recs.append(SaturationRecord(((0,), (1,)), "failed"))
    assert SaturationReport("x", 2, 2, recs, (0, 1)).verdict == "not-saturated"


def test_weight_bound_examples():
    wb = weight_lower_bound(simplex(4), 2, 2, 1)
    assert wb.bound == 2 and len(wb.chain) == 3
    assert [s.rule for s in wb.chain] == ["acyclicity", "g_map_monotonicity", "join"]
    assert wb.chain[-1].value == 2
    two_points = boundary(1)
    wb = weight_lower_bound(two_points, 2, 2, 0)
    assert wb.bound is None and wb.evidence[0] == 1
    assert weight_lower_bound(crosspolytope(4), 2, 2, 1).bound == 2
    with pytest.raises(ValueError):
        weight_lower_bound(simplex(4), 6, 2, 1)


def test_weight_bound_r4():
    # r = 4 = 2^2, n = 0: Conf_4 of an 8-vertex simplex needs 2-acyclicity
    wb = weight_lower_bound(simplex(6), 4, 2, 0)
    assert wb.bound == 0 and wb.chain[0].value == 3


def test_prime_power_exponent():
    assert prime_power_exponent(8, 2) == 3
    assert prime_power_exponent(9, 3) == 2
    assert prime_power_exponent(6, 2) is None
    assert prime_power_exponent(4, 4) is None


def test_certify_examples():
    rep = certify_hypotheses(simplex(4), 2, 2, 1, 1, 2)
    assert rep.verdict == "certified"
    assert rep.arithmetic["weight_lower"] == 2 and rep.arithmetic["sphere_dim"] == 1
    rep = certify_hypotheses(simplex(4), 2, 2, 1, 1, 3)
    assert rep.verdict == "not certified" and rep.failing_clauses() == ["dimension_inequality"]
    assert certify_hypotheses(crosspolytope(4), 2, 2, 1, 1, 2).certified
    assert not certify_hypotheses(simplex(4), 3, 2, 1, 1, 1).certified
    assert not certify_hypotheses(boundary(3), 2, 2, 1, 1, 2).checks["complementary_acyclic"]


def test_volovikov_instance_r3():
    # Delta^{rn+2r-2} with r = 3, n = 1: Delta^7, d <= rn/(r-1) = 1
    rep = certify_hypotheses(simplex(7), 3, 3, 1, 1, 1)
    assert rep.certified and rep.weight.bound == 3


def test_certificate_json_stable():
    rep = certify_hypotheses(simplex(4), 2, 2, 1, 1, 2)
    a = to_json(rep)
    b = to_json(certify_hypotheses(simplex(4), 2, 2, 1, 1, 2))
    assert a == b
    doc = json.loads(a)
    assert list(doc)[:3] == ["kind", "r", "p"]
    assert doc["definition"]["tuple_counts"] == {"0": 1, "1": 30}
