import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vkflores.complex_core import boundary, crosspolytope, simplex, skeleton
from vkflores.deleted_product import (
    SWAP,
    PermAction,
    act,
    act_on_slots,
    act_on_vertex_set,
    build_conf,
    compose,
    conf_skeleton,
    join_decomposition,
    koszul_sign,
    nerve_map,
    psi_map,
    sd_chains,
    total_dim,
    upper_ideal_cover,
)
from vkflores.homology import product_cell_boundary


def brute_conf_count(X, r):
    faces = X.sorted_faces()
    count = 0
    for tup in product(faces, repeat=r):
        verts = [v for f in tup for v in f]
        if len(verts) == len(set(verts)):
            count += 1
    return count


def test_conf_counts():
    C = build_conf(simplex(4), 2)
    assert len(C) == 3**5 - 2 * 2**5 + 1 == 180
    C = build_conf(simplex(2), 2)
    assert len(C) == 12 and C.f_vector() == [6, 6]
    E = build_conf(simplex(0), 2)
    assert E.is_empty
    with pytest.raises(ValueError):
        build_conf(simplex(3), 1)


@pytest.mark.parametrize("X,r", [(simplex(3), 2), (crosspolytope(3), 2), (boundary(3), 3),
                                 (skeleton(simplex(5), 1), 2), (simplex(4), 3)])
def test_conf_count_matches_brute_force(X, r):
    assert len(build_conf(X, r)) == brute_conf_count(X, r)


def test_conf_skeleton():
    C = build_conf(simplex(4), 2)
    assert len(conf_skeleton(C, 3)) == 180
    assert len(conf_skeleton(C, 0)) == 20
    assert conf_skeleton(C, 7) is C
    truncated = build_conf(simplex(4), 2, max_total_dim=1)
    assert truncated.cells == conf_skeleton(C, 1).cells


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_downward_closure_of_conf(data):
    C = build_conf(crosspolytope(3), 2)
    cell = data.draw(st.sampled_from(C.cells))
    sub = []
    for part in cell:
        keep = data.draw(st.lists(st.sampled_from(part), min_size=1, unique=True))
        sub.append(tuple(sorted(keep)))
    assert tuple(sub) in C


def test_order_is_componentwise_inclusion():
    C = build_conf(simplex(3), 2)
    P = C.poset()
    for i, a in enumerate(C.cells):
        for j, b in enumerate(C.cells):
            incl = a != b and all(set(x) <= set(y) for x, y in zip(a, b))
            assert P.less(i, j) == incl


def test_act_examples():
    s, t = (0, 1), (2,)
    assert act((1, 0), (s, t)) == (t, s)
    assert act((0, 1), (s, t)) == (s, t)
    C = build_conf(simplex(7), 3, max_total_dim=3)
    cell = ((0, 1), (2,), (3, 4))
    cyc = (1, 2, 0)
    moved = act(cyc, cell)
    assert moved == ((3, 4), (0, 1), (2,))
    assert moved in C and total_dim(moved) == total_dim(cell)
    with pytest.raises(ValueError):
        act((1, 0, 2), cell, PermAction.elementary_abelian(3, 1))


def test_groups():
    assert PermAction.symmetric(3).order() == 6
    G = PermAction.elementary_abelian(2, 2)
    assert G.r == 4 and G.order() == 4 and G.is_free_on_slots()
    assert PermAction.elementary_abelian(3, 1).order() == 3
    assert all(g in PermAction.symmetric(4) for g in G.elements())


@pytest.mark.parametrize("X,r,m", [(simplex(4), 2, None), (simplex(5), 3, 3)])
def test_action_preserves_order(X, r, m):
    C = build_conf(X, r, max_total_dim=m)
    P = C.poset()
    for g in PermAction.symmetric(r).elements():
        for a, b in P.covers:
            ga, gb = act(g, P.elements[a]), act(g, P.elements[b])
            assert P.less(P.index[ga], P.index[gb])


def koszul_compatible(C, G):
    """d(g c) = eps(g, c) * sum_c' a(c, c') eps(g, c') g c' exactly."""
    for c in C.cells:
        for g in G.elements():
            lhs = {}
            for face, s in product_cell_boundary(act(g, c)):
                lhs[face] = lhs.get(face, 0) + s
            rhs = {}
            for face, s in product_cell_boundary(c):
                key = act(g, face)
                rhs[key] = rhs.get(key, 0) + s * koszul_sign(g, c) * koszul_sign(g, face)
            if {k: v for k, v in lhs.items() if v} != {k: v for k, v in rhs.items() if v}:
                return False
    return True


def test_koszul_compatibility_r2_r3():
    assert koszul_compatible(build_conf(simplex(4), 2), PermAction.symmetric(2))
    assert koszul_compatible(build_conf(simplex(5), 3, max_total_dim=3), PermAction.symmetric(3))


def test_koszul_sign_needed():
    # swapping two edges is orientation reversing on the product square
    assert koszul_sign(SWAP, ((0, 1), (2, 3))) == -1
    assert koszul_sign(SWAP, ((0, 1), (2,))) == 1


def test_upper_ideal_cover_delta4():
    cover = upper_ideal_cover(simplex(4), 2, 1)
    assert all(cover.verify().values())
    for c in cover.big:
        dims = [len(s) - 1 for s in c]
        assert sorted(dims) in ([0, 2], [1, 2], [0, 3])
        assert sum(d > 1 for d in dims) == 1
    assert not cover.parts[0] & cover.parts[1]
    assert len(cover.big) + len(cover.small) == 180


def test_upper_ideal_cover_trivial_when_skeleton():
    cover = upper_ideal_cover(skeleton(simplex(4), 1), 2, 1)
    assert cover.big == []
    with pytest.raises(ValueError):
        nerve_map(cover)


def test_nerve_map_r2():
    cover = upper_ideal_cover(simplex(4), 2, 1)
    N = nerve_map(cover)
    c = ((0, 1, 2), (3,))
    assert N([c]) == {frozenset({0})}
    c2 = ((0, 1, 2), (3, 4))
    assert N([c, c2]) == {frozenset({0})}


def test_nerve_map_r3_chains_are_nested():
    cover = upper_ideal_cover(simplex(7), 3, 0)
    assert all(cover.verify().values())
    N = nerve_map(cover)
    P = cover.conf.poset()
    big = [P.index[c] for c in cover.big]
    seen_proper = False
    from vkflores.complex_core import iter_chains
    for ch in iter_chains(P, elements=big):
        cells = [P.elements[i] for i in ch]
        assert N.image_is_chain(cells)
        if len(N(cells)) == 2:
            seen_proper = True
    assert seen_proper
    a = ((0,), (1, 2), (3,))
    b = ((0,), (1, 2), (3, 4))
    assert N([a, b]) == {frozenset({1}), frozenset({1, 2})}


def test_join_decomposition_examples():
    J = join_decomposition(simplex(4), 2, 1)
    small = ((0,), (1,))
    big = ((0, 1, 2), (3,))
    assert J([small]) == ((small,), ())
    assert J([big]) == ((), (big,))
    mixed = [((0,), (3,)), ((0, 1, 2), (3,))]
    assert J(mixed) == ((mixed[0],), (mixed[1],))
    assert J.join_parameter(mixed, [Fraction(1, 3), Fraction(2, 3)]) == Fraction(2, 3)


def test_equivariance_exhaustive_delta4():
    cover = upper_ideal_cover(simplex(4), 2, 1)
    N = nerve_map(cover)
    J = join_decomposition(simplex(4), 2, 1, cover)
    G = PermAction.symmetric(2)
    for s in sd_chains(cover.conf):
        for g in G.elements():
            gs = tuple(act(g, c) for c in s)
            small, big = J(s)
            gsmall, gbig = J(gs)
            assert set(gsmall) == {act(g, c) for c in small}
            assert set(gbig) == {act(g, c) for c in big}
            if big:
                assert N(gbig) == act_on_vertex_set(g, N(big))


def test_psi_vertex_values():
    psi = psi_map(simplex(4), 1)
    assert psi.vertex_value(((0,), (1,))) == 0
    assert psi.vertex_value(((0, 1, 2), (3,))) == 1
    assert psi.vertex_value(((3,), (0, 1, 2))) == -1
    plus = ((0, 1, 2), (3,))
    lower = ((0,), (3,))
    assert psi([lower, plus], [Fraction(1, 2), Fraction(1, 2)]) == Fraction(1, 2)
    assert psi.zero_cells() == {c for c in psi.cover.conf.cells if all(len(s) <= 2 for s in c)}
    with pytest.raises(ValueError):
        psi_map(simplex(4), 1, r=3)


def test_psi_antisymmetry_and_join_form():
    psi = psi_map(simplex(4), 1)
    for c, v in psi.values.items():
        assert psi.vertex_value(act(SWAP, c)) == -v
    rng = random.Random(7)
    chains = list(sd_chains(psi.cover.conf))
    for _ in range(300):
        ch = rng.choice(chains)
        raw = [rng.randint(1, 20) for _ in ch]
        w = [Fraction(a, sum(raw)) for a in raw]
        val = psi(ch, w)
        assert psi([act(SWAP, c) for c in ch], w) == -val
        assert psi.join_form(ch, w) == val


def test_compose_and_slots():
    g, h = (1, 2, 0), (1, 0, 2)
    cell = ((0,), (1,), (2,))
    assert act(compose(g, h), cell) == act(g, act(h, cell))
    assert act_on_slots(g, {0, 1}) == {1, 2}


def test_nerve_equivariance_elementary_abelian_r4():
    G = PermAction.elementary_abelian(2, 2)
    cover = upper_ideal_cover(simplex(5), 4, 0)
    assert all(cover.verify().values())
    N = nerve_map(cover)
    P = cover.conf.poset()
    from vkflores.complex_core import iter_chains
    big = [P.index[c] for c in cover.big]
    for ch in iter_chains(P, elements=big):
        cells = [P.elements[i] for i in ch]
        for g in G.elements():
            assert N([act(g, c) for c in cells]) == act_on_vertex_set(g, N(cells))
