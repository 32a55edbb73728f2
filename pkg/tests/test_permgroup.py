from __future__ import annotations

import random

import pytest

from metacirc.errors import BoundExceeded
from metacirc.graphs import build_cayley, graph_from_edges, standard_connection_set
from metacirc.groups import Element, GroupSpec, regular_representation
from metacirc.permgroup import (
    PermGroup,
    arc_orbit_count,
    compose,
    edge_orbit_count,
    group_order,
    identity_perm,
    inverse_perm,
    max_s_arc_transitive,
    normalizer_of_regular,
    s_arcs,
)

F21 = GroupSpec(7, 3, 2)
Z5 = GroupSpec(5, 1, 1)
K5 = build_cayley([Element(u, 0, 0) for u in range(1, 5)], Z5)

S5 = PermGroup(5, [(1, 0, 2, 3, 4), (1, 2, 3, 4, 0)])
C5 = PermGroup(5, [(1, 2, 3, 4, 0)])


def cycle(n, *points):
    p = list(range(n))
    for a, b in zip(points, points[1:]):
        p[a] = b
    p[points[-1]] = points[0]
    return tuple(p)


def mulclose(gens, cap=100_000):
    """Exhaustive closure, the independent order oracle."""
    gens = [tuple(g) for g in gens]
    n = len(gens[0])
    els = {identity_perm(n)}
    frontier = list(els)
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = compose(p, g)
                if q not in els:
                    els.add(q)
                    nxt.append(q)
                    if len(els) > cap:
                        raise RuntimeError("closure too large")
        frontier = nxt
    return els


# -------------------------------------------------------------- order/chain

def test_group_order_examples():
    assert group_order(S5) == 120
    assert group_order(C5) == 5
    assert group_order(PermGroup(4, [])) == 1


def test_chain_order_matches_exhaustive_closure():
    cases = [
        S5,
        C5,
        PermGroup(6, [cycle(6, 0, 1, 2, 3, 4, 5), cycle(6, 1, 5)]),  # D6
        PermGroup(4, [cycle(4, 0, 1, 2), cycle(4, 1, 2, 3)]),        # A4
        PermGroup(21, regular_representation(F21)),
        PermGroup(7, [cycle(7, 0, 1, 2, 3, 4, 5, 6), cycle(7, 1, 2, 4)]),  # F21 on 7 pts
        PermGroup(8, [cycle(8, 0, 1, 2, 3, 4, 5, 6, 7), cycle(8, 1, 3)]),
    ]
    for grp in cases:
        assert grp.order == len(mulclose(grp.generators or [identity_perm(grp.degree)]))


def test_elements_enumeration_is_exact():
    for grp in (S5, C5, PermGroup(21, regular_representation(F21))):
        els = list(grp.elements())
        assert len(els) == grp.order == len(set(els))
        assert set(els) == mulclose(grp.generators)


def test_contains():
    assert S5.contains((4, 3, 2, 1, 0))
    assert C5.contains((2, 3, 4, 0, 1))
    assert not C5.contains((1, 0, 2, 3, 4))


def test_elements_bound():
    with pytest.raises(BoundExceeded):
        list(S5.elements(bound=100))


# ------------------------------------------------------- orbits/stabilizers

def test_orbit_examples():
    assert C5.orbit(0) == set(range(5))
    assert S5.orbit(3) == set(range(5))
    assert PermGroup(5, [cycle(5, 0, 1)]).orbit(4) == {4}


def test_point_stabilizer_s5():
    stab = S5.point_stabilizer(0)
    assert stab.order == 24
    assert all(g[0] == 0 for g in stab.generators)


def test_point_stabilizer_regular_group_is_trivial():
    ghat = PermGroup(21, regular_representation(F21))
    assert ghat.is_transitive()
    for v in (0, 5, 20):
        assert ghat.point_stabilizer(v).order == 1


def test_orbit_stabilizer_identity():
    rng = random.Random(1)
    groups = [S5, C5, PermGroup(6, [cycle(6, 0, 1, 2, 3, 4, 5), cycle(6, 1, 5)])]
    for grp in groups:
        for _ in range(3):
            p = rng.randrange(grp.degree)
            assert len(grp.orbit(p)) * grp.point_stabilizer(p).order == grp.order


def test_point_out_of_range():
    with pytest.raises(ValueError):
        S5.orbit(9)
    with pytest.raises(ValueError):
        S5.point_stabilizer(-1)


# ----------------------------------------------------------- graph orbits

def test_edge_and_arc_orbits_k5():
    assert edge_orbit_count(S5, K5) == 1
    assert arc_orbit_count(S5, K5) == 1


def test_edge_orbits_of_regular_group_alone():
    g = build_cayley(standard_connection_set(1, F21), F21)
    ghat = PermGroup(21, regular_representation(F21))
    # the two inverse pairs of S give two edge orbits under right translation
    assert edge_orbit_count(ghat, g) == 2
    assert arc_orbit_count(ghat, g) == 4


def test_orbit_count_rejects_non_automorphism():
    path = graph_from_edges(3, [(0, 1), (1, 2)])
    bad = PermGroup(3, [(1, 2, 0)])
    with pytest.raises(ValueError):
        edge_orbit_count(bad, path)


def test_s_arcs_counts():
    assert len(s_arcs(K5, 1)) == 20
    assert len(s_arcs(K5, 2)) == 20 * 3
    c6 = graph_from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
    assert len(s_arcs(c6, 3)) == 12  # cycles never backtrack


def test_max_s_arc_transitive_k5():
    # 3-arcs split into closing (v3 = v0) and open walks, so s stops at 2
    assert max_s_arc_transitive(S5, K5) == 2


def test_max_s_arc_circulant_orbit_set():
    # Cay(Z13, {±1, ±5}): the set is the orbit of the multiplicative subgroup
    # generated by 5, so multiplication by 5 is an automorphism and the full
    # group is arc-transitive
    from metacirc.autosearch import automorphism_group

    z13 = GroupSpec(13, 1, 1)
    g = build_cayley([Element(u, 0, 0) for u in (1, 5, 8, 12)], z13)
    aut = automorphism_group(g)
    assert max_s_arc_transitive(aut, g) >= 1


def test_max_s_arc_zero_when_not_arc_transitive():
    g = build_cayley(standard_connection_set(1, F21), F21)
    ghat = PermGroup(21, regular_representation(F21))
    assert max_s_arc_transitive(ghat, g) == 0


def test_max_s_arc_cycle_is_capped():
    c6 = graph_from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
    d6 = PermGroup(6, [cycle(6, 0, 1, 2, 3, 4, 5), tuple((-i) % 6 for i in range(6))])
    assert max_s_arc_transitive(d6, c6, cap=3) == 3
    assert max_s_arc_transitive(d6, c6, cap=2) == 2


# ------------------------------------------------------------- normalizer

def test_normalizer_k5():
    # N = AGL(1,5) of order 20; index over |G| = 4 = |Aut(G,S)|
    assert normalizer_of_regular(S5, Z5) == 20


def test_normalizer_of_regular_in_itself():
    ghat = PermGroup(21, regular_representation(F21))
    assert normalizer_of_regular(ghat, F21) == 21


def test_normalizer_degree_mismatch():
    with pytest.raises(ValueError):
        normalizer_of_regular(S5, F21)
