from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metacirc.aut import apply_aut, automorphism_maps
from metacirc.autosearch import analyze, are_isomorphic, automorphism_group, canonical_form
from metacirc.graphs import build_cayley, from_graph6, graph_from_edges, standard_connection_set
from metacirc.groups import Element, GroupSpec, regular_representation
from metacirc.permgroup import PermGroup, arc_orbit_count, edge_orbit_count
from oracles import backtracking_automorphism_count, brute_force_graph_automorphisms, brute_force_isomorphic

F21 = GroupSpec(7, 3, 2)
Z5 = GroupSpec(5, 1, 1)
K5 = build_cayley([Element(u, 0, 0) for u in range(1, 5)], Z5)
PETERSEN = graph_from_edges(
    10,
    [(i, (i + 1) % 5) for i in range(5)]
    + [(i, i + 5) for i in range(5)]
    + [(5 + i, 5 + (i + 2) % 5) for i in range(5)],
)


def cycle_graph(n):
    return graph_from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def random_graph(n, p, rng):
    return graph_from_edges(
        n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    )


def random_relabel(g, rng):
    perm = list(range(g.n))
    rng.shuffle(perm)
    return g.relabel(perm)


# ----------------------------------------------------------- group orders

def test_known_orders():
    assert automorphism_group(K5).order == 120
    assert automorphism_group(cycle_graph(6)).order == 12
    assert automorphism_group(PETERSEN).order == 120


def test_order_matches_brute_force_small_fixtures():
    fixtures = [
        K5,
        cycle_graph(5),
        graph_from_edges(4, [(0, 1), (1, 2), (2, 3)]),
        graph_from_edges(6, [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]),
        graph_from_edges(7, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6)]),
        graph_from_edges(3, []),
    ]
    for g in fixtures:
        assert automorphism_group(g).order == len(brute_force_graph_automorphisms(
            [list(r) for r in g.adjacency]
        ))


def test_order_matches_backtracking_oracle_at_ten_vertices():
    assert automorphism_group(PETERSEN).order == backtracking_automorphism_count(
        [list(r) for r in PETERSEN.adjacency]
    ) == 120


@given(n=st.integers(4, 8), p=st.floats(0.15, 0.8), rnd=st.random_module())
@settings(max_examples=40, deadline=None)
def test_order_matches_brute_force_random(n, p, rnd):
    g = random_graph(n, p, random.Random(rnd.seed))
    assert automorphism_group(g).order == len(
        brute_force_graph_automorphisms([list(r) for r in g.adjacency])
    )


def test_generators_preserve_adjacency():
    for g in (K5, PETERSEN, build_cayley(standard_connection_set(1, F21), F21)):
        rows = [set(r) for r in g.adjacency]
        for p in analyze(g).generators:
            for v in range(g.n):
                assert {p[u] for u in rows[v]} == rows[p[v]]


def test_cayley_graphs_have_transitive_automorphism_groups():
    for spec in (F21, GroupSpec(13, 3, 3)):
        g = build_cayley(standard_connection_set(1, spec), spec)
        assert automorphism_group(g).is_transitive()


def test_seeding_changes_nothing():
    for spec in (F21, GroupSpec(13, 3, 3)):
        g = build_cayley(standard_connection_set(1, spec), spec)
        plain = analyze(g)
        seeded = analyze(g, seeds=regular_representation(spec))
        assert PermGroup(g.n, plain.generators).order == PermGroup(g.n, seeded.generators).order
        assert plain.canonical_key == seeded.canonical_key


def test_seed_validation():
    with pytest.raises(ValueError):
        analyze(K5, seeds=[(1, 2, 3, 4, 0, 5)])  # wrong degree
    with pytest.raises(ValueError):
        analyze(graph_from_edges(5, [(0, 1), (1, 2)]), seeds=[(4, 3, 2, 1, 0)])


# -------------------------------------------------------------- canonical

def test_canonical_form_invariant_under_relabeling():
    rng = random.Random(99)
    fixtures = [K5, PETERSEN, build_cayley(standard_connection_set(1, F21), F21)]
    for g in fixtures:
        reference = canonical_form(g)
        for _ in range(100):
            assert canonical_form(random_relabel(g, rng)) == reference


def test_canonical_form_distinguishes():
    k5_minus = graph_from_edges(5, [e for e in K5.edges() if e != (0, 1)])
    assert canonical_form(K5) != canonical_form(k5_minus)
    assert canonical_form(cycle_graph(6)) != canonical_form(
        graph_from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
    )


def test_canonical_form_is_valid_graph6_of_isomorphic_graph():
    g = build_cayley(standard_connection_set(1, F21), F21)
    back = from_graph6(canonical_form(g))
    assert back.n == g.n and sorted(back.degrees()) == sorted(g.degrees())
    assert are_isomorphic(back, g)


# ------------------------------------------------------------ isomorphism

def test_are_isomorphic_relabeling():
    rng = random.Random(5)
    for g in (PETERSEN, random_graph(9, 0.4, rng)):
        assert are_isomorphic(g, random_relabel(g, rng))


def test_are_isomorphic_cayley_conjugates():
    maps = automorphism_maps(F21)
    S = standard_connection_set(1, F21)
    g = build_cayley(S, F21)
    for f in maps[::7]:
        Sf = [apply_aut(f, x, F21) for x in S]
        assert are_isomorphic(g, build_cayley(Sf, F21))


def test_are_isomorphic_negative():
    assert not are_isomorphic(K5, cycle_graph(5))
    assert not are_isomorphic(cycle_graph(6), cycle_graph(5))


@given(n=st.integers(3, 7), p=st.floats(0.2, 0.8), rnd=st.random_module())
@settings(max_examples=30, deadline=None)
def test_are_isomorphic_matches_brute_force(n, p, rnd):
    rng = random.Random(rnd.seed)
    g1 = random_graph(n, p, rng)
    g2 = random_graph(n, p, rng)
    expected = brute_force_isomorphic(
        [list(r) for r in g1.adjacency], [list(r) for r in g2.adjacency]
    )
    assert are_isomorphic(g1, g2) == expected
    relabeled = random_relabel(g1, rng)
    assert are_isomorphic(g1, relabeled)


# ----------------------------------------------- cross-module: orbit counts

def test_half_transitive_witness_13_3_3():
    spec = GroupSpec(13, 3, 3)
    g = build_cayley(standard_connection_set(1, spec), spec)
    aut = PermGroup(g.n, analyze(g, seeds=regular_representation(spec)).generators)
    assert aut.order == 78
    assert edge_orbit_count(aut, g) == 1
    assert arc_orbit_count(aut, g) == 2


def test_exceptional_21_vertex_graph():
    g = build_cayley(standard_connection_set(1, F21), F21)
    aut = automorphism_group(g)
    assert aut.order == 336
    assert edge_orbit_count(aut, g) == 1
    assert arc_orbit_count(aut, g) == 1
