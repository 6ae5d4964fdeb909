from __future__ import annotations

import pytest
from hypothesis import given

from twofold import families as F
from twofold.aut import automorphism_group, is_automorphism
from twofold.double_cover import (
    build_double_cover,
    is_lifted,
    lift_automorphism,
    preserves_classes,
    project,
    swap_map,
    swaps_classes,
)
from twofold.errors import InputError, PreconditionError
from twofold.graph import Permutation, components, is_bipartite, is_connected

from conftest import graphs


def test_cover_of_k2_is_two_disjoint_edges():
    dc = build_double_cover(F.complete(2))
    assert sorted(dc.graph.edges()) == [(0, 3), (1, 2)]


def test_cover_of_triangle_is_hexagon():
    g = build_double_cover(F.cycle(3)).graph
    assert is_connected(g) and g.edge_count == 6 and set(g.degrees()) == {2}


def test_cover_of_square_is_two_squares():
    g = build_double_cover(F.cycle(4)).graph
    comps = components(g)
    assert len(comps) == 2 and all(len(c) == 4 for c in comps)


def test_projection_arithmetic():
    dc = build_double_cover(F.cycle(5))
    assert project(dc, 7) == (2, 1)
    assert project(dc, 0) == (0, 0)
    with pytest.raises(InputError):
        project(dc, 10)


def test_swap_map():
    dc = build_double_cover(F.complete(2))
    d = swap_map(dc)
    assert d == Permutation.from_cycles(4, [(0, 2), (1, 3)])
    assert (d * d).is_identity()
    assert not preserves_classes(dc, d) and swaps_classes(dc, d)
    assert is_automorphism(dc.graph, d)


def test_lift_rotation_of_triangle():
    dc = build_double_cover(F.cycle(3))
    r = Permutation.from_cycles(3, [(0, 1, 2)])
    assert is_automorphism(dc.graph, lift_automorphism(dc, r))


def test_lift_rejects_non_automorphism():
    dc = build_double_cover(F.cycle(4))
    with pytest.raises(PreconditionError):
        lift_automorphism(dc, Permutation.from_cycles(4, [(0, 1)]))


@given(graphs(max_n=6))
def test_cover_is_bipartite_with_matching_degrees(g):
    dc = build_double_cover(g)
    n = g.n
    assert dc.graph.edge_count == 2 * g.edge_count
    assert is_bipartite(dc.graph) is not None
    for v in range(n):
        assert dc.graph.degree(v) == g.degree(v) == dc.graph.degree(v + n)
        assert all(u >= n for u in dc.graph.neighbors(v))
    for u in range(n):
        for v in range(n):
            assert dc.graph.has_edge(u, v + n) == g.has_edge(u, v)


@given(graphs(min_n=1, max_n=6))
def test_lifted_automorphisms_are_cover_automorphisms(g):
    dc = build_double_cover(g)
    for a in automorphism_group(g).generators:
        for swap in (False, True):
            s = lift_automorphism(dc, a, swap)
            assert is_automorphism(dc.graph, s)
            assert is_lifted(dc, s)
    d = swap_map(dc)
    assert (d * d).is_identity() and not preserves_classes(dc, d)
