from __future__ import annotations

import random

import pytest
from hypothesis import given, settings

from twofold import families as F
from twofold.aut import AutGroup, VertexColouring, automorphism_group, colour_class_stabiliser, is_automorphism
from twofold.corpus import corpus
from twofold.double_cover import build_double_cover
from twofold.errors import CapExceeded, InputError
from twofold.graph import Permutation, from_edge_list

from conftest import brute_automorphisms, graph_and_perm, graphs


def test_small_orders():
    assert automorphism_group(F.complete(3)).order == 6
    assert automorphism_group(F.cycle(6)).order == 12
    assert automorphism_group(F.petersen()).order == 120


def test_petersen_order_is_stable_under_relabelling():
    g = F.petersen()
    rng = random.Random(7)
    for _ in range(5):
        p = list(range(10))
        rng.shuffle(p)
        ag = automorphism_group(g.relabel(Permutation(tuple(p))))
        assert ag.order == 120
        assert all(is_automorphism(g.relabel(Permutation(tuple(p))), s) for s in ag.generators)


def test_smallest_asymmetric_graphs():
    # no graph on 2..5 vertices is asymmetric; eight on 6 vertices are
    g = from_edge_list(6, [(0, 2), (1, 2), (1, 3), (1, 4), (2, 4), (3, 5)])
    assert len(brute_automorphisms(g)) == 1
    assert automorphism_group(g).order == 1
    asym = [h for h in corpus(6) if automorphism_group(h).order == 1]
    assert len(asym) == 8
    assert all(automorphism_group(h).order > 1 for n in range(2, 6) for h in corpus(n))


def test_cover_groups():
    assert colour_class_stabiliser(build_double_cover(F.cycle(3))).order == 6
    assert colour_class_stabiliser(build_double_cover(F.complete(2))).order == 2
    cover_c4 = build_double_cover(F.cycle(4))
    assert automorphism_group(cover_c4.graph).order == 128


def test_square_cover_stabiliser_matches_brute_force():
    dc = build_double_cover(F.cycle(4))
    brute = brute_automorphisms(dc.graph, dc.colouring())
    assert len(brute) == 32
    assert colour_class_stabiliser(dc).order == 32


def test_membership_tests():
    c4 = F.cycle(4)
    assert is_automorphism(c4, Permutation.from_cycles(4, [(0, 1, 2, 3)]))
    assert not is_automorphism(c4, Permutation.from_cycles(4, [(0, 1)]))
    assert is_automorphism(c4, Permutation.identity(4))
    ag = automorphism_group(c4)
    assert ag.contains(Permutation.from_cycles(4, [(0, 2)]))
    assert not ag.contains(Permutation.from_cycles(4, [(0, 1)]))


def test_enumeration_cap():
    ag = automorphism_group(F.complete(7), enum_cap=100)
    assert ag.order == 5040
    assert ag.elements is None
    with pytest.raises(CapExceeded):
        ag.element_array()


def test_bad_colouring():
    with pytest.raises(InputError):
        automorphism_group(F.cycle(4), [0, 0, 1])
    with pytest.raises(InputError):
        VertexColouring((0, 2))


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=6))
def test_group_matches_brute_force(g):
    ag = automorphism_group(g)
    brute = brute_automorphisms(g)
    assert ag.order == len(brute)
    assert set(ag.elements) == set(brute)
    assert Permutation.identity(g.n) in ag.elements
    assert all(is_automorphism(g, s) for s in ag.generators)


@settings(max_examples=80, deadline=None)
@given(graphs(min_n=1, max_n=6))
def test_coloured_group_matches_brute_force(g):
    colours = [v % 2 for v in range(g.n)] if g.n > 1 else [0]
    ag = automorphism_group(g, colours)
    assert ag.order == len(brute_automorphisms(g, colours))
    assert all(colours[s(v)] == colours[v] for s in ag.generators for v in range(g.n))


@settings(max_examples=60, deadline=None)
@given(graph_and_perm(max_n=8))
def test_order_is_a_relabelling_invariant(gp):
    g, p = gp
    assert automorphism_group(g).order == automorphism_group(g.relabel(p)).order


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=6))
def test_elements_are_closed_and_distinct(g):
    ag: AutGroup = automorphism_group(g)
    elems = set(ag.elements)
    assert len(elems) == ag.order
    for s in ag.generators:
        for e in list(elems)[:20]:
            assert s * e in elems
