import random

import pytest

from gaincount.bitset import is_subset
from gaincount.gain_graph import (
    UnbalancedSetError,
    balanced_closure,
    balanced_subsets,
    components,
    frame_rank,
    is_balanced,
    lat_b,
    mobius_alternating,
    walk_gain,
)
from gaincount.models import Edge, GainGraph
from gaincount.verify import random_gain_graph


@pytest.fixture
def balanced_triangle():
    return GainGraph(1, 3, [Edge.link(0, 1, (1,)), Edge.link(1, 2, (1,)), Edge.link(0, 2, (2,))])


@pytest.fixture
def unbalanced_triangle():
    return GainGraph(1, 3, [Edge.link(0, 1, (1,)), Edge.link(1, 2, (1,)), Edge.link(0, 2, (3,))])


# Tests for components and balance
def test_components_of_empty_set(balanced_triangle):
    part = components(balanced_triangle, 0)
    assert part.c == 3
    assert part.b == 3
    assert part.blocks == (frozenset({0}), frozenset({1}), frozenset({2}))


def test_components_potentials(balanced_triangle):
    part = components(balanced_triangle, 0b011)
    assert part.blocks == (frozenset({0, 1, 2}),)
    assert part.potentials == {0: (0,), 1: (1,), 2: (2,)}


def test_balance_of_circles(balanced_triangle, unbalanced_triangle):
    assert is_balanced(balanced_triangle, 0b111)
    assert not is_balanced(unbalanced_triangle, 0b111)
    assert is_balanced(unbalanced_triangle, 0b011)


def test_half_edge_and_loops_unbalance():
    g = GainGraph(1, 2, [Edge.half(0), Edge.loop(1, (1,)), Edge.loop(1, (0,)), Edge.loose()])
    part = components(g, 0b0001)
    assert part.balanced == (False, True)
    assert part.blocks == (frozenset({0}), frozenset({1}))
    assert not is_balanced(g, 0b0010)
    assert is_balanced(g, 0b1100)


def test_walk_gain(balanced_triangle, unbalanced_triangle):
    closed_walk = [(0, 0), (1, 1), (2, 2)]
    assert walk_gain(balanced_triangle, closed_walk) == (0,)
    assert walk_gain(unbalanced_triangle, closed_walk) == (-1,)


def test_walk_gain_rejects_broken_walks(balanced_triangle):
    with pytest.raises(ValueError, match="does not start at vertex 2"):
        walk_gain(balanced_triangle, [(0, 0), (2, 0)])


# Tests for balanced closure
def test_balanced_closure_adds_closing_edges(balanced_triangle):
    assert balanced_closure(balanced_triangle, 0b001) == 0b001
    assert balanced_closure(balanced_triangle, 0b011) == 0b111


def test_balanced_closure_adds_zero_loops_and_loose_edges():
    g = GainGraph(1, 1, [Edge.loop(0, (0,)), Edge.loose(), Edge.loop(0, (1,))])
    assert balanced_closure(g, 0) == 0b011


def test_balanced_closure_of_unbalanced_set(unbalanced_triangle):
    with pytest.raises(UnbalancedSetError):
        balanced_closure(unbalanced_triangle, 0b111)


def test_balanced_subsets(unbalanced_triangle):
    assert len(list(balanced_subsets(unbalanced_triangle))) == 7


def test_balanced_closure_is_idempotent_and_keeps_the_partition():
    rng = random.Random(21)
    for _ in range(30):
        g = random_gain_graph(rng, 4, 5, 2, gain_range=1)
        for s in balanced_subsets(g):
            closed = balanced_closure(g, s)
            assert is_subset(s, closed)
            assert is_balanced(g, closed)
            assert balanced_closure(g, closed) == closed
            assert components(g, closed).blocks == components(g, s).blocks


# Tests for the semilattice of closed balanced sets
def test_lat_b_of_balanced_triangle(balanced_triangle):
    lat = lat_b(balanced_triangle)
    assert list(lat) == [0, 0b001, 0b010, 0b100, 0b111]
    assert [lat.mu(b) for b in lat] == [1, -1, -1, -1, 2]


def test_lat_b_of_unbalanced_triangle(unbalanced_triangle):
    lat = lat_b(unbalanced_triangle)
    assert len(lat) == 7
    assert lat.mu(0b011) == 1
    with pytest.raises(ValueError, match="not a closed balanced set"):
        lat.mu(0b111)


def test_mobius_vanishes_when_empty_set_is_not_closed():
    g = GainGraph(1, 1, [Edge.loop(0, (0,))])
    lat = lat_b(g)
    assert not lat.empty_is_closed
    assert all(lat.mu(b) == 0 for b in lat)


def test_mobius_alternating_matches_recursion(balanced_triangle):
    lat = lat_b(balanced_triangle)
    for b in lat:
        assert mobius_alternating(balanced_triangle, b) == lat.mu(b)


def test_mobius_alternating_matches_recursion_on_random_graphs():
    rng = random.Random(22)
    for _ in range(30):
        g = random_gain_graph(rng, 4, 5, 2, gain_range=1)
        lat = lat_b(g)
        for b in lat:
            assert mobius_alternating(g, b) == lat.mu(b)


def test_frame_rank(balanced_triangle, unbalanced_triangle):
    assert frame_rank(balanced_triangle, 0) == 0
    assert frame_rank(balanced_triangle, 0b111) == 2
    assert frame_rank(unbalanced_triangle, 0b111) == 3
