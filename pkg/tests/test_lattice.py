import itertools
import random

import pytest

from gaincount import lattice
from gaincount.lattice import Box, Cone, DimensionError, Ideal


# Tests for vector arithmetic
def test_vector_rejects_non_integers():
    with pytest.raises(ValueError, match="integers"):
        lattice.vector([1, 2.5])
    with pytest.raises(ValueError, match="integers"):
        lattice.vector([True])


def test_vector_rejects_empty():
    with pytest.raises(DimensionError):
        lattice.vector([])


def test_add_sub_neg():
    assert lattice.add((1, -2), (3, 4)) == (4, 2)
    assert lattice.sub((1, -2), (3, 4)) == (-2, -6)
    assert lattice.neg((1, -2)) == (-1, 2)


def test_dimension_mismatch():
    with pytest.raises(DimensionError, match="2 != 1"):
        lattice.add((1, 2), (3,))


# Tests for the order
def test_join_and_meet():
    assert lattice.join((1, 5), (3, 2)) == (3, 5)
    assert lattice.meet((1, 5), (3, 2)) == (1, 2)
    assert lattice.join_all([(0, 0), (2, -1), (-1, 3)]) == (2, 3)
    assert lattice.meet_all([(0, 0), (2, -1), (-1, 3)]) == (-1, -1)


def test_meet_negation_is_join_of_negatives():
    a, b = (2, -1), (-3, 4)
    assert lattice.neg(lattice.meet(a, b)) == lattice.join(lattice.neg(a), lattice.neg(b))


def test_join_and_meet_absorb_each_other():
    rng = random.Random(31)
    for _ in range(300):
        d = rng.randint(1, 3)
        x = tuple(rng.randint(-4, 4) for _ in range(d))
        y = tuple(rng.randint(-4, 4) for _ in range(d))
        assert lattice.join(x, lattice.meet(x, y)) == x
        assert lattice.meet(x, lattice.join(x, y)) == x


def test_leq_is_componentwise():
    assert lattice.leq((1, 2), (1, 3))
    assert not lattice.leq((2, 0), (1, 3))


def test_positive_and_negative_parts():
    x = (3, -2, 0)
    assert lattice.positive_part(x) == (3, 0, 0)
    assert lattice.negative_part(x) == (0, 2, 0)
    assert lattice.sub(lattice.positive_part(x), lattice.negative_part(x)) == x


def test_format_vector():
    assert lattice.format_vector((2, -3)) == "(2,-3)"


# Tests for Box
def test_box_count():
    assert Box((0, 0), (2, 3)).count() == 12
    assert Box((1,), (0,)).count() == 0


@pytest.mark.parametrize("d", [1, 2, 3])
def test_box_count_matches_enumeration(d):
    corners = list(itertools.product(range(-4, 5), repeat=d))
    pairs = list(itertools.product(corners, repeat=2))
    if d == 3:
        pairs = random.Random(32).sample(pairs, 3000)
    for lo, hi in pairs:
        points = itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi, strict=True)))
        assert lattice.box_count(Box(lo, hi)) == sum(1 for _ in points)


def test_box_points_and_contains():
    box = Box((0, 1), (1, 2))
    assert sorted(box.points()) == [(0, 1), (0, 2), (1, 1), (1, 2)]
    assert box.contains((1, 1))
    assert not box.contains((2, 1))


def test_empty_boxes_are_equal():
    assert Box((3, 0), (1, 0)) == Box((0, 5), (0, 1))
    assert list(Box((3,), (1,)).points()) == []


def test_box_intersect():
    assert Box((0, 0), (3, 3)).intersect(Box((2, -1), (5, 1))) == Box((2, 0), (3, 1))


def test_box_to_dict_and_back():
    box = Box((0, 1), (2, 3))
    assert Box.from_dict(box.to_dict()) == box


# Tests for Cone and Ideal
def test_cone():
    cone = Cone((1, 0))
    assert cone.contains((1, 5))
    assert not cone.contains((0, 5))
    assert cone.intersect(Cone((0, 2))) == Cone((1, 2))
    assert cone.translate((1, -1)) == Cone((2, -1))


def test_ideal():
    ideal = Ideal((2, 2))
    assert ideal.contains((0, 2))
    assert not ideal.contains((3, 0))
    assert ideal.intersect(Ideal((5, 1))) == Ideal((2, 1))
    assert ideal.translate((-1, 1)) == Ideal((1, 3))
