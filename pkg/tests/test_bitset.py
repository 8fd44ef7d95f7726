import pytest

from gaincount.bitset import (
    all_subsets,
    bitset_from_indices,
    bitset_to_indices,
    contains,
    full_mask,
    is_subset,
    popcount,
    subsets_of,
)


def test_round_trip_indices():
    assert bitset_from_indices([0, 2, 5]) == 0b100101
    assert bitset_to_indices(0b100101) == [0, 2, 5]
    assert bitset_to_indices(0) == []


def test_out_of_range_index():
    with pytest.raises(ValueError, match="out of range"):
        bitset_from_indices([3], max_bits=3)
    with pytest.raises(ValueError, match="out of range"):
        bitset_from_indices([-1])


def test_popcount_and_full_mask():
    assert popcount(0b1011) == 3
    assert full_mask(4) == 0b1111
    assert full_mask(0) == 0


def test_contains_and_subset():
    assert contains(0b100, 2)
    assert not contains(0b100, 1)
    assert is_subset(0b0101, 0b1101)
    assert not is_subset(0b0011, 0b0101)


def test_subsets_of_enumerates_every_submask_once():
    subs = list(subsets_of(0b1010))
    assert subs[0] == 0
    assert sorted(subs) == [0b0000, 0b0010, 0b1000, 0b1010]


def test_subsets_of_walks_upward_from_the_empty_set():
    assert list(subsets_of(0b101)) == [0b000, 0b001, 0b100, 0b101]
    assert list(subsets_of(0)) == [0]


def test_all_subsets():
    assert list(all_subsets(2)) == [0, 1, 2, 3]
