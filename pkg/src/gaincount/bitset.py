"""Integer-backed edge subsets.

Bit ``k`` of a mask stands for the edge at position ``k`` of the host graph.
"""

from collections.abc import Iterable, Iterator

EdgeSubset = int


def popcount(x: int) -> int:
    return x.bit_count()


def full_mask(num_bits: int) -> int:
    return (1 << num_bits) - 1


def bitset_from_indices(indices: Iterable[int], max_bits: int | None = None) -> int:
    """Create bitset from edge positions."""
    result = 0
    for i in indices:
        if i < 0 or (max_bits is not None and i >= max_bits):
            raise ValueError(f"Edge index {i} out of range.")
        result |= 1 << i
    return result


def bitset_to_indices(bitset: int) -> list[int]:
    indices = []
    bit = 0
    while bitset:
        if bitset & 1:
            indices.append(bit)
        bitset >>= 1
        bit += 1
    return indices


def contains(bitset: int, index: int) -> bool:
    return bool(bitset >> index & 1)


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def subsets_of(mask: int) -> Iterator[int]:
    """All submasks of ``mask`` in increasing order, from the empty set up to ``mask`` itself."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def all_subsets(num_bits: int) -> Iterator[int]:
    return iter(range(1 << num_bits))
