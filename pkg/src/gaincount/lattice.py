"""Exact arithmetic and order structure on the integer lattice Z^d."""

import itertools
from collections.abc import Iterable, Iterator, Sequence
from functools import reduce
from typing import Any

LatticeVector = tuple[int, ...]


class DimensionError(ValueError):
    pass


def vector(coords: Iterable[int]) -> LatticeVector:
    """Builds a lattice vector, rejecting non-integer coordinates."""
    result = tuple(coords)
    if not result:
        raise DimensionError("A lattice vector needs at least one coordinate.")
    for c in result:
        if isinstance(c, bool) or not isinstance(c, int):
            raise ValueError(f"Lattice coordinates must be integers, got {c!r}.")
    return result


def zero(d: int) -> LatticeVector:
    return (0,) * d


def _check(x: Sequence[int], y: Sequence[int]) -> None:
    if len(x) != len(y):
        raise DimensionError(f"Dimension mismatch: {len(x)} != {len(y)}")


def add(x: LatticeVector, y: LatticeVector) -> LatticeVector:
    _check(x, y)
    return tuple(a + b for a, b in zip(x, y, strict=True))


def sub(x: LatticeVector, y: LatticeVector) -> LatticeVector:
    _check(x, y)
    return tuple(a - b for a, b in zip(x, y, strict=True))


def neg(x: LatticeVector) -> LatticeVector:
    return tuple(-a for a in x)


def join(x: LatticeVector, y: LatticeVector) -> LatticeVector:
    """Componentwise maximum."""
    _check(x, y)
    return tuple(max(a, b) for a, b in zip(x, y, strict=True))


def meet(x: LatticeVector, y: LatticeVector) -> LatticeVector:
    """Componentwise minimum."""
    _check(x, y)
    return tuple(min(a, b) for a, b in zip(x, y, strict=True))


def join_all(vectors: Iterable[LatticeVector]) -> LatticeVector:
    return reduce(join, vectors)


def meet_all(vectors: Iterable[LatticeVector]) -> LatticeVector:
    return reduce(meet, vectors)


def leq(x: LatticeVector, y: LatticeVector) -> bool:
    _check(x, y)
    return all(a <= b for a, b in zip(x, y, strict=True))


def positive_part(x: LatticeVector) -> LatticeVector:
    return tuple(max(a, 0) for a in x)


def negative_part(x: LatticeVector) -> LatticeVector:
    return tuple(-min(a, 0) for a in x)


def format_vector(x: LatticeVector) -> str:
    return "(" + ",".join(str(c) for c in x) + ")"


class Box:
    """An integer interval [lo, hi] of the lattice; empty when lo is not below hi."""

    def __init__(self, lo: LatticeVector, hi: LatticeVector):
        _check(lo, hi)
        self.lo: LatticeVector = tuple(lo)
        self.hi: LatticeVector = tuple(hi)

    @property
    def d(self) -> int:
        return len(self.lo)

    def is_empty(self) -> bool:
        return any(a > b for a, b in zip(self.lo, self.hi, strict=True))

    def contains(self, x: LatticeVector) -> bool:
        return leq(self.lo, x) and leq(x, self.hi)

    def count(self) -> int:
        return box_count(self)

    def points(self) -> Iterator[LatticeVector]:
        if self.is_empty():
            return iter(())
        ranges = [range(a, b + 1) for a, b in zip(self.lo, self.hi, strict=True)]
        return itertools.product(*ranges)

    def intersect(self, other: "Box") -> "Box":
        return Box(join(self.lo, other.lo), meet(self.hi, other.hi))

    def to_dict(self) -> dict[str, Any]:
        return {"lo": list(self.lo), "hi": list(self.hi)}

    @classmethod
    def from_dict(cls, data: dict[str, Any]):
        return cls(vector(data["lo"]), vector(data["hi"]))

    def __eq__(self, other):
        if not isinstance(other, Box):
            return NotImplemented
        if self.is_empty() and other.is_empty():
            return self.d == other.d
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self):
        if self.is_empty():
            return hash(("empty-box", self.d))
        return hash((self.lo, self.hi))

    def __repr__(self):
        return f"Box(lo={self.lo}, hi={self.hi})"


def box_count(b: Box) -> int:
    """Number of lattice points in the box; 0 when empty."""
    total = 1
    for a, c in zip(b.lo, b.hi, strict=True):
        total *= max(c - a + 1, 0)
    return total


class Cone:
    """The principal dual order ideal of points at or above an apex."""

    def __init__(self, apex: LatticeVector):
        self.apex: LatticeVector = tuple(apex)

    def contains(self, x: LatticeVector) -> bool:
        return leq(self.apex, x)

    def intersect(self, other: "Cone") -> "Cone":
        return Cone(join(self.apex, other.apex))

    def translate(self, g: LatticeVector) -> "Cone":
        return Cone(add(self.apex, g))

    def __eq__(self, other):
        return isinstance(other, Cone) and self.apex == other.apex

    def __hash__(self):
        return hash(("cone", self.apex))

    def __repr__(self):
        return f"Cone(apex={self.apex})"


class Ideal:
    """The principal order ideal of points at or below an apex (the order-dual cone)."""

    def __init__(self, apex: LatticeVector):
        self.apex: LatticeVector = tuple(apex)

    def contains(self, x: LatticeVector) -> bool:
        return leq(x, self.apex)

    def intersect(self, other: "Ideal") -> "Ideal":
        return Ideal(meet(self.apex, other.apex))

    def translate(self, g: LatticeVector) -> "Ideal":
        return Ideal(add(self.apex, g))

    def __eq__(self, other):
        return isinstance(other, Ideal) and self.apex == other.apex

    def __hash__(self):
        return hash(("ideal", self.apex))

    def __repr__(self):
        return f"Ideal(apex={self.apex})"
