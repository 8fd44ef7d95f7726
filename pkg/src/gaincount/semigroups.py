"""Weight semigroups with a translation action of the gain group Z^d.

Every semigroup turns its elements into a canonical, hashable ``key`` whose first item is the
semigroup tag, so polynomial variables indexed by keys from different semigroups never mix.
"""

import random
from abc import ABC, abstractmethod
from collections.abc import Iterable, Iterator
from functools import reduce
from typing import Any

from . import lattice
from .lattice import Box, Cone, Ideal, LatticeVector, format_vector


class InfiniteListError(ValueError):
    pass


class PuncturedCone:
    """A cone of points at or above ``apex`` with finitely many points removed."""

    def __init__(self, apex: LatticeVector | Cone, exclusions: Iterable[LatticeVector] = ()):
        self.cone: Cone = apex if isinstance(apex, Cone) else Cone(apex)
        excl = frozenset(tuple(x) for x in exclusions)
        for x in excl:
            if not self.cone.contains(x):
                raise ValueError(f"Excluded point {format_vector(x)} is not in the cone at {format_vector(self.apex)}.")
        self.exclusions: frozenset[LatticeVector] = excl

    @property
    def apex(self) -> LatticeVector:
        return self.cone.apex

    @property
    def d(self) -> int:
        return len(self.apex)

    @property
    def hat(self) -> LatticeVector:
        """Join of the excluded points, or one step below the apex when nothing is excluded."""
        if not self.exclusions:
            return tuple(a - 1 for a in self.apex)
        return lattice.join_all(self.exclusions)

    def contains(self, x: LatticeVector) -> bool:
        return self.cone.contains(x) and x not in self.exclusions

    def translate(self, g: LatticeVector) -> "PuncturedCone":
        return PuncturedCone(self.cone.translate(g), (lattice.add(x, g) for x in self.exclusions))

    def intersect(self, other: "PuncturedCone") -> "PuncturedCone":
        cone = self.cone.intersect(other.cone)
        return PuncturedCone(cone, (x for x in self.exclusions | other.exclusions if cone.contains(x)))

    def count_below(self, m: LatticeVector) -> int:
        """Number of members at or below ``m``."""
        box = Box(self.apex, m)
        return box.count() - sum(1 for x in self.exclusions if box.contains(x))

    def members_below(self, m: LatticeVector) -> Iterator[LatticeVector]:
        return (x for x in Box(self.apex, m).points() if x not in self.exclusions)

    def key(self) -> tuple:
        return (self.apex, tuple(sorted(self.exclusions)))

    def __eq__(self, other):
        return isinstance(other, PuncturedCone) and self.key() == other.key()

    def __hash__(self):
        return hash(("punctured-cone", self.key()))

    def __repr__(self):
        return f"PuncturedCone(apex={self.apex}, exclusions={sorted(self.exclusions)})"


class SumWeight:
    """A sum of `count` vertex weights in Z^d."""

    def __init__(self, vector: LatticeVector, count: int = 1):
        if count < 1:
            raise ValueError(f"A sum needs at least one term, got count {count}")
        self.vector: LatticeVector = tuple(vector)
        self.count = count

    def translate(self, g: LatticeVector) -> "SumWeight":
        return SumWeight(lattice.add(self.vector, tuple(self.count * y for y in g)), self.count)

    def __eq__(self, other):
        return isinstance(other, SumWeight) and (self.vector, self.count) == (other.vector, other.count)

    def __hash__(self):
        return hash(("sum-weight", self.vector, self.count))

    def __repr__(self):
        return f"SumWeight({self.vector}, count={self.count})"


class WholeLattice:
    """The filter that lets every color through."""

    def contains(self, x: LatticeVector) -> bool:
        return True

    def translate(self, g: LatticeVector) -> "WholeLattice":
        return self

    def __eq__(self, other):
        return isinstance(other, WholeLattice)

    def __hash__(self):
        return hash("whole-lattice")

    def __repr__(self):
        return "WholeLattice()"


WHOLE = WholeLattice()

FilterElement = Ideal | frozenset | WholeLattice


def _translate_points(points: Iterable[LatticeVector], g: LatticeVector) -> frozenset:
    return frozenset(lattice.add(x, g) for x in points)


def _point_list(payload: Any, d: int, where: str) -> frozenset:
    if not isinstance(payload, list):
        raise ValueError(f"{where}: expected a list of points")
    points = set()
    for k, p in enumerate(payload):
        x = _coerce_vector(p, d, f"{where}[{k}]")
        points.add(x)
    return frozenset(points)


def _coerce_vector(payload: Any, d: int, where: str) -> LatticeVector:
    if isinstance(payload, int) and not isinstance(payload, bool) and d == 1:
        payload = [payload]
    if not isinstance(payload, list):
        raise ValueError(f"{where}: expected a list of {d} integers")
    try:
        x = lattice.vector(payload)
    except ValueError as e:
        raise ValueError(f"{where}: {e}") from e
    if len(x) != d:
        raise ValueError(f"{where}: expected {d} coordinates, got {len(x)}")
    return x


class WeightSemigroup(ABC):
    """An abelian semigroup of vertex weights with a right action of Z^d."""

    tag: str = ""

    @abstractmethod
    def add(self, w1: Any, w2: Any) -> Any: ...

    @abstractmethod
    def act(self, w: Any, g: LatticeVector) -> Any: ...

    @abstractmethod
    def key(self, w: Any) -> tuple: ...

    @abstractmethod
    def from_key(self, key: tuple) -> Any: ...

    @abstractmethod
    def parse(self, payload: Any, d: int, where: str = "weight") -> Any: ...

    @abstractmethod
    def dump(self, w: Any) -> Any: ...

    @abstractmethod
    def random_element(self, rng: random.Random, d: int) -> Any: ...

    def total(self, weights: Iterable[Any]) -> Any:
        return reduce(self.add, weights)

    def to_dict(self) -> dict[str, Any]:
        return {"semigroup": self.tag}

    def __eq__(self, other):
        return isinstance(other, WeightSemigroup) and self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash(self.tag)

    def __repr__(self):
        return f"{type(self).__name__}()"


class _VectorSemigroup(WeightSemigroup):
    def act(self, w: LatticeVector, g: LatticeVector) -> LatticeVector:
        return lattice.add(w, g)

    def key(self, w: LatticeVector) -> tuple:
        return (self.tag, tuple(w))

    def from_key(self, key: tuple) -> LatticeVector:
        return tuple(key[1])

    def parse(self, payload: Any, d: int, where: str = "weight") -> LatticeVector:
        return _coerce_vector(payload, d, where)

    def dump(self, w: LatticeVector) -> list[int]:
        return list(w)

    def random_element(self, rng: random.Random, d: int) -> LatticeVector:
        return tuple(rng.randint(-2, 3) for _ in range(d))


class MaxZd(_VectorSemigroup):
    """Vectors under componentwise maximum."""

    tag = "max-zd"

    def add(self, w1: LatticeVector, w2: LatticeVector) -> LatticeVector:
        return lattice.join(w1, w2)


class SumZd(WeightSemigroup):
    """Vector sums under addition.

    An element remembers how many vertex weights it adds up, and a gain g moves it by count * g,
    so the action distributes over the sum.
    """

    tag = "sum-zd"

    def add(self, w1: SumWeight, w2: SumWeight) -> SumWeight:
        return SumWeight(lattice.add(w1.vector, w2.vector), w1.count + w2.count)

    def act(self, w: SumWeight, g: LatticeVector) -> SumWeight:
        return w.translate(g)

    def key(self, w: SumWeight) -> tuple:
        return (self.tag, w.vector, w.count)

    def from_key(self, key: tuple) -> SumWeight:
        return SumWeight(tuple(key[1]), key[2])

    def parse(self, payload: Any, d: int, where: str = "weight") -> SumWeight:
        if not isinstance(payload, dict):
            return SumWeight(_coerce_vector(payload, d, where))
        if set(payload) != {"vector", "count"}:
            raise ValueError(f"{where}: expected a vector, or a mapping with 'vector' and 'count'")
        count = payload["count"]
        if not isinstance(count, int) or isinstance(count, bool) or count < 1:
            raise ValueError(f"{where}.count: expected a positive integer, got {count!r}")
        return SumWeight(_coerce_vector(payload["vector"], d, f"{where}.vector"), count)

    def dump(self, w: SumWeight) -> Any:
        if w.count == 1:
            return list(w.vector)
        return {"vector": list(w.vector), "count": w.count}

    def random_element(self, rng: random.Random, d: int) -> SumWeight:
        return SumWeight(tuple(rng.randint(-2, 3) for _ in range(d)))


class ListSemigroup(WeightSemigroup):
    """A semigroup whose elements are sets of colors, combined by intersection."""

    @abstractmethod
    def count_within(self, w: Any, filt: FilterElement) -> int: ...

    @abstractmethod
    def members_within(self, w: Any, filt: FilterElement) -> frozenset: ...


class FiniteList(ListSemigroup):
    """Finite color lists under intersection."""

    tag = "finite-list"

    def add(self, w1: frozenset, w2: frozenset) -> frozenset:
        return w1 & w2

    def act(self, w: frozenset, g: LatticeVector) -> frozenset:
        return _translate_points(w, g)

    def key(self, w: frozenset) -> tuple:
        return (self.tag, tuple(sorted(w)))

    def from_key(self, key: tuple) -> frozenset:
        return frozenset(tuple(x) for x in key[1])

    def parse(self, payload: Any, d: int, where: str = "weight") -> frozenset:
        return _point_list(payload, d, where)

    def dump(self, w: frozenset) -> list[list[int]]:
        return [list(x) for x in sorted(w)]

    def random_element(self, rng: random.Random, d: int, max_size: int = 4) -> frozenset:
        size = rng.randint(0, max_size)
        return frozenset(tuple(rng.randint(0, 3) for _ in range(d)) for _ in range(size))

    def count_within(self, w: frozenset, filt: FilterElement) -> int:
        return len(self.members_within(w, filt))

    def members_within(self, w: frozenset, filt: FilterElement) -> frozenset:
        if isinstance(filt, frozenset):
            return w & filt
        return frozenset(x for x in w if filt.contains(x))


class ConeMinusFinite(ListSemigroup):
    """Cones with finitely many excluded points, under intersection."""

    tag = "cone-minus-finite"

    def add(self, w1: PuncturedCone, w2: PuncturedCone) -> PuncturedCone:
        return w1.intersect(w2)

    def act(self, w: PuncturedCone, g: LatticeVector) -> PuncturedCone:
        return w.translate(g)

    def key(self, w: PuncturedCone) -> tuple:
        return (self.tag, *w.key())

    def from_key(self, key: tuple) -> PuncturedCone:
        return PuncturedCone(tuple(key[1]), (tuple(x) for x in key[2]))

    def parse(self, payload: Any, d: int, where: str = "weight") -> PuncturedCone:
        if not isinstance(payload, dict) or "apex" not in payload:
            raise ValueError(f"{where}: expected a mapping with 'apex' and optional 'exclude'")
        apex = _coerce_vector(payload["apex"], d, f"{where}.apex")
        excl = _point_list(payload.get("exclude", []), d, f"{where}.exclude")
        try:
            return PuncturedCone(apex, excl)
        except ValueError as e:
            raise ValueError(f"{where}: {e}") from e

    def dump(self, w: PuncturedCone) -> dict[str, Any]:
        return {"apex": list(w.apex), "exclude": [list(x) for x in sorted(w.exclusions)]}

    def random_element(self, rng: random.Random, d: int, max_exclusions: int = 2) -> PuncturedCone:
        apex = tuple(rng.randint(-1, 2) for _ in range(d))
        excl = {tuple(a + rng.randint(0, 2) for a in apex) for _ in range(rng.randint(0, max_exclusions))}
        return PuncturedCone(apex, excl)

    def count_within(self, w: PuncturedCone, filt: FilterElement) -> int:
        if isinstance(filt, Ideal):
            return w.count_below(filt.apex)
        return len(self.members_within(w, filt))

    def members_within(self, w: PuncturedCone, filt: FilterElement) -> frozenset:
        if isinstance(filt, Ideal):
            return frozenset(w.members_below(filt.apex))
        if isinstance(filt, frozenset):
            return frozenset(x for x in filt if w.contains(x))
        raise InfiniteListError(f"The list {w!r} is infinite without an upper-bound filter.")


class FilterSemigroup(WeightSemigroup):
    """Color filters: principal ideals, finite sets, or the whole lattice, under intersection."""

    tag = "filter"

    def add(self, w1: FilterElement, w2: FilterElement) -> FilterElement:
        if isinstance(w1, WholeLattice):
            return w2
        if isinstance(w2, WholeLattice):
            return w1
        if isinstance(w1, Ideal) and isinstance(w2, Ideal):
            return w1.intersect(w2)
        if isinstance(w1, Ideal):
            return frozenset(x for x in w2 if w1.contains(x))
        if isinstance(w2, Ideal):
            return frozenset(x for x in w1 if w2.contains(x))
        return w1 & w2

    def act(self, w: FilterElement, g: LatticeVector) -> FilterElement:
        if isinstance(w, frozenset):
            return _translate_points(w, g)
        return w.translate(g)

    def key(self, w: FilterElement) -> tuple:
        if isinstance(w, WholeLattice):
            return (self.tag, "all")
        if isinstance(w, Ideal):
            return (self.tag, "ideal", w.apex)
        return (self.tag, "set", tuple(sorted(w)))

    def from_key(self, key: tuple) -> FilterElement:
        if key[1] == "all":
            return WHOLE
        if key[1] == "ideal":
            return Ideal(tuple(key[2]))
        return frozenset(tuple(x) for x in key[2])

    def parse(self, payload: Any, d: int, where: str = "filter") -> FilterElement:
        if not isinstance(payload, dict) or len(payload) != 1:
            raise ValueError(f"{where}: expected one of {{'ideal': [...]}}, {{'set': [...]}} or {{'all': true}}")
        if "ideal" in payload:
            return Ideal(_coerce_vector(payload["ideal"], d, f"{where}.ideal"))
        if "set" in payload:
            return _point_list(payload["set"], d, f"{where}.set")
        if payload.get("all") is True:
            return WHOLE
        raise ValueError(f"{where}: unknown filter kind {next(iter(payload))!r}")

    def dump(self, w: FilterElement) -> dict[str, Any]:
        if isinstance(w, WholeLattice):
            return {"all": True}
        if isinstance(w, Ideal):
            return {"ideal": list(w.apex)}
        return {"set": [list(x) for x in sorted(w)]}

    def random_element(self, rng: random.Random, d: int) -> FilterElement:
        return Ideal(tuple(rng.randint(0, 4) for _ in range(d)))


class PairSemigroup(WeightSemigroup):
    """Doubly weighted vertices: a color list paired with a color filter."""

    tag = "pair"

    def __init__(self, list_semigroup: ListSemigroup):
        self.lists = list_semigroup
        self.filters = FilterSemigroup()

    def add(self, w1: tuple, w2: tuple) -> tuple:
        return (self.lists.add(w1[0], w2[0]), self.filters.add(w1[1], w2[1]))

    def act(self, w: tuple, g: LatticeVector) -> tuple:
        return (self.lists.act(w[0], g), self.filters.act(w[1], g))

    def key(self, w: tuple) -> tuple:
        return (self.tag, self.lists.key(w[0]), self.filters.key(w[1]))

    def from_key(self, key: tuple) -> tuple:
        return (self.lists.from_key(key[1]), self.filters.from_key(key[2]))

    def parse(self, payload: Any, d: int, where: str = "weight") -> tuple:
        if not isinstance(payload, dict) or "list" not in payload or "filter" not in payload:
            raise ValueError(f"{where}: expected a mapping with 'list' and 'filter'")
        return (
            self.lists.parse(payload["list"], d, f"{where}.list"),
            self.filters.parse(payload["filter"], d, f"{where}.filter"),
        )

    def dump(self, w: tuple) -> dict[str, Any]:
        return {"list": self.lists.dump(w[0]), "filter": self.filters.dump(w[1])}

    def random_element(self, rng: random.Random, d: int) -> tuple:
        return (self.lists.random_element(rng, d), self.filters.random_element(rng, d))

    def size(self, w: tuple) -> int:
        """Number of colors in the filtered list."""
        return self.lists.count_within(w[0], w[1])

    def members(self, w: tuple) -> frozenset:
        return self.lists.members_within(w[0], w[1])

    def to_dict(self) -> dict[str, Any]:
        return {"semigroup": self.tag, "list_semigroup": self.lists.tag}

    def __repr__(self):
        return f"PairSemigroup({self.lists!r})"


SEMIGROUPS: dict[str, type[WeightSemigroup]] = {
    MaxZd.tag: MaxZd,
    SumZd.tag: SumZd,
    FiniteList.tag: FiniteList,
    ConeMinusFinite.tag: ConeMinusFinite,
}

LIST_SEMIGROUPS = (FiniteList.tag, ConeMinusFinite.tag)


def get_semigroup(tag: str, list_tag: str | None = None) -> WeightSemigroup:
    """Looks up a semigroup by its file tag."""
    if tag == PairSemigroup.tag:
        if list_tag not in LIST_SEMIGROUPS:
            raise ValueError(f"Pair semigroup needs 'list_semigroup' in {list(LIST_SEMIGROUPS)}, got {list_tag!r}")
        inner = SEMIGROUPS[list_tag]()
        assert isinstance(inner, ListSemigroup)
        return PairSemigroup(inner)
    if tag not in SEMIGROUPS:
        raise ValueError(f"Unknown semigroup '{tag}'. Expected one of {[*SEMIGROUPS, PairSemigroup.tag]}")
    return SEMIGROUPS[tag]()


def format_key(key: tuple) -> str:
    """Human-readable rendering of a semigroup key."""
    tag = key[0]
    if tag in (MaxZd.tag, SumZd.tag):
        return format_vector(key[1])
    if tag == FiniteList.tag:
        return "{" + ",".join(format_vector(x) for x in key[1]) + "}"
    if tag == ConeMinusFinite.tag:
        text = f"<{format_vector(key[1])}>*"
        if key[2]:
            text += "-{" + ",".join(format_vector(x) for x in key[2]) + "}"
        return text
    if tag == FilterSemigroup.tag:
        if key[1] == "all":
            return "all"
        if key[1] == "ideal":
            return f"<{format_vector(key[2])}>"
        return "{" + ",".join(format_vector(x) for x in key[2]) + "}"
    if tag == PairSemigroup.tag:
        return f"{format_key(key[1])};{format_key(key[2])}"
    return repr(key)
