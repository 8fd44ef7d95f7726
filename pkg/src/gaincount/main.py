import json
from importlib import resources
from pathlib import Path
from typing import Any

import yaml

from . import lattice
from .coloring import ColorFilter
from .lattice import LatticeVector
from .models import Edge, EdgeKind, GainGraph, WeightedGainGraph
from .orthotope import AffinographicArrangement, BoundedList, Cofinite
from .semigroups import get_semigroup

FIXTURE_PREFIX = "fixture:"
FIXTURES = {
    "phi-star": "phi_star.json",
    "order2": "order2.json",
    "order2-arrangement": "order2_arrangement.json",
    "zero-triangle": "zero_triangle.json",
    "k2": "k2.json",
}


class FormatError(ValueError):
    pass


class DuplicateKeyError(Exception):
    pass


class PrettyDumper(yaml.Dumper):
    pass


def _int_list_representer(dumper, data):
    """Short integer rows stay on one line."""
    flow = all(isinstance(x, int) for x in data)
    return dumper.represent_sequence("tag:yaml.org,2002:seq", data, flow_style=flow)


yaml.add_representer(list, _int_list_representer, Dumper=PrettyDumper)


class SafeLoaderWithDuplicatesCheck(yaml.SafeLoader):
    def construct_mapping(self, node, deep=False):
        mapping = {}
        for key_node, value_node in node.value:
            key = self.construct_object(key_node, deep=deep)
            if key in mapping:
                raise DuplicateKeyError(f"Duplicate key: {key}")
            mapping[key] = self.construct_object(value_node, deep=deep)
        return mapping


def read_source(file_path: str) -> str:
    """Reads a file, or a bundled input named ``fixture:<name>``."""
    if file_path.startswith(FIXTURE_PREFIX):
        name = file_path[len(FIXTURE_PREFIX) :]
        if name not in FIXTURES:
            raise FileNotFoundError(f"Unknown fixture '{name}'. Available: {', '.join(sorted(FIXTURES))}")
        return resources.files("gaincount").joinpath("fixtures", FIXTURES[name]).read_text()
    return Path(file_path).read_text()


def load_document(file_path: str) -> Any:
    """Loads a YAML or JSON document; JSON files parse as YAML."""
    data = yaml.load(read_source(file_path), Loader=SafeLoaderWithDuplicatesCheck)
    if data is None:
        raise FormatError(f"{file_path} is empty")
    return data


def _mapping(data: Any, where: str) -> dict:
    if not isinstance(data, dict):
        raise FormatError(f"{where}: expected a mapping")
    return data


def _field(data: dict, key: str, where: str) -> Any:
    if key not in data:
        raise FormatError(f"{where}: missing field '{key}'")
    return data[key]


def _int(value: Any, where: str, minimum: int | None = None) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise FormatError(f"{where}: expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise FormatError(f"{where}: must be at least {minimum}, got {value}")
    return value


def _vector(value: Any, d: int, where: str) -> LatticeVector:
    if isinstance(value, int) and not isinstance(value, bool) and d == 1:
        value = [value]
    if not isinstance(value, list) or len(value) != d:
        raise FormatError(f"{where}: expected a list of {d} integers, got {value!r}")
    return tuple(_int(x, f"{where}[{k}]") for k, x in enumerate(value))


def _vertex(value: Any, n: int, where: str) -> int:
    v = _int(value, where)
    if not 1 <= v <= n:
        raise FormatError(f"{where}: vertex {v} is outside 1..{n}")
    return v - 1


def parse_edge(item: Any, d: int, n: int, where: str) -> Edge:
    item = _mapping(item, where)
    kind_name = _field(item, "type", where)
    try:
        kind = EdgeKind(kind_name)
    except ValueError as e:
        raise FormatError(f"{where}.type: unknown edge type {kind_name!r}") from e
    label = item.get("label")
    if label is not None and not isinstance(label, str):
        raise FormatError(f"{where}.label: expected a string")
    if kind is EdgeKind.LINK:
        tail = _vertex(_field(item, "tail", where), n, f"{where}.tail")
        head = _vertex(_field(item, "head", where), n, f"{where}.head")
        if tail == head:
            raise FormatError(f"{where}: a link needs two distinct vertices; use a loop")
        return Edge.link(tail, head, _vector(_field(item, "gain", where), d, f"{where}.gain"), label)
    if kind is EdgeKind.LOOP:
        vertex = _vertex(_field(item, "vertex", where), n, f"{where}.vertex")
        return Edge.loop(vertex, _vector(_field(item, "gain", where), d, f"{where}.gain"), label)
    if kind is EdgeKind.HALF:
        return Edge.half(_vertex(_field(item, "vertex", where), n, f"{where}.vertex"), label)
    return Edge.loose(label)


def parse_graph(data: Any) -> GainGraph:
    data = _mapping(data, "graph")
    d = _int(_field(data, "d", "graph"), "d", minimum=1)
    n = _int(_field(data, "n", "graph"), "n", minimum=0)
    items = data.get("edges", [])
    if not isinstance(items, list):
        raise FormatError("edges: expected a list")
    edges = [parse_edge(item, d, n, f"edges[{k}]") for k, item in enumerate(items)]
    try:
        return GainGraph(d, n, edges)
    except ValueError as e:
        raise FormatError(str(e)) from e


def parse_weighted_graph(data: Any, semigroup: str | None = None) -> WeightedGainGraph:
    """Graph plus ``semigroup`` and ``weights``; ``semigroup`` overrides the tag in the file."""
    graph = parse_graph(data)
    tag = semigroup or _field(data, "semigroup", "graph")
    try:
        sg = get_semigroup(tag, data.get("list_semigroup"))
    except ValueError as e:
        raise FormatError(f"semigroup: {e}") from e
    payloads = _field(data, "weights", "graph")
    if not isinstance(payloads, list) or len(payloads) != graph.n:
        raise FormatError(f"weights: expected a list of {graph.n} weights")
    try:
        weights = [sg.parse(p, graph.d, f"weights[{k}]") for k, p in enumerate(payloads)]
    except ValueError as e:
        raise FormatError(str(e)) from e
    return WeightedGainGraph(graph, sg, weights)


def parse_filter(data: Any, n: int, d: int) -> ColorFilter:
    if not isinstance(data, list) or len(data) != n:
        raise FormatError(f"filter: expected a list of {n} filters")
    try:
        return ColorFilter.from_dict(data, d)
    except ValueError as e:
        raise FormatError(str(e)) from e


def parse_bounds(data: Any, n: int, d: int, where: str) -> tuple[LatticeVector, ...]:
    """An n x d integer matrix, one row per vertex; rows may be bare integers when d = 1."""
    if not isinstance(data, list) or len(data) != n:
        raise FormatError(f"{where}: expected {n} rows")
    return tuple(_vector(row, d, f"{where}[{k}]") for k, row in enumerate(data))


def parse_lists(data: Any, n: int, d: int, allow_cofinite: bool = False) -> list:
    """Per-coordinate value lists; ``{"cofinite": [...]}`` is allowed for bounded counts."""
    if not isinstance(data, list) or len(data) != n:
        raise FormatError(f"lists: expected {n} lists")
    result: list[BoundedList | frozenset] = []
    for k, item in enumerate(data):
        where = f"lists[{k}]"
        if isinstance(item, dict):
            if not allow_cofinite or set(item) != {"cofinite"}:
                raise FormatError(f"{where}: only bounded counts accept {{'cofinite': [...]}}")
            values = item["cofinite"]
            if not isinstance(values, list):
                raise FormatError(f"{where}.cofinite: expected a list of integers")
            result.append(Cofinite(_int(x, f"{where}.cofinite[{i}]") for i, x in enumerate(values)))
            continue
        if not isinstance(item, list):
            raise FormatError(f"{where}: expected a list")
        if allow_cofinite:
            result.append(frozenset(_int(x, f"{where}[{i}]") for i, x in enumerate(item)))
        else:
            result.append(frozenset(_vector(x, d, f"{where}[{i}]") for i, x in enumerate(item)))
    return result


class ArrangementFile:
    """An arrangement with the optional lists and matrix bounds stored beside it."""

    def __init__(
        self,
        arrangement: AffinographicArrangement,
        lists_payload: Any = None,
        h: tuple[LatticeVector, ...] | None = None,
        m: tuple[LatticeVector, ...] | None = None,
    ):
        self.arrangement = arrangement
        self.lists_payload = lists_payload
        self.h = h
        self.m = m

    def lists(self, bounded: bool = False) -> list:
        """The stored lists; bounded counts read plain integers and accept cofinite lists."""
        if self.lists_payload is None:
            raise FormatError("The arrangement file has no 'lists'")
        arr = self.arrangement
        return parse_lists(self.lists_payload, arr.n, arr.d, allow_cofinite=bounded)

    def __repr__(self):
        return f"ArrangementFile({self.arrangement!r})"


def parse_arrangement(data: Any) -> ArrangementFile:
    data = _mapping(data, "arrangement")
    n = _int(_field(data, "n", "arrangement"), "n", minimum=0)
    d = _int(data.get("d", 1), "d", minimum=1)
    items = data.get("hyperplanes", [])
    if not isinstance(items, list):
        raise FormatError("hyperplanes: expected a list")
    planes = []
    for k, item in enumerate(items):
        where = f"hyperplanes[{k}]"
        item = _mapping(item, where)
        i = _vertex(_field(item, "i", where), n, f"{where}.i")
        j = _vertex(_field(item, "j", where), n, f"{where}.j")
        planes.append((i, j, _vector(_field(item, "a", where), d, f"{where}.a")))
    try:
        arr = AffinographicArrangement(n, d, planes)
    except ValueError as e:
        raise FormatError(str(e)) from e
    if "lists" in data:
        raw = data["lists"]
        cofinite = isinstance(raw, list) and any(isinstance(item, dict) for item in raw)
        parse_lists(raw, n, d, allow_cofinite=cofinite)
    h = parse_bounds(data["H"], n, d, "H") if "H" in data else None
    m = parse_bounds(data["M"], n, d, "M") if "M" in data else None
    return ArrangementFile(arr, data.get("lists"), h, m)


def load_graph(file_path: str) -> GainGraph:
    return parse_graph(load_document(file_path))


def load_weighted_graph(file_path: str, semigroup: str | None = None) -> WeightedGainGraph:
    """Loads a weighted gain graph from a YAML or JSON file."""
    return parse_weighted_graph(load_document(file_path), semigroup)


def load_filter(file_path: str, wg: WeightedGainGraph) -> ColorFilter | None:
    """The ``filter`` stored beside the weights, if any."""
    data = load_document(file_path)
    if isinstance(data, dict) and "filter" in data:
        return parse_filter(data["filter"], wg.n, wg.d)
    return None


def load_arrangement(file_path: str) -> ArrangementFile:
    return parse_arrangement(load_document(file_path))


def write_graph(wg: WeightedGainGraph, file_path: str, filt: ColorFilter | None = None):
    """Writes a weighted gain graph in the file schema, as JSON for ``.json`` paths and YAML otherwise."""
    data = wg.to_dict()
    if filt is not None:
        data["filter"] = filt.to_dict()
    path = Path(file_path)
    if path.suffix == ".json":
        path.write_text(json.dumps(data, indent=2) + "\n")
    else:
        with path.open("w") as f:
            yaml.dump(data, f, Dumper=PrettyDumper, sort_keys=False)


def parse_ordering(text: str, num_edges: int) -> list[int]:
    """A comma-separated permutation of 1-based edge positions."""
    try:
        order = [int(x) - 1 for x in text.split(",") if x.strip()]
    except ValueError as e:
        raise FormatError(f"--order: expected comma-separated integers, got {text!r}") from e
    if sorted(order) != list(range(num_edges)):
        raise FormatError(f"--order: expected a permutation of 1..{num_edges}, got {text!r}")
    return order


def parse_matrix_option(text: str, n: int, d: int, option: str = "--m") -> tuple[LatticeVector, ...]:
    """Rows separated by ';' and entries by ','. With d = 1, a flat list gives one entry per vertex."""
    try:
        if ";" not in text and d == 1:
            rows = [[int(x)] for x in text.split(",") if x.strip()]
        else:
            rows = [[int(x) for x in row.split(",") if x.strip()] for row in text.split(";") if row.strip()]
    except ValueError as e:
        raise FormatError(f"{option}: expected integers, got {text!r}") from e
    if len(rows) != n or any(len(r) != d for r in rows):
        raise FormatError(f"{option}: expected {n} rows of {d} integers, got {text!r}")
    return tuple(lattice.vector(r) for r in rows)


def parse_vector_option(text: str, d: int, option: str) -> LatticeVector:
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError as e:
        raise FormatError(f"{option}: expected integers, got {text!r}") from e
    if len(values) != d:
        raise FormatError(f"{option}: expected {d} integers, got {text!r}")
    return tuple(values)
