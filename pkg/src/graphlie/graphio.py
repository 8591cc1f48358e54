"""Reading and writing graphs and presentations as JSON."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from graphlie.errors import ParseError
from graphlie.gf2k import field_from_name
from graphlie.graphs import LabelledGraph, MixedGraph
from graphlie.tensor import QuadraticPresentation, lie2_size

GRAPH_KEYS = {"vertices", "plain_edges", "directed_edges", "labels"}


def _pairs(data: dict, key: str) -> list[tuple[str, str]]:
    raw = data.get(key, [])
    if not isinstance(raw, list):
        raise ParseError(f"field '{key}': expected a list of vertex pairs")
    out = []
    for i, e in enumerate(raw):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, (str, int)) for x in e)):
            raise ParseError(f"field '{key}[{i}]': expected a pair of vertex names, got {e!r}")
        out.append((str(e[0]), str(e[1])))
    return out


def graph_from_dict(data: Any) -> MixedGraph | LabelledGraph:
    """Build a mixed graph, or a labelled graph when a ``labels`` key is present."""
    if not isinstance(data, dict):
        raise ParseError("top level: expected a JSON object")
    unknown = set(data) - GRAPH_KEYS
    if unknown:
        raise ParseError(f"unknown field(s) {sorted(unknown)}")
    if "vertices" not in data:
        raise ParseError("field 'vertices': missing")
    verts = data["vertices"]
    if not isinstance(verts, list) or not all(isinstance(v, (str, int)) for v in verts):
        raise ParseError("field 'vertices': expected a list of vertex names")
    verts = [str(v) for v in verts]
    plain = _pairs(data, "plain_edges")
    directed = _pairs(data, "directed_edges")
    try:
        if "labels" in data:
            labels = data["labels"]
            if not isinstance(labels, dict):
                raise ParseError("field 'labels': expected an object mapping vertices to 0 or 1")
            for v, b in labels.items():
                if b not in (0, 1):
                    raise ParseError(f"field 'labels.{v}': expected 0 or 1, got {b!r}")
            if directed:
                raise ParseError("field 'directed_edges': a labelled graph has no directed edges")
            return LabelledGraph.build(verts, plain, labels)
        return MixedGraph.build(verts, plain, directed)
    except ValueError as e:
        raise ParseError(str(e)) from e


def graph_to_dict(g: MixedGraph | LabelledGraph) -> dict:
    if isinstance(g, LabelledGraph):
        return {
            "vertices": list(g.vertices),
            "plain_edges": sorted(sorted(e) for e in g.edges),
            "directed_edges": [],
            "labels": g.theta,
        }
    return {
        "vertices": list(g.vertices),
        "plain_edges": sorted(sorted(e) for e in g.plain_edges),
        "directed_edges": sorted(list(e) for e in g.directed_edges),
    }


def parse_json(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{source}: line {e.lineno} column {e.colno}: {e.msg}") from e


def load_graph(path: str | Path) -> MixedGraph | LabelledGraph:
    return load_graph_with_order(path)[0]


def load_graph_with_order(path: str | Path) -> tuple[MixedGraph | LabelledGraph, list[str]]:
    """The graph plus its vertices in the order the file lists them.

    Graphs store vertices sorted; coefficient rows typed by a user follow
    the file order, so callers need both.
    """
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as e:
        raise ParseError(f"{p}: cannot read file ({e.strerror})") from e
    try:
        data = parse_json(text, str(p))
        g = graph_from_dict(data)
        return g, [str(v) for v in data["vertices"]]
    except ParseError as e:
        if str(e).startswith(str(p)):
            raise
        raise ParseError(f"{p}: {e}") from e


def presentation_to_dict(p: QuadraticPresentation) -> dict:
    """Coefficients are written as field elements in bit form (``T + 1`` is 3)."""
    return {
        "generators": p.n,
        "names": list(p.names),
        "field": p.field.name,
        "relations": p.relation_lists(),
    }


def presentation_from_dict(data: Any) -> QuadraticPresentation:
    if not isinstance(data, dict):
        raise ParseError("top level: expected a JSON object")
    try:
        n = int(data["generators"])
        field = field_from_name(str(data.get("field", "F2")))
    except (KeyError, ValueError, TypeError) as e:
        raise ParseError(f"bad presentation header: {e}") from e
    rows = data.get("relations", [])
    width = lie2_size(n)
    for i, r in enumerate(rows):
        if not isinstance(r, list) or len(r) != width:
            raise ParseError(f"field 'relations[{i}]': expected {width} coefficients")
        if not all(isinstance(c, int) and 0 <= c < field.q for c in r):
            raise ParseError(f"field 'relations[{i}]': coefficients must be field elements 0..{field.q - 1}")
    names = data.get("names")
    return QuadraticPresentation.from_lists(field, n, rows, names)
