"""Text formats: the JSON graph document, partial maps and DOT output."""

from __future__ import annotations

import json

from .core import PartialAutomorphism, Tournament, check
from .witness import BudgetExceeded, Witness

FORMAT_NAME = "partite-tournament"
FORMAT_VERSION = 1
DOT_BUDGET = 4096


class GraphFormatError(ValueError):
    """Malformed document; ``location`` is ``"line L, column C"`` or a field path."""

    def __init__(self, message: str, location: str = ""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


def serialize_graph(T: Tournament, metadata: dict | None = None) -> str:
    doc = {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "k": T.k,
        "n": T.n,
        "part_of": list(T.part_of),
        "edges": [list(e) for e in sorted(T.edges)],
    }
    if metadata:
        doc["metadata"] = metadata
    return json.dumps(doc, indent=2) + "\n"


def _int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise GraphFormatError(f"expected an integer, got {value!r}", where)
    return value


def parse_graph(text: str) -> Tournament:
    """Parse and validate a graph document.

    Raises :class:`GraphFormatError` for syntax and shape problems and
    :class:`~partite_eppa.core.InvalidTournament` when the graph itself is
    not an n-partite tournament.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from None
    if not isinstance(doc, dict):
        raise GraphFormatError("document must be an object", "$")
    for key in ("k", "n", "part_of", "edges"):
        if key not in doc:
            raise GraphFormatError("missing field", key)
    if doc.get("format", FORMAT_NAME) != FORMAT_NAME:
        raise GraphFormatError(f"unknown format {doc['format']!r}", "format")
    if _int(doc.get("version", FORMAT_VERSION), "version") > FORMAT_VERSION:
        raise GraphFormatError(f"unsupported version {doc['version']}", "version")
    k, n = _int(doc["k"], "k"), _int(doc["n"], "n")
    part_of = doc["part_of"]
    if not isinstance(part_of, list) or len(part_of) != k:
        raise GraphFormatError(f"expected a list of {k} part indices", "part_of")
    part_of = tuple(_int(p, f"part_of[{i}]") for i, p in enumerate(part_of))
    if not isinstance(doc["edges"], list):
        raise GraphFormatError("expected a list of [from, to] pairs", "edges")
    edges = set()
    for i, e in enumerate(doc["edges"]):
        where = f"edges[{i}]"
        if not isinstance(e, list) or len(e) != 2:
            raise GraphFormatError("expected [from, to]", where)
        pair = (_int(e[0], where), _int(e[1], where))
        if pair in edges:
            raise GraphFormatError(f"duplicate edge {list(pair)}", where)
        edges.add(pair)
    return check(Tournament(part_of, frozenset(edges), n))


def parse_partial_map(text: str) -> PartialAutomorphism:
    """Read ``"1:2,2:1"`` or a JSON ``{"map": [[1, 2], [2, 1]]}`` document."""
    text = text.strip()
    if text.startswith("{"):
        try:
            pairs = json.loads(text)["map"]
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise GraphFormatError(f"bad partial map document ({exc})", "map") from None
    else:
        pairs = []
        for chunk in filter(None, (c.strip() for c in text.split(","))):
            try:
                a, b = chunk.split(":")
                pairs.append((int(a), int(b)))
            except ValueError:
                raise GraphFormatError(f"expected x:y, got {chunk!r}", "map") from None
    mapping = {}
    for a, b in pairs:
        if a in mapping:
            raise GraphFormatError(f"vertex {a} mapped twice", "map")
        mapping[int(a)] = int(b)
    return PartialAutomorphism.from_mapping(mapping)


def _dot(name: str, parts, arcs, label) -> str:
    lines = [f"digraph {name} {{"]
    for i, members in enumerate(parts, start=1):
        lines.append(f"  subgraph cluster_{i} {{")
        lines.append(f'    label="part {i}";')
        for v in members:
            lines.append(f'    "{label(v)}";')
        lines.append("  }")
    for u, v in arcs:
        lines.append(f'  "{label(u)}" -> "{label(v)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_dot(structure, budget: int = DOT_BUDGET) -> str:
    """Graphviz source with one cluster per part; byte-identical for equal inputs."""
    if isinstance(structure, Witness):
        if len(structure) > budget:
            raise BudgetExceeded(len(structure), budget, "DOT export")
        return _dot("H", structure.parts, structure.edges(), lambda v: v.label)
    return _dot("G", structure.parts, sorted(structure.edges), str)
