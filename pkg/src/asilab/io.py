"""Documents in and out: graphs, witnesses, solutions and run manifests.

JSON is emitted compactly with keys in insertion order, and every mapping
is built in numeric key order, so equal results serialize to equal bytes.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

from .exceptions import MalformedInput
from .families import parse_family
from .graph import DEFAULT_FUEL, EdgeSlot, LazyGraph, StructuredMultigraph
from .witness import AsiWitness, build_witness_parity


def dumps(doc) -> str:
    return json.dumps(doc, separators=(",", ":"), ensure_ascii=True)


def _load(source):
    """Accept a dict, a JSON string, or a path to a JSON file."""
    if isinstance(source, dict):
        return source
    if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith(("{", "["))):
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise MalformedInput(f"cannot read {source}: {exc}") from exc
    else:
        text = source
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc}") from exc


# -- graphs ---------------------------------------------------------------------


def parse_graph(source, fuel: int = DEFAULT_FUEL):
    """A graph document (dict, JSON text or path) or a ``family:`` URI."""
    if isinstance(source, str) and source.startswith("family:"):
        return parse_family(source, fuel)
    doc = _load(source)
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise MalformedInput("graph document needs a 'vertices' list")
    edges = doc.get("edges", [])
    if not isinstance(edges, list) or not all(isinstance(e, list) and len(e) in (2, 3) for e in edges):
        raise MalformedInput("edges must be [u, v] or [u, v, multiplicity] lists")
    for e in edges:
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in e):
            raise MalformedInput(f"edge record {e} must contain integers")
    verts = doc["vertices"]
    if not isinstance(verts, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in verts):
        raise MalformedInput("vertices must be a list of natural numbers")
    if len(set(verts)) != len(verts):
        raise MalformedInput("vertices must be distinct")
    return StructuredMultigraph(verts, edges, doc.get("predicates") or {}, doc.get("p"))


def graph_doc(G) -> dict:
    if isinstance(G, LazyGraph):
        return {"family": G.uri}
    return G.to_dict()


# -- witnesses ------------------------------------------------------------------


def parse_witness(source, G=None):
    doc = _load(source)
    if not isinstance(doc, dict) or "scale" not in doc:
        raise MalformedInput("witness document needs a 'scale'")
    scale = doc["scale"]
    if not isinstance(scale, int) or scale < 1:
        raise MalformedInput("witness scale must be a positive integer")
    if doc.get("kind") == "parity":
        if G is None:
            raise MalformedInput("a parity witness document needs its graph")
        return build_witness_parity(G, scale, int(doc.get("s", 1)))
    parts = doc.get("parts")
    if not isinstance(parts, list) or not parts:
        raise MalformedInput("witness document needs a non-empty 'parts' list")
    return AsiWitness(scale, parts)


def witness_doc(W) -> dict:
    return W.to_dict()


# -- solutions ------------------------------------------------------------------


def coloring_doc(coloring: dict, kind: str | None = None, extra: dict | None = None) -> dict:
    """``{"colors": ..., "count": n}``; edge colorings list ``[u, v, slot, color]``."""
    if kind is None:
        kind = "edge" if coloring and isinstance(next(iter(coloring)), tuple) else "vertex"
    if kind == "edge":
        colors: Any = [[e[0], e[1], e[2], c] for e, c in sorted(coloring.items())]
    else:
        colors = {str(v): c for v, c in sorted(coloring.items())}
    doc = {"colors": colors, "count": len(set(coloring.values()))}
    if extra:
        doc.update(extra)
    return doc


def matching_doc(edges, extra: dict | None = None) -> dict:
    doc = {"matching": [[u, v] for u, v in edges], "count": len(edges)}
    if extra:
        doc.update(extra)
    return doc


def parse_solution(source, kind: str):
    doc = _load(source)
    if kind == "vertex":
        cols = doc.get("colors")
        if not isinstance(cols, dict):
            raise MalformedInput("vertex solutions need a 'colors' object")
        return {int(v): int(c) for v, c in cols.items()}
    if kind == "edge":
        cols = doc.get("colors")
        if not isinstance(cols, list):
            raise MalformedInput("edge solutions need a 'colors' list of [u, v, slot, color]")
        return {EdgeSlot.of(u, v, s): c for u, v, s, c in cols}
    if kind == "matching":
        return [tuple(e) for e in doc.get("matching", [])]
    raise MalformedInput(f"unknown solution kind {kind!r}")


# -- exchange formats -------------------------------------------------------------


def to_gml(G: StructuredMultigraph, coloring: dict | None = None) -> str:
    """GML text with a ``color`` attribute on vertices or edges."""
    import networkx as nx

    g = nx.MultiGraph()
    for v in G.vertices:
        g.add_node(v)
    for e in G.edge_slots():
        g.add_edge(e.u, e.v, key=e.slot)
    if coloring:
        for item, c in coloring.items():
            if isinstance(item, tuple):
                g.edges[item[0], item[1], item[2]]["color"] = c
            else:
                g.nodes[item]["color"] = c
    return "\n".join(nx.generate_gml(g)) + "\n"


def to_dot(G: StructuredMultigraph, coloring: dict | None = None) -> str:
    coloring = coloring or {}
    lines = ["graph G {"]
    for v in G.vertices:
        c = coloring.get(v)
        lines.append(f"  {v};" if c is None else f'  {v} [label="{v}:{c}" color={c}];')
    for e in G.edge_slots():
        c = coloring.get(e)
        attr = "" if c is None else f' [label="{c}"]'
        lines.append(f"  {e.u} -- {e.v}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- manifests ----------------------------------------------------------------------


@dataclass
class RunManifest:
    """Everything needed to reproduce one run.

    ``graph`` is a path, a ``family:`` URI, or ``{"generate": kind,
    "params": {...}}`` (drawn with ``seed``).  ``witness`` is a path, a
    witness document, or ``None`` for the parity witness at ``scale``.
    """

    graph: Any
    algorithm: str
    params: dict = field(default_factory=dict)
    witness: Any = None
    scale: int | None = None
    s: int = 1
    stages: int | None = None
    target: list | None = None
    seed: int = 0
    fuel: int = DEFAULT_FUEL
    time_budget: float | None = None
    out: str | None = None

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, doc: dict) -> "RunManifest":
        known = set(cls.__dataclass_fields__)
        unknown = set(doc) - known
        if unknown:
            raise MalformedInput(f"unknown manifest fields: {', '.join(sorted(unknown))}")
        if "graph" not in doc or "algorithm" not in doc:
            raise MalformedInput("a manifest needs 'graph' and 'algorithm'")
        return cls(**doc)

    @classmethod
    def load(cls, source) -> "RunManifest":
        return cls.from_dict(_load(source))


def resolve_graph(spec, seed: int = 0, fuel: int = DEFAULT_FUEL):
    if isinstance(spec, dict) and "generate" in spec:
        from .generators import generate

        return generate(spec["generate"], spec.get("params") or {}, seed)
    return parse_graph(spec, fuel)
