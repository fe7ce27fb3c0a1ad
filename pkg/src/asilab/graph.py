"""Finite and lazily presented structured multigraphs.

Vertices are always naturals and their numeric order is the linear order
that makes local structures rigid.  Both graph kinds expose the same small
read-only surface (``neighbors``, ``degree``, ``has_vertex``) so the metric
helpers below work on either.
"""
from __future__ import annotations

import os
import threading
from collections import deque
from typing import Callable, Iterable, Iterator, Mapping, NamedTuple

from .exceptions import FuelExhausted, MalformedInput

DEFAULT_FUEL = int(os.environ.get("ASILAB_FUEL", 10**6))


class EdgeSlot(NamedTuple):
    """One parallel copy of the edge ``{u, v}``; always ``u < v``."""

    u: int
    v: int
    slot: int = 0

    @classmethod
    def of(cls, a: int, b: int, slot: int = 0) -> "EdgeSlot":
        return cls(a, b, slot) if a < b else cls(b, a, slot)


class FuelMeter:
    """Counts vertex visits against a budget; ``limit=None`` is unlimited."""

    def __init__(self, limit: int | None = DEFAULT_FUEL):
        self.limit = limit
        self.used = 0
        self._lock = threading.Lock()

    def consume(self, amount: int = 1, partial=None) -> None:
        with self._lock:
            self.used += amount
            over = self.limit is not None and self.used > self.limit
        if over:
            raise FuelExhausted(
                f"exploration budget of {self.limit} vertices exhausted",
                consumed=self.used,
                partial=partial,
            )

    @property
    def remaining(self) -> int | None:
        return None if self.limit is None else max(self.limit - self.used, 0)


class StructuredMultigraph:
    """Immutable finite multigraph on naturals with unary predicates.

    Parameters
    ----------
    vertices : iterable of int
    edges : iterable of (u, v) or (u, v, multiplicity)
        At most one record per unordered pair.
    predicates : mapping of name to vertex collection, optional
    max_multiplicity : int, optional
        Declared bound ``p``; records above it are rejected.
    """

    is_finite = True

    def __init__(
        self,
        vertices: Iterable[int] = (),
        edges: Iterable = (),
        predicates: Mapping[str, Iterable[int]] | None = None,
        max_multiplicity: int | None = None,
    ):
        verts = sorted(set(int(v) for v in vertices))
        if verts and verts[0] < 0:
            raise MalformedInput(f"vertex {verts[0]} is not a natural number")
        self._vertices = tuple(verts)
        vset = set(verts)
        adj: dict[int, dict[int, int]] = {v: {} for v in verts}
        for rec in edges:
            if len(rec) == 2:
                u, v, m = int(rec[0]), int(rec[1]), 1
            elif len(rec) == 3:
                u, v, m = (int(x) for x in rec)
            else:
                raise MalformedInput(f"bad edge record {rec!r}")
            if u == v:
                raise MalformedInput(f"loop at vertex {u}")
            if u not in vset or v not in vset:
                raise MalformedInput(f"edge ({u}, {v}) has an endpoint outside the vertex set")
            if m < 1:
                raise MalformedInput(f"edge ({u}, {v}) has multiplicity {m}")
            if max_multiplicity is not None and m > max_multiplicity:
                raise MalformedInput(
                    f"edge ({u}, {v}) has multiplicity {m} > bound {max_multiplicity}"
                )
            if v in adj[u]:
                raise MalformedInput(f"duplicate record for pair ({u}, {v})")
            adj[u][v] = m
            adj[v][u] = m
        self._adj = {v: dict(sorted(nb.items())) for v, nb in adj.items()}
        self._nbr_cache = {v: tuple(nb.items()) for v, nb in self._adj.items()}
        preds = {}
        for name, members in (predicates or {}).items():
            ms = frozenset(int(x) for x in members)
            if not ms <= vset:
                raise MalformedInput(f"predicate {name!r} names unknown vertices")
            preds[str(name)] = ms
        self._predicates = dict(sorted(preds.items()))
        self.max_multiplicity_bound = max_multiplicity

    # -- read-only surface shared with LazyGraph ---------------------------
    @property
    def fuel(self):
        return None

    def has_vertex(self, v: int) -> bool:
        return v in self._adj

    def neighbors(self, v: int) -> tuple[tuple[int, int], ...]:
        """Sorted ``(neighbor, multiplicity)`` pairs."""
        return self._nbr_cache[v]

    def neighbor_set(self, v: int):
        return self._adj[v].keys()

    def degree(self, v: int) -> int:
        return sum(self._adj[v].values())

    # -- finite-only accessors --------------------------------------------
    @property
    def vertices(self) -> tuple[int, ...]:
        return self._vertices

    @property
    def predicates(self) -> dict[str, frozenset]:
        return dict(self._predicates)

    def __len__(self) -> int:
        return len(self._vertices)

    def __iter__(self) -> Iterator[int]:
        return iter(self._vertices)

    def __contains__(self, v) -> bool:
        return v in self._adj

    def multiplicity(self, u: int, v: int) -> int:
        return self._adj.get(u, {}).get(v, 0)

    def edges(self) -> list[tuple[int, int, int]]:
        """Edge records ``(u, v, multiplicity)`` with ``u < v``, sorted."""
        return [(u, v, m) for u in self._vertices for v, m in self._adj[u].items() if u < v]

    def edge_slots(self) -> list[EdgeSlot]:
        return [EdgeSlot(u, v, s) for u, v, m in self.edges() for s in range(m)]

    def incident_slots(self, v: int) -> list[EdgeSlot]:
        return [EdgeSlot.of(v, w, s) for w, m in self._adj[v].items() for s in range(m)]

    @property
    def n_edges(self) -> int:
        return sum(m for _, _, m in self.edges())

    @property
    def max_degree(self) -> int:
        return max((self.degree(v) for v in self._vertices), default=0)

    @property
    def max_multiplicity(self) -> int:
        return max((m for _, _, m in self.edges()), default=0)

    def relabel(self, mapping: Mapping[int, int]) -> "StructuredMultigraph":
        """Rename vertices through an injective map."""
        return StructuredMultigraph(
            (mapping[v] for v in self._vertices),
            ((mapping[u], mapping[v], m) for u, v, m in self.edges()),
            {k: (mapping[v] for v in s) for k, s in self._predicates.items()},
            self.max_multiplicity_bound,
        )

    def to_dict(self) -> dict:
        doc = {
            "vertices": list(self._vertices),
            "edges": [list(e) for e in self.edges()],
        }
        if self._predicates:
            doc["predicates"] = {k: sorted(s) for k, s in self._predicates.items()}
        return doc

    def to_networkx(self):
        import networkx as nx

        g = nx.MultiGraph()
        g.add_nodes_from(self._vertices)
        for u, v, m in self.edges():
            for _ in range(m):
                g.add_edge(u, v)
        return g

    def _key(self):
        return (self._vertices, tuple(self.edges()), tuple(self._predicates.items()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, StructuredMultigraph):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"StructuredMultigraph(n={len(self)}, edges={self.n_edges})"


class LazyGraph:
    """Infinite, locally finite graph presented by neighbor and degree oracles.

    The oracles must be pure; ``degree(v)`` must equal the multiplicity
    weighted length of ``neighbors(v)``.
    """

    is_finite = False

    def __init__(
        self,
        family: str,
        params: Mapping,
        neighbor_oracle: Callable[[int], tuple[tuple[int, int], ...]],
        degree_oracle: Callable[[int], int],
        fuel: int = DEFAULT_FUEL,
    ):
        self.family = family
        self.params = dict(params)
        self._neighbors = neighbor_oracle
        self._degree = degree_oracle
        self.fuel = fuel

    def has_vertex(self, v: int) -> bool:
        return isinstance(v, int) and v >= 0

    def neighbors(self, v: int) -> tuple[tuple[int, int], ...]:
        return self._neighbors(v)

    def neighbor_set(self, v: int):
        return [w for w, _ in self._neighbors(v)]

    def degree(self, v: int) -> int:
        return self._degree(v)

    def multiplicity(self, u: int, v: int) -> int:
        return dict(self._neighbors(u)).get(v, 0)

    @property
    def uri(self) -> str:
        if not self.params:
            return f"family:{self.family}"
        q = "&".join(f"{k}={_fmt_param(v)}" for k, v in sorted(self.params.items()))
        return f"family:{self.family}?{q}"

    def __repr__(self) -> str:
        return f"LazyGraph({self.uri!r})"


def _fmt_param(v) -> str:
    if isinstance(v, (tuple, list)):
        return ".".join(str(x) for x in v)
    return str(v)


Graph = StructuredMultigraph | LazyGraph


def _meter_for(G, meter: FuelMeter | None) -> FuelMeter | None:
    if meter is not None:
        return meter
    if G.is_finite:
        return None
    return FuelMeter(G.fuel)


# -- metric ---------------------------------------------------------------


def distance(G, x: int, y: int, cap: int | None = None, meter: FuelMeter | None = None):
    """Path distance ignoring multiplicities.

    Returns ``None`` when no path of length at most ``cap`` exists (or, on a
    finite graph with ``cap=None``, when ``y`` is unreachable).
    """
    if not G.is_finite and cap is None:
        raise ValueError("a cap is mandatory on lazy graphs")
    for v in (x, y):
        if not G.has_vertex(v):
            raise KeyError(v)
    if x == y:
        return 0
    meter = _meter_for(G, meter)
    seen = {x}
    frontier = [x]
    d = 0
    while frontier and (cap is None or d < cap):
        d += 1
        nxt = []
        for u in frontier:
            if meter is not None:
                meter.consume()
            for w in G.neighbor_set(u):
                if w == y:
                    return d
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return None


def distances_from(G, sources: Iterable[int], radius: int | None = None, meter=None) -> dict[int, int]:
    """Multi-source BFS distances, truncated at ``radius``."""
    if not G.is_finite and radius is None:
        raise ValueError("a radius is mandatory on lazy graphs")
    meter = _meter_for(G, meter)
    dist = {s: 0 for s in sources}
    queue = deque(dist)
    while queue:
        u = queue.popleft()
        du = dist[u]
        if radius is not None and du >= radius:
            continue
        if meter is not None:
            meter.consume()
        for w in G.neighbor_set(u):
            if w not in dist:
                dist[w] = du + 1
                queue.append(w)
    return dist


def ball(G, X: Iterable[int], r: int, meter: FuelMeter | None = None) -> frozenset:
    """All vertices within distance ``r`` of the set ``X``."""
    return frozenset(distances_from(G, X, r, meter))


def set_distance(G, X: Iterable[int], Y: Iterable[int], cap: int | None = None, meter=None):
    """Distance between two vertex sets, or ``None`` beyond ``cap``."""
    Y = set(Y)
    dist = distances_from(G, X, cap, meter)
    hits = [d for v, d in dist.items() if v in Y]
    return min(hits) if hits else None


def power_component(
    G,
    seed: int,
    member: Callable[[int], bool],
    r: int,
    meter: FuelMeter | None = None,
) -> frozenset:
    """The component of ``seed`` in ``G^r`` restricted to ``{v : member(v)}``.

    Distances are measured in the full graph.  On lazy graphs this raises
    :class:`FuelExhausted` if closure is not reached within the budget,
    which is how a potentially infinite component shows up.
    """
    if r < 1:
        raise ValueError("scale must be at least 1")
    meter = _meter_for(G, meter)
    comp = {seed}
    queue = deque([seed])
    while queue:
        u = queue.popleft()
        try:
            near = distances_from(G, (u,), r, meter)
        except FuelExhausted as exc:
            exc.partial = frozenset(comp)
            raise
        for w in near:
            if w not in comp and member(w):
                comp.add(w)
                queue.append(w)
    return frozenset(comp)


def power_components(G, X: Iterable[int], r: int, meter: FuelMeter | None = None) -> list[frozenset]:
    """Connected components of ``G^r`` restricted to ``X``, ordered by least vertex."""
    X = frozenset(X)
    seen: set[int] = set()
    comps = []
    for x in sorted(X):
        if x in seen:
            continue
        comp = power_component(G, x, X.__contains__, r, meter)
        seen |= comp
        comps.append(comp)
    return comps


def components(G, X: Iterable[int] | None = None) -> list[frozenset]:
    """Connected components of ``G`` restricted to ``X`` (finite)."""
    if X is None:
        X = G.vertices
    return power_components(G, X, 1)


def graph_power(G: StructuredMultigraph, r: int) -> dict[int, frozenset]:
    """Adjacency of ``G^r``: each vertex maps to the others within distance ``r``."""
    return {v: ball(G, (v,), r) - {v} for v in G.vertices}


# -- restriction ------------------------------------------------------------


def induced(G, X: Iterable[int], meter: FuelMeter | None = None) -> StructuredMultigraph:
    """Restriction of ``G`` (finite or lazy) to the finite vertex set ``X``."""
    X = frozenset(X)
    meter = _meter_for(G, meter)
    edges = []
    for u in sorted(X):
        if meter is not None:
            meter.consume()
        for w, m in G.neighbors(u):
            if u < w and w in X:
                edges.append((u, w, m))
    preds = {}
    if G.is_finite:
        preds = {k: s & X for k, s in G.predicates.items()}
    return StructuredMultigraph(X, edges, preds)


def edge_subgraph(G: StructuredMultigraph, slots: Iterable[EdgeSlot], keep_vertices: bool = False) -> StructuredMultigraph:
    """Multigraph formed by a set of edge slots.

    Multiplicities are recounted from the slots kept, so keeping one slot
    of a double edge yields a simple edge.  Vertices are the endpoints of
    the kept slots unless ``keep_vertices`` is set.
    """
    count: dict[tuple[int, int], int] = {}
    for e in slots:
        e = EdgeSlot.of(*e)
        if e.slot >= G.multiplicity(e.u, e.v):
            raise KeyError(e)
        count[(e.u, e.v)] = count.get((e.u, e.v), 0) + 1
    verts = set(G.vertices) if keep_vertices else {v for pair in count for v in pair}
    preds = {k: s & verts for k, s in G.predicates.items()}
    return StructuredMultigraph(verts, [(u, v, m) for (u, v), m in count.items()], preds)


def from_networkx(g) -> StructuredMultigraph:
    """Convert a networkx (multi)graph with natural-number nodes."""
    count: dict[tuple[int, int], int] = {}
    for a, b in g.edges():
        if a == b:
            raise MalformedInput(f"loop at vertex {a}")
        key = (min(a, b), max(a, b))
        count[key] = count.get(key, 0) + 1
    return StructuredMultigraph(g.nodes(), [(u, v, m) for (u, v), m in count.items()])
