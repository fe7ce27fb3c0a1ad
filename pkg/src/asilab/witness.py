"""ASI witnesses: partitions whose pieces have only finite ``G^r`` components.

A witness with ``s + 1`` parts and scale ``r`` is stored either explicitly
(finite graphs) or intensionally through a membership function (lazy
graphs, where global validity can only ever be certified per probe).
"""
from __future__ import annotations

import heapq
import threading
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from sklearn.base import BaseEstimator, TransformerMixin

from .exceptions import InvalidWitness, MalformedInput
from .graph import FuelMeter, _meter_for, ball, distances_from, power_component, power_components


class AsiWitness:
    """Explicit witness: a scale and a tuple of vertex sets ``U_0 .. U_s``.

    Construction does not check that the parts partition anything; use
    :func:`validate_witness` for that.
    """

    kind = "explicit"

    def __init__(self, scale: int, parts: Iterable[Iterable[int]], potential: dict | None = None):
        if int(scale) < 1:
            raise MalformedInput("witness scale must be at least 1")
        self.scale = int(scale)
        self.parts = tuple(frozenset(int(v) for v in p) for p in parts)
        if not self.parts:
            raise MalformedInput("a witness needs at least one part")
        self._index = {}
        for i, p in enumerate(self.parts):
            for v in p:
                self._index.setdefault(v, i)
        # g-values when built by the parity construction, for inspection
        self.potential = potential

    @property
    def n_parts(self) -> int:
        return len(self.parts)

    @property
    def s(self) -> int:
        return len(self.parts) - 1

    def part_of(self, v: int) -> int:
        return self._index[v]

    def member(self, i: int):
        return self.parts[i].__contains__

    def restrict(self, X: Iterable[int]) -> "AsiWitness":
        X = frozenset(X)
        return AsiWitness(self.scale, (p & X for p in self.parts))

    def relabel(self, mapping) -> "AsiWitness":
        return AsiWitness(self.scale, ((mapping[v] for v in p) for p in self.parts))

    def to_dict(self) -> dict:
        return {"scale": self.scale, "parts": [sorted(p) for p in self.parts]}

    def __eq__(self, other):
        if not isinstance(other, AsiWitness):
            return NotImplemented
        return self.scale == other.scale and self.parts == other.parts

    def __hash__(self):
        return hash((self.scale, self.parts))

    def __repr__(self):
        sizes = ", ".join(str(len(p)) for p in self.parts)
        return f"AsiWitness(scale={self.scale}, part_sizes=[{sizes}])"


class LazyParityWitness:
    """Parity witness over a lazy graph, evaluated vertex by vertex.

    ``part_of(x)`` is ``g(x) mod (s + 1)`` where ``g(x)`` is the least value
    of ``y + rho_{G^r}(x, y)``.  Values are memoized under a lock, so
    concurrent callers see identical answers.
    """

    kind = "parity"

    def __init__(self, graph, scale: int, s: int = 1, fuel: int | None = None):
        if scale < 1 or s < 1:
            raise MalformedInput("parity witnesses need scale >= 1 and s >= 1")
        self.graph = graph
        self.scale = scale
        self._s = s
        self.fuel = graph.fuel if fuel is None else fuel
        self._search = _ParitySearch(graph, scale)
        self._lock = threading.Lock()

    @property
    def n_parts(self) -> int:
        return self._s + 1

    @property
    def s(self) -> int:
        return self._s

    def label(self, x: int, meter: FuelMeter | None = None) -> tuple[int, int]:
        """``(f(x), g(x))`` for vertex ``x``."""
        with self._lock:
            return self._search.label(x, meter or FuelMeter(self.fuel))

    def part_of(self, v: int, meter: FuelMeter | None = None) -> int:
        return self.label(v, meter)[1] % (self._s + 1)

    def member(self, i: int, meter: FuelMeter | None = None):
        return lambda v: self.part_of(v, meter) == i

    def materialize(self, X: Iterable[int], meter: FuelMeter | None = None) -> AsiWitness:
        """Explicit witness on a finite vertex set (for local views)."""
        parts = [set() for _ in range(self.n_parts)]
        for v in X:
            parts[self.part_of(v, meter)].add(v)
        return AsiWitness(self.scale, parts)

    def to_dict(self) -> dict:
        return {"scale": self.scale, "kind": "parity", "s": self._s}

    def __repr__(self):
        return f"LazyParityWitness({self.graph!r}, scale={self.scale}, s={self._s})"


# -- the parity construction ----------------------------------------------


def parity_label(G, x: int, r: int, meter: FuelMeter | None = None) -> tuple[int, int]:
    """Least ``y`` minimizing ``y + rho_{G^r}(x, y)``, and that minimum.

    Only ``y`` with ``y + rho(x, y) <= x`` can beat ``y = x``, so the
    breadth-first search stops once the ``G^r`` depth exceeds the best
    value found so far.
    """
    meter = _meter_for(G, meter)
    best_y, best = x, x
    seen = {x}
    frontier = [x]
    gdepth = 0
    while frontier:
        gdepth += 1
        hdepth = -(-gdepth // r)
        if hdepth > best:
            break
        nxt = []
        for u in frontier:
            if meter is not None:
                meter.consume()
            for w in G.neighbor_set(u):
                if w in seen:
                    continue
                seen.add(w)
                nxt.append(w)
                val = w + hdepth
                if val < best or (val == best and w < best_y):
                    best, best_y = val, w
        frontier = nxt
    return best_y, best


class _ParitySearch:
    """Resumable search assigning ``(f, g)`` labels in increasing ``(g, f)`` order.

    Works in ``G`` rather than ``G^r``.  A state is ``(v, slack)`` where
    ``slack`` counts the ``G``-steps left before the ``G^r`` distance grows,
    and carries the least ``(value, source)`` reaching it.  Two candidates
    with equal slack evolve identically, so keeping the least one per state
    is exact.  Sources ``y`` (label ``(y, y)``, slack 0) enter only once the
    queue reaches value ``y``.  Settled labels are final, so later queries
    resume where earlier ones stopped.
    """

    def __init__(self, G, r: int):
        self.G = G
        self.r = r
        self.best: dict[tuple[int, int], tuple[int, int]] = {}
        self.done: set[tuple[int, int]] = set()
        self.settled: dict[int, tuple[int, int]] = {}
        self.heap: list[tuple[int, int, int, int]] = []
        self.next_source = 0

    def _offer(self, v: int, slack: int, val: int, y: int) -> None:
        state = (v, slack)
        if state not in self.done and (val, y) < self.best.get(state, (val + 1, y)):
            self.best[state] = (val, y)
            heapq.heappush(self.heap, (val, y, v, slack))

    def label(self, x: int, meter: FuelMeter | None) -> tuple[int, int]:
        while x not in self.settled:
            while self.next_source <= x and (not self.heap or self.next_source <= self.heap[0][0]):
                self._offer(self.next_source, 0, self.next_source, self.next_source)
                self.next_source += 1
            val, y, v, slack = self.heap[0]
            if (v, slack) in self.done or self.best.get((v, slack)) != (val, y):
                heapq.heappop(self.heap)
                continue
            if meter is not None:
                meter.consume()
            nbrs = self.G.neighbor_set(v)
            heapq.heappop(self.heap)
            self.done.add((v, slack))
            self.settled.setdefault(v, (y, val))
            for w in nbrs:
                if slack:
                    self._offer(w, slack - 1, val, y)
                else:
                    self._offer(w, self.r - 1, val + 1, y)
        return self.settled[x]


def _parity_labels_finite(G, r: int) -> dict[int, tuple[int, int]]:
    """All ``(f, g)`` labels at once by label propagation over ``G^r``.

    Every vertex starts with the label ``(y, y)``; a ``G^r`` step adds one to
    the value.  Comparing ``(value, y)`` lexicographically realizes the
    least-``y`` tie-break.
    """
    best = {v: (v, v) for v in G.vertices}
    heap = [(v, v, v) for v in G.vertices]
    heapq.heapify(heap)
    done = set()
    power = {}
    while heap:
        val, y, u = heapq.heappop(heap)
        if u in done or best[u] != (val, y):
            continue
        done.add(u)
        near = power.get(u)
        if near is None:
            near = power[u] = distances_from(G, (u,), r)
        cand = (val + 1, y)
        for w in near:
            if w != u and w not in done and cand < best[w]:
                best[w] = cand
                heapq.heappush(heap, (val + 1, y, w))
    return {v: (y, val) for v, (val, y) in best.items()}


def build_witness_parity(G, r: int, s: int = 1, fuel: int | None = None):
    """ASI-``s`` witness with scale ``r`` from the parity construction.

    ``U_i = {x : g(x) = i mod (s+1)}``.  Since ``g`` changes by at most one
    along a ``G^r`` edge, it is constant on each part's components for any
    ``s >= 1``, so the residue classes form a valid witness; ``s = 1`` is
    the usual parity split.
    """
    if r < 1:
        raise MalformedInput("scale must be at least 1")
    if s < 1:
        raise MalformedInput("parity witnesses have s >= 1")
    if not G.is_finite:
        return LazyParityWitness(G, r, s, fuel)
    labels = _parity_labels_finite(G, r)
    parts = [set() for _ in range(s + 1)]
    for v, (_, g) in labels.items():
        parts[g % (s + 1)].add(v)
    return AsiWitness(r, parts, potential={v: g for v, (_, g) in labels.items()})


def pad_witness(W, s_new: int):
    """Append empty parts so the witness has ``s_new + 1`` parts."""
    if s_new < W.s:
        raise ValueError(f"cannot pad an ASI-{W.s} witness down to s={s_new}")
    if not isinstance(W, AsiWitness):
        raise TypeError("only explicit witnesses can be padded")
    return AsiWitness(W.scale, list(W.parts) + [()] * (s_new - W.s), W.potential)


# -- validation and the component graph -------------------------------------


@dataclass(frozen=True, order=True)
class Component:
    """One ``G^r``-component of a witness part, keyed by its least vertex."""

    key: int
    part: int
    vertices: frozenset = field(compare=False)

    @classmethod
    def make(cls, part: int, vertices) -> "Component":
        vs = frozenset(vertices)
        return cls(min(vs), part, vs)


@dataclass
class WitnessReport:
    valid: bool
    components: dict  # probe vertex -> Component
    fuel_used: int = 0


def _check_partition(G, W) -> None:
    if not isinstance(W, AsiWitness):
        return
    seen: dict[int, int] = {}
    for i, part in enumerate(W.parts):
        for v in part:
            if v in seen:
                raise InvalidWitness(f"not a partition: vertex {v} lies in parts {seen[v]} and {i}")
            if G.is_finite and v not in G:
                raise InvalidWitness(f"not a partition: part {i} names unknown vertex {v}")
            seen[v] = i
    if G.is_finite:
        missing = [v for v in G.vertices if v not in seen]
        if missing:
            raise InvalidWitness(f"not a partition: vertex {missing[0]} lies in no part")


def validate_witness(G, W, probe: Iterable[int] | None = None, fuel: int | None = None) -> WitnessReport:
    """Certify that the parts partition ``V(G)`` and probed components are finite.

    On finite graphs ``probe`` defaults to every vertex.  On lazy graphs a
    probe set is required and each probed component must close within
    ``fuel``; exhaustion raises :class:`FuelExhausted`, which means
    "unverifiable", not "invalid".
    """
    _check_partition(G, W)
    if probe is None:
        if not G.is_finite:
            raise ValueError("lazy witnesses are certified per probe; pass probe=")
        probe = G.vertices
    meter = FuelMeter(fuel) if fuel is not None else _meter_for(G, None)
    found: dict[int, Component] = {}
    for x in probe:
        if x in found:
            continue
        if not G.has_vertex(x):
            raise InvalidWitness(f"probe vertex {x} is not in the graph")
        i = _part(W, x, meter)
        comp = power_component(G, x, _member(W, i, meter), W.scale, meter)
        c = Component.make(i, comp)
        for v in comp:
            found[v] = c
    used = meter.used if meter is not None else 0
    return WitnessReport(True, {x: found[x] for x in probe}, used)


def _part(W, v, meter=None) -> int:
    if isinstance(W, LazyParityWitness):
        return W.part_of(v, meter)
    try:
        return W.part_of(v)
    except KeyError:
        raise InvalidWitness(f"not a partition: vertex {v} lies in no part") from None


def _member(W, i, meter=None):
    if isinstance(W, LazyParityWitness):
        return W.member(i, meter)
    return W.member(i)


@dataclass
class ComponentGraph:
    """The graph whose nodes are witness components, adjacent within distance ``r``.

    For lazy graphs this is a fragment: nodes at depth ``< radius`` from
    the centre have all their neighbors present (``interior``).
    """

    components: list[Component]
    adjacency: dict[int, frozenset]  # component key -> neighbor keys
    interior: frozenset | None = None

    def __post_init__(self):
        self.by_key = {c.key: c for c in self.components}
        self.owner = {v: c.key for c in self.components for v in c.vertices}

    def component_of(self, v: int) -> Component:
        return self.by_key[self.owner[v]]

    def ball(self, key: int, n: int) -> dict[int, int]:
        """Component keys within ``n`` steps of ``key``, with their depths."""
        depth = {key: 0}
        queue = deque([key])
        while queue:
            k = queue.popleft()
            if depth[k] >= n:
                continue
            for j in self.adjacency[k]:
                if j not in depth:
                    depth[j] = depth[k] + 1
                    queue.append(j)
        return depth

    def __len__(self):
        return len(self.components)


def _neighbors_of(G, W, comp: Component, lookup, meter) -> set[int]:
    out = set()
    for v in ball(G, comp.vertices, W.scale, meter):
        if v not in comp.vertices:
            out.add(lookup(v))
    return out


def component_graph(G, W, around: int | None = None, radius: int | None = None, fuel: int | None = None) -> ComponentGraph:
    """Realize the component graph (whole, or a ball around ``around``).

    On finite graphs with ``around=None`` the whole graph is built.
    Otherwise a breadth-first fragment of the given radius is returned.
    """
    meter = FuelMeter(fuel) if fuel is not None else _meter_for(G, None)
    if G.is_finite and around is None:
        _check_partition(G, W)
        comps = []
        for i, part in enumerate(W.parts):
            comps.extend(Component.make(i, c) for c in power_components(G, part, W.scale))
        comps.sort()
        owner = {v: c.key for c in comps for v in c.vertices}
        adjacency = {c.key: frozenset(_neighbors_of(G, W, c, owner.__getitem__, None)) for c in comps}
        return ComponentGraph(comps, adjacency)

    if around is None or radius is None:
        raise ValueError("lazy component graphs need around= and radius=")
    cache: dict[int, Component] = {}

    def lookup_comp(v) -> Component:
        if v in cache:
            return cache[v]
        i = _part(W, v, meter)
        c = Component.make(i, power_component(G, v, _member(W, i, meter), W.scale, meter))
        for u in c.vertices:
            cache[u] = c
        return c

    start = lookup_comp(around)
    depth = {start.key: 0}
    nodes = {start.key: start}
    adjacency: dict[int, frozenset] = {}
    queue = deque([start])
    while queue:
        c = queue.popleft()
        if depth[c.key] >= radius:
            continue
        nbrs = _neighbors_of(G, W, c, lambda v: lookup_comp(v).key, meter)
        adjacency[c.key] = frozenset(nbrs)
        for k in sorted(nbrs):
            if k not in depth:
                depth[k] = depth[c.key] + 1
                nodes[k] = cache[k]
                queue.append(nodes[k])
    interior = frozenset(adjacency)
    for k in nodes:
        adjacency[k] = frozenset(j for j in adjacency.get(k, ()) if j in nodes) if k in interior else frozenset(
            j for j in nodes if k in adjacency.get(j, ())
        )
    return ComponentGraph(sorted(nodes.values()), adjacency, interior)


class ParityWitness(BaseEstimator, TransformerMixin):
    """Estimator front-end for :func:`build_witness_parity`.

    ``fit(G)`` stores ``witness_``; ``transform(vertices)`` returns their
    part indices (for lazy graphs, evaluated on demand).
    """

    def __init__(self, scale: int = 1, s: int = 1, fuel: int | None = None):
        self.scale = scale
        self.s = s
        self.fuel = fuel

    def fit(self, G, y=None):
        from .validation import check_graph, check_positive

        G = check_graph(G)
        check_positive("scale", self.scale)
        check_positive("s", self.s)
        self.witness_ = build_witness_parity(G, self.scale, self.s, self.fuel)
        self.graph_ = G
        return self

    def transform(self, X=None):
        if not hasattr(self, "witness_"):
            from sklearn.exceptions import NotFittedError

            raise NotFittedError("ParityWitness is not fitted yet; call fit first")
        if X is None:
            if not self.graph_.is_finite:
                raise ValueError("lazy graphs need an explicit vertex list")
            X = self.graph_.vertices
        return [self.witness_.part_of(int(v)) for v in X]

    def fit_transform(self, G, y=None, X=None):
        return self.fit(G).transform(X)
