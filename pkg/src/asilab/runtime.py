"""Running ASI algorithms: local views, canonical forms and assembly.

A component ``C`` is colored by looking only at the union ``W`` of the
witness components within component-graph distance ``n`` of ``C``.  The
view is renamed to ``0 .. |W|-1`` by rank, the algorithm is applied to that
canonical structure, and the answer is pulled back.  Because the order is
part of the structure, two views have the same canonical form exactly when
they are isomorphic as ordered structures, so algorithms are automatically
equivariant.
"""
from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable

from .exceptions import AlgorithmFailure, AsiError
from .graph import EdgeSlot, FuelMeter, StructuredMultigraph, induced
from .witness import AsiWitness, Component, ComponentGraph, component_graph


@dataclass(frozen=True)
class LocalView:
    """The radius-``n`` neighborhood of ``focus`` in the component graph."""

    focus: Component
    n: int
    vertices: frozenset
    graph: StructuredMultigraph
    parts: tuple
    scale: int
    components: tuple  # Components in the view, with their depth from focus
    depth: dict


@dataclass(frozen=True)
class CanonicalStructure:
    """A view renamed to ``0 .. |W|-1`` by rank.

    ``inverse[i]`` is the original name of canonical vertex ``i``.
    """

    graph: StructuredMultigraph
    parts: tuple
    scale: int
    focus: frozenset
    focus_part: int
    inverse: tuple

    @property
    def key(self) -> tuple:
        """Identity of the ordered structure, focus excluded."""
        return (self.graph._key(), self.parts, self.scale)

    @property
    def witness(self) -> AsiWitness:
        return AsiWitness(self.scale, self.parts)

    def to_dict(self) -> dict:
        return {
            "graph": self.graph.to_dict(),
            "witness": {"scale": self.scale, "parts": [sorted(p) for p in self.parts]},
            "focus": sorted(self.focus),
            "focus_part": self.focus_part,
        }


def _view_from(G, W, cg: ComponentGraph, focus: Component, n: int, meter=None) -> LocalView:
    depth = cg.ball(focus.key, n)
    comps = tuple(sorted(cg.by_key[k] for k in depth))
    verts = frozenset().union(*(c.vertices for c in comps))
    parts = [set() for _ in range(W.n_parts)]
    for c in comps:
        parts[c.part] |= c.vertices
    return LocalView(
        focus=focus,
        n=n,
        vertices=verts,
        graph=induced(G, verts, meter),
        parts=tuple(frozenset(p) for p in parts),
        scale=W.scale,
        components=comps,
        depth=depth,
    )


def local_view(G, W, C, n: int, fuel: int | None = None) -> LocalView:
    """The view ``W`` of component ``C`` (a Component or any vertex of one)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    seed = C.key if isinstance(C, Component) else int(C)
    if G.is_finite:
        cg = component_graph(G, W)
    else:
        cg = component_graph(G, W, around=seed, radius=n, fuel=fuel)
    return _view_from(G, W, cg, cg.component_of(seed), n)


def canonicalize(view: LocalView) -> CanonicalStructure:
    order = sorted(view.vertices)
    rank = {v: i for i, v in enumerate(order)}
    return CanonicalStructure(
        graph=view.graph.relabel(rank),
        parts=tuple(frozenset(rank[v] for v in p) for p in view.parts),
        scale=view.scale,
        focus=frozenset(rank[v] for v in view.focus.vertices),
        focus_part=view.focus.part,
        inverse=tuple(order),
    )


# -- algorithms -------------------------------------------------------------


class AsiAlgorithm:
    """An algorithm on canonical structures with a declared stage count.

    Subclasses implement :meth:`solve`, a computation on the whole finite
    view graph, and :meth:`stages`.  :meth:`apply` returns the focus part
    of the answer; whole-view answers are cached by structure, so views
    shared by several components are solved once.
    """

    name = "abstract"
    output = "vertex"  # or "edge"

    def __init__(self):
        self._cache: dict = {}
        self._lock = threading.Lock()

    def stages(self, W) -> int:
        raise NotImplementedError

    def min_scale(self) -> int:
        return 1

    def solve(self, G: StructuredMultigraph, W: AsiWitness) -> dict:
        raise NotImplementedError

    def apply(self, H: CanonicalStructure) -> dict:
        key = H.key
        with self._lock:
            full = self._cache.get(key)
        if full is None:
            full = self.solve(H.graph, H.witness)
            with self._lock:
                self._cache[key] = full
        return {item: c for item, c in full.items() if owner(item) in H.focus}

    def __call__(self, H: CanonicalStructure) -> dict:
        return self.apply(H)


def owner(item) -> int:
    """The vertex responsible for an output item: itself, or an edge's lower end."""
    if isinstance(item, tuple):
        return item[0]
    return item


class ConstantAlgorithm(AsiAlgorithm):
    """Every vertex gets the same color; useful as a runtime smoke test."""

    name = "constant"

    def __init__(self, color: int = 0):
        super().__init__()
        self.color = color

    def stages(self, W) -> int:
        return 0

    def solve(self, G, W):
        return {v: self.color for v in G.vertices}


def _pull_back(item, inverse):
    if isinstance(item, EdgeSlot):
        return EdgeSlot.of(inverse[item.u], inverse[item.v], item.slot)
    if isinstance(item, tuple):
        return tuple(inverse[x] for x in item)
    return inverse[item]


def run_asi(
    alg: AsiAlgorithm | Callable,
    G,
    W,
    n: int | None = None,
    target: Iterable[int] | None = None,
    fuel: int | None = None,
    workers: int = 1,
) -> dict:
    """Color every component meeting ``target`` from its radius-``n`` view.

    ``target`` defaults to all vertices of a finite graph and is required
    on lazy graphs.  Output keys are vertices, or edge slots owned by their
    lower endpoint.  Each component is solved independently, optionally on
    a thread pool; the answer does not depend on scheduling.
    """
    if n is None:
        if not isinstance(alg, AsiAlgorithm):
            raise ValueError("plain callables need an explicit stage count n")
        n = alg.stages(W)
    if target is None:
        if not G.is_finite:
            raise ValueError("lazy graphs need a finite target set")
        target = G.vertices
    target = sorted(set(target))

    if G.is_finite:
        cg = component_graph(G, W)
        focus = sorted({cg.component_of(v) for v in target})
        jobs = [(c, cg) for c in focus]
    else:
        meter = FuelMeter(fuel if fuel is not None else G.fuel)
        seen: dict[int, Component] = {}
        jobs = []
        for v in target:
            if v in seen:
                continue
            cg = component_graph(G, W, around=v, radius=n, fuel=meter.remaining)
            c = cg.component_of(v)
            for u in c.vertices:
                seen[u] = c
            jobs.append((c, cg))

    def one(job):
        c, cg = job
        view = _view_from(G, W, cg, c, n)
        H = canonicalize(view)
        try:
            local = alg(H)
        except AsiError as exc:
            raise AlgorithmFailure(f"{getattr(alg, 'name', 'algorithm')} failed on component {c.key}: {exc}", structure=H.to_dict()) from exc
        return {_pull_back(item, H.inverse): col for item, col in local.items()}

    result: dict = {}
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(one, jobs))
    else:
        parts = [one(j) for j in jobs]
    for part in parts:
        result.update(part)
    return dict(sorted(result.items()))


# -- registry ---------------------------------------------------------------

_REGISTRY: dict[str, Callable[..., object]] = {}


def register(name: str):
    def deco(factory):
        _REGISTRY[name] = factory
        return factory

    return deco


def get_algorithm(name: str, **params):
    from . import edge_coloring, matching, perfect, vertex_coloring  # noqa: F401  (populate registry)

    try:
        factory = _REGISTRY[name]
    except KeyError:
        raise ValueError(f"unknown algorithm {name!r}; known: {', '.join(sorted(_REGISTRY))}") from None
    return factory(**params)


def algorithm_names() -> list[str]:
    from . import edge_coloring, matching, perfect, vertex_coloring  # noqa: F401

    return sorted(_REGISTRY)
