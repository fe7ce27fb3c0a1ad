"""Seeded instance generators.

Every generator draws from one ``random.Random(seed)`` so an instance is a
pure function of its parameters.  Labels are shuffled where the natural
construction order would make vertex numbering unrealistically tidy.
"""
from __future__ import annotations

import random

from .exceptions import MalformedInput
from .graph import StructuredMultigraph


def _shuffled(n: int, edges, rng: random.Random, shuffle: bool = True) -> StructuredMultigraph:
    perm = list(range(n))
    if shuffle:
        rng.shuffle(perm)
    out = []
    for e in edges:
        u, v = perm[e[0]], perm[e[1]]
        m = e[2] if len(e) > 2 else 1
        out.append((min(u, v), max(u, v), m))
    return StructuredMultigraph(range(n), out)


def random_tree(n: int, seed: int = 0, shuffle: bool = True) -> StructuredMultigraph:
    rng = random.Random(seed)
    edges = [(rng.randrange(i), i) for i in range(1, n)]
    return _shuffled(n, edges, rng, shuffle)


def random_bipartite(n: int, seed: int = 0, density: float | None = None, shuffle: bool = True) -> StructuredMultigraph:
    """Random bipartite graph; sides alternate along a line so the diameter stays large."""
    rng = random.Random(seed)
    if density is None:
        density = 0.5
    edges = []
    for u in range(n):
        for v in range(u + 1, min(n, u + 6)):
            if (v - u) % 2 == 1 and rng.random() < density:
                edges.append((u, v))
    return _shuffled(n, edges, rng, shuffle)


def random_chordal(n: int, seed: int = 0, max_clique: int = 4, window: int = 3, shuffle: bool = True) -> StructuredMultigraph:
    """Chordal graph grown along a clique tree.

    Each new vertex joins a random subset of a recent maximal clique, so the
    clique tree is path-like (long diameter) and the clique number is at
    most ``max_clique``.
    """
    if max_clique < 1:
        raise MalformedInput("max_clique must be at least 1")
    rng = random.Random(seed)
    if n == 0:
        return StructuredMultigraph([], [])
    cliques = [[0]]
    edges = []
    for v in range(1, n):
        base = cliques[-1 - rng.randrange(min(window, len(cliques)))]
        size = rng.randint(1, min(max_clique - 1, len(base))) if max_clique > 1 else 0
        K = rng.sample(base, size)
        edges.extend((u, v) for u in K)
        cliques.append(K + [v])
    return _shuffled(n, edges, rng, shuffle)


def random_interval(
    n: int, seed: int = 0, max_clique: int = 4, connected: bool = True, shuffle: bool = True
) -> StructuredMultigraph:
    """Interval graph from intervals laid left to right, with at most ``max_clique`` overlapping.

    With ``connected`` each interval starts before the furthest end so far.
    """
    rng = random.Random(seed)
    ivs: list[tuple[float, float]] = []
    pos = 0.0
    reach = None
    for _ in range(n):
        pos += rng.uniform(0.2, 1.0)
        if connected and reach is not None and max_clique > 1:
            pos = min(pos, reach - 1e-3)
        end = pos + rng.uniform(0.1, 2.5)
        # shorten so no point is covered by more than max_clique intervals
        while sum(1 for a, b in ivs if b > pos) >= max_clique:
            pos = min(b for a, b in ivs if b > pos) + 1e-6
            end = max(end, pos + 0.1)
        ivs.append((pos, end))
        reach = end if reach is None else max(reach, end)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if ivs[j][0] < ivs[i][1]]
    return _shuffled(n, edges, rng, shuffle)


def random_multigraph(n: int, seed: int = 0, max_degree: int = 4, p: int = 2, attempts: int | None = None) -> StructuredMultigraph:
    """Random multigraph with maximum degree and multiplicity bounded."""
    rng = random.Random(seed)
    deg = [0] * n
    mult: dict[tuple[int, int], int] = {}
    for _ in range(attempts if attempts is not None else 3 * n):
        if n < 2:
            break
        u, v = sorted(rng.sample(range(n), 2))
        m = rng.randint(1, p)
        m = min(m, max_degree - deg[u], max_degree - deg[v], p - mult.get((u, v), 0))
        if m <= 0:
            continue
        mult[(u, v)] = mult.get((u, v), 0) + m
        deg[u] += m
        deg[v] += m
    return StructuredMultigraph(range(n), [(u, v, m) for (u, v), m in mult.items()])


def long_path(n: int) -> StructuredMultigraph:
    return StructuredMultigraph(range(n), [(i, i + 1) for i in range(n - 1)])


def doubled_path(n: int) -> StructuredMultigraph:
    return StructuredMultigraph(range(n), [(i, i + 1, 2) for i in range(n - 1)])


def grid_strip(n: int, width: int = 3) -> StructuredMultigraph:
    """``width`` by ``n`` grid, numbered column by column."""
    edges = []
    for x in range(n):
        for y in range(width):
            v = x * width + y
            if y + 1 < width:
                edges.append((v, v + 1))
            if x + 1 < n:
                edges.append((v, v + width))
    return StructuredMultigraph(range(n * width), edges)


def with_pendant_paths(core: StructuredMultigraph, length: int, attach=None) -> StructuredMultigraph:
    """Hang two paths of ``length`` edges off ``core`` (at its two least vertices by default).

    Core vertices keep their names; path vertices are numbered after them.
    """
    verts = list(core.vertices)
    if not verts:
        raise MalformedInput("cannot extend an empty graph")
    if attach is None:
        attach = (verts[0], verts[min(1, len(verts) - 1)])
    nxt = max(verts) + 1
    edges = list(core.edges())
    new = []
    for a in attach:
        prev = a
        for _ in range(length):
            new.append(nxt)
            edges.append((prev, nxt, 1))
            prev = nxt
            nxt += 1
    return StructuredMultigraph(verts + new, edges, core.predicates)


GENERATORS = {
    "random-tree": random_tree,
    "random-bipartite": random_bipartite,
    "random-chordal": random_chordal,
    "random-interval": random_interval,
    "random-multigraph": random_multigraph,
    "long-path": long_path,
    "doubled-path": doubled_path,
    "grid-strip": grid_strip,
}
SEEDED = {"random-tree", "random-bipartite", "random-chordal", "random-interval", "random-multigraph"}


def generate(kind: str, params: dict | None = None, seed: int = 0) -> StructuredMultigraph:
    """Dispatch by name; ``params`` are the generator's keyword arguments."""
    params = dict(params or {})
    try:
        fn = GENERATORS[kind]
    except KeyError:
        raise MalformedInput(f"unknown generator {kind!r}; known: {', '.join(sorted(GENERATORS))}") from None
    if kind in SEEDED:
        params["seed"] = seed
    try:
        return fn(**params)
    except TypeError as exc:
        raise MalformedInput(f"bad parameters for {kind}: {exc}") from exc
