"""Exact ground truth for small graphs, independent of the coloring search.

Chromatic number and chromatic index each have two implementations: a
branch-and-bound search and a plain dynamic program over vertex (or slot)
subsets.  Tests cross-check the two so no algorithm test rests on a single
solver.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any

from .exceptions import MalformedInput
from .graph import EdgeSlot, induced

CHI_LIMIT = 20
CHI_PRIME_LIMIT = 18
EXHAUSTIVE_LIMIT = 12
PERFECT_LIMIT = 20
DEFINITIONAL_PERFECT_LIMIT = 12


@dataclass
class OracleReport:
    quantity: str
    value: Any
    certificate: Any = None
    stats: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        cert = self.certificate
        if isinstance(cert, dict):
            cert = [[*k, v] if isinstance(k, tuple) else [k, v] for k, v in sorted(cert.items())]
        elif isinstance(cert, (set, frozenset)):
            cert = sorted(cert)
        return {"quantity": self.quantity, "value": self.value, "certificate": cert, "stats": self.stats}


def _limit(n: int, limit: int | None, what: str):
    if limit is not None and n > limit:
        raise MalformedInput(f"{what} oracle is limited to {limit} items, got {n}")


# -- generic exact coloring of an adjacency structure ---------------------------


def _max_clique(adj: list[set[int]], items) -> list[int]:
    best: list[int] = []

    def bk(R, P, X):
        nonlocal best
        if not P and not X:
            if len(R) > len(best):
                best = R
            return
        if len(R) + len(P) <= len(best):
            return
        pivot = max(P | X, key=lambda u: len(adj[u] & P))
        for v in sorted(P - adj[pivot]):
            bk(R + [v], P & adj[v], X & adj[v])
            P = P - {v}
            X = X | {v}

    bk([], set(items), set())
    return best


def _bnb_piece(adj: list[set[int]], items: list[int], col: list[int]) -> tuple[int, int]:
    """Color ``items`` (one connected piece) optimally in place; return ``(chi, nodes)``."""
    clique = _max_clique(adj, items)
    lower = len(clique)
    # greedy upper bound in largest-degree-first order
    greedy: dict[int, int] = {}
    for v in sorted(items, key=lambda u: -len(adj[u])):
        used = {greedy[w] for w in adj[v] if w in greedy}
        greedy[v] = next(c for c in range(len(items)) if c not in used)
    best_k = max(greedy.values()) + 1
    best = dict(greedy)
    nodes = 0
    if best_k > lower:
        # a clique needs distinct colors, so fixing them breaks color symmetry
        for c, v in enumerate(clique):
            col[v] = c
        free = [v for v in items if col[v] < 0]

        def rec(left: int, used: int) -> bool:
            nonlocal best_k, best, nodes
            nodes += 1
            if left == 0:
                best_k, best = used, {v: col[v] for v in items}
                return best_k == lower
            v = max(
                (u for u in free if col[u] < 0),
                key=lambda u: (len({col[w] for w in adj[u] if col[w] >= 0}), len(adj[u])),
            )
            forbidden = {col[w] for w in adj[v] if col[w] >= 0}
            for c in range(min(used + 1, best_k - 1)):
                if c in forbidden:
                    continue
                col[v] = c
                done = rec(left - 1, max(used, c + 1))
                col[v] = -1
                if done:
                    return True
            return False

        rec(len(free), lower)
    for v in items:
        col[v] = best[v]
    return best_k, nodes


def _bnb_color(adj: list[set[int]]) -> tuple[int, list[int], int]:
    """Minimum coloring by clique-seeded, DSATUR-ordered branch and bound.

    Connected pieces are solved separately.  Returns ``(chi, coloring, nodes_explored)``.
    """
    n = len(adj)
    col = [-1] * n
    seen: set[int] = set()
    chi = nodes = 0
    for root in range(n):
        if root in seen:
            continue
        piece, stack = [], [root]
        seen.add(root)
        while stack:
            v = stack.pop()
            piece.append(v)
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        k, used = _bnb_piece(adj, sorted(piece), col)
        chi, nodes = max(chi, k), nodes + used
    return chi, col, nodes


def _dp_color(adj: list[set[int]]) -> int:
    """Minimum number of independent sets covering all items, by subset DP."""
    n = len(adj)
    if n == 0:
        return 0
    nbr = [sum(1 << w for w in adj[v]) for v in range(n)]
    full = (1 << n) - 1
    indep = [True] * (1 << n)
    for mask in range(1, 1 << n):
        low = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << low)
        indep[mask] = indep[rest] and not (nbr[low] & rest)
    INF = n + 1
    f = [INF] * (1 << n)
    f[0] = 0
    for mask in range(1, full + 1):
        low = mask & -mask
        rest = mask ^ low
        sub = rest
        best = INF
        while True:
            s = sub | low
            if indep[s]:
                cand = f[mask ^ s] + 1
                if cand < best:
                    best = cand
            if sub == 0:
                break
            sub = (sub - 1) & rest
        f[mask] = best
    return f[full]


def _vertex_adj(G) -> tuple[list[int], list[set[int]]]:
    verts = list(G.vertices)
    idx = {v: i for i, v in enumerate(verts)}
    return verts, [{idx[w] for w in G.neighbor_set(v)} for v in verts]


def _slot_adj(G) -> tuple[list[EdgeSlot], list[set[int]]]:
    slots = G.edge_slots()
    at: dict[int, list[int]] = {}
    for i, e in enumerate(slots):
        at.setdefault(e.u, []).append(i)
        at.setdefault(e.v, []).append(i)
    adj = [(set(at[e.u]) | set(at[e.v])) - {i} for i, e in enumerate(slots)]
    return slots, adj


# -- public oracles -------------------------------------------------------------


def chromatic_number(G, limit: int | None = CHI_LIMIT, method: str = "bnb") -> OracleReport:
    """Exact chromatic number; ``method`` is ``"bnb"`` or ``"exhaustive"``."""
    verts, adj = _vertex_adj(G)
    if method == "exhaustive":
        _limit(len(verts), min(limit or EXHAUSTIVE_LIMIT, EXHAUSTIVE_LIMIT), "exhaustive chromatic number")
        return OracleReport("chi", _dp_color(adj), stats={"method": "exhaustive"})
    _limit(len(verts), limit, "chromatic number")
    k, col, nodes = _bnb_color(adj)
    cert = {verts[i]: c for i, c in enumerate(col)}
    return OracleReport("chi", k, cert, {"method": "bnb", "nodes": nodes})


def chromatic_index(G, limit: int | None = CHI_PRIME_LIMIT, method: str = "bnb") -> OracleReport:
    """Exact edge chromatic number of a multigraph (certificate keyed by EdgeSlot)."""
    slots, adj = _slot_adj(G)
    if method == "exhaustive":
        _limit(len(slots), min(limit or EXHAUSTIVE_LIMIT, EXHAUSTIVE_LIMIT), "exhaustive chromatic index")
        return OracleReport("chi-prime", _dp_color(adj), stats={"method": "exhaustive"})
    _limit(len(slots), limit, "chromatic index")
    k, col, nodes = _bnb_color(adj)
    cert = {slots[i]: c for i, c in enumerate(col)}
    return OracleReport("chi-prime", k, cert, {"method": "bnb", "nodes": nodes})


def clique_number(G, limit: int | None = None) -> OracleReport:
    """Size of a largest clique, by Bron-Kerbosch with pivoting."""
    verts = list(G.vertices)
    _limit(len(verts), limit, "clique number")
    nbr = {v: set(G.neighbor_set(v)) for v in verts}
    best: list[int] = []

    def bk(R, P, X):
        nonlocal best
        if not P and not X:
            if len(R) > len(best):
                best = sorted(R)
            return
        if len(R) + len(P) <= len(best):
            return
        pivot = max(P | X, key=lambda u: len(P & nbr[u]))
        for v in sorted(P - nbr[pivot]):
            bk(R | {v}, P & nbr[v], X & nbr[v])
            P = P - {v}
            X = X | {v}

    bk(set(), set(verts), set())
    return OracleReport("omega", len(best), frozenset(best))


def max_degree(G) -> OracleReport:
    if not len(G):
        return OracleReport("max-degree", 0)
    v = max(G.vertices, key=lambda u: (G.degree(u), -u))
    return OracleReport("max-degree", G.degree(v), v)


def _find_odd_hole(verts: list[int], nbr: dict[int, set[int]]):
    """An induced odd cycle of length >= 5, or None.

    Chordless paths are grown from their least vertex; a path closes into a
    hole when its last vertex is adjacent to the first and to no interior
    vertex.
    """
    for start in verts:
        stack = [[start]]
        while stack:
            path = stack.pop()
            last = path[-1]
            for w in sorted(nbr[last]):
                if w <= start or w in path:
                    continue
                # w must not touch the interior of the path
                if any(w in nbr[u] for u in path[1:-1]):
                    continue
                closes = start in nbr[w]
                if closes:
                    if len(path) >= 4 and len(path) % 2 == 0 and path[1] < w:
                        return path + [w]
                    if len(path) >= 2:
                        continue
                stack.append(path + [w])
    return None


def is_perfect(G, limit: int | None = PERFECT_LIMIT, definitional: bool | None = None) -> OracleReport:
    """Perfectness by odd hole / odd antihole search.

    ``definitional`` (default: automatic for at most 12 vertices) also
    compares clique number and chromatic number on every induced subgraph
    and raises if the two verdicts disagree.
    """
    verts = list(G.vertices)
    _limit(len(verts), limit, "perfectness")
    nbr = {v: set(G.neighbor_set(v)) for v in verts}
    hole = _find_odd_hole(verts, nbr)
    kind = "odd-hole"
    if hole is None:
        co = {v: set(verts) - nbr[v] - {v} for v in verts}
        hole = _find_odd_hole(verts, co)
        kind = "odd-antihole"
    report = OracleReport("perfect", hole is None, None if hole is None else {"kind": kind, "cycle": hole})
    if definitional is None:
        definitional = len(verts) <= DEFINITIONAL_PERFECT_LIMIT
    if definitional:
        witness = definitional_imperfection(G)
        if (witness is None) != report.value:
            raise AssertionError("odd-hole scan and definitional scan disagree")
        report.stats["definitional"] = True
    return report


def definitional_imperfection(G):
    """The first induced subgraph whose chromatic and clique numbers differ, or None."""
    verts = list(G.vertices)
    _limit(len(verts), DEFINITIONAL_PERFECT_LIMIT, "definitional perfectness")
    for size in range(1, len(verts) + 1):
        for X in combinations(verts, size):
            H = induced(G, X)
            if chromatic_number(H).value != clique_number(H).value:
                return list(X)
    return None


# -- verification ----------------------------------------------------------------


@dataclass
class VerifyReport:
    ok: bool
    n_colors: int
    defects: list

    def to_dict(self) -> dict:
        return {"ok": self.ok, "n_colors": self.n_colors, "defects": self.defects}


def verify(kind: str, G, solution, cover=None) -> VerifyReport:
    """Check a vertex coloring, edge coloring or matching against ``G``.

    Every defect is listed: monochromatic edges, missing or unknown items,
    slots sharing an endpoint and color, uncovered required vertices.
    """
    defects: list = []
    if kind == "vertex":
        for v in G.vertices:
            if v not in solution:
                defects.append({"missing": v})
        for v in solution:
            if v not in G:
                defects.append({"unknown": v})
        for u, v, _ in G.edges():
            if u in solution and v in solution and solution[u] == solution[v]:
                defects.append({"monochromatic": [u, v], "color": solution[u]})
        n = len(set(solution.values()))
    elif kind == "edge":
        slots = set(G.edge_slots())
        sol = {EdgeSlot.of(*e): c for e, c in solution.items()}
        for e in sorted(slots - sol.keys()):
            defects.append({"missing": list(e)})
        for e in sorted(sol.keys() - slots):
            defects.append({"unknown": list(e)})
        seen: dict[tuple[int, int], EdgeSlot] = {}
        for e, c in sorted(sol.items()):
            for x in (e.u, e.v):
                if (x, c) in seen:
                    defects.append({"clash": [list(seen[(x, c)]), list(e)], "vertex": x, "color": c})
                else:
                    seen[(x, c)] = e
        n = len(set(sol.values()))
    elif kind == "matching":
        covered: dict[int, tuple] = {}
        for e in solution:
            u, v = e[0], e[1]
            if G.multiplicity(u, v) == 0:
                defects.append({"not-an-edge": [u, v]})
            for x in (u, v):
                if x in covered:
                    defects.append({"shared-endpoint": x, "edges": [list(covered[x]), [u, v]]})
                covered[x] = (u, v)
        for x in sorted(cover or ()):
            if x not in covered:
                defects.append({"uncovered": x})
        n = len(solution)
    else:
        raise ValueError(f"unknown solution kind {kind!r}")
    return VerifyReport(not defects, n, defects)
