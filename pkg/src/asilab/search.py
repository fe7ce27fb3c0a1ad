"""Exact search for the least proper coloring of a finite structure.

Colorings are compared lexicographically: items (vertices, or edge slots)
are scanned in their natural order and color vectors are compared
numerically.  Fixing this well-order is what turns "pick some coloring"
into a deterministic, isomorphism-invariant choice.

The least coloring is built one item at a time; each tentative color is
tested for extendability with a DSATUR backtracking search (fail-first:
most saturated item next).  Independent pieces of the conflict graph are
solved separately, which gives the same answer because the lexicographic
order restricted to each piece is the lexicographic order of the piece.
When plain backtracking stalls, the search switches to a variant that
re-splits the unassigned items into independent pieces after every
branch.
"""
from __future__ import annotations

import os
import time
from typing import Hashable, Iterable, Mapping, Sequence

from .exceptions import BudgetExceeded
from .graph import EdgeSlot, StructuredMultigraph

DEFAULT_TIME_BUDGET = float(os.environ.get("ASILAB_TIME_BUDGET", 10.0))


class _Clock:
    __slots__ = ("deadline", "ticks")

    def __init__(self, budget: float | None):
        self.deadline = None if budget is None else time.monotonic() + budget
        self.ticks = 0

    def tick(self) -> None:
        self.ticks += 1
        if self.deadline is not None and self.ticks % 512 == 0 and time.monotonic() > self.deadline:
            raise BudgetExceeded("exact coloring search exceeded its time budget")


class _Search:
    """Backtracking state over one conflict graph.

    Assigned items stay assigned between calls, so the caller can pin a
    prefix and ask about the rest.  ``cnt[v][c]`` counts assigned
    neighbors of ``v`` with color ``c``; ``nsat[v]`` is the number of
    distinct such colors.
    """

    def __init__(self, adj: list[list[int]], palette: int, clock: _Clock):
        self.adj = adj
        self.P = palette
        self.clock = clock
        self.deg = [len(a) for a in adj]
        self.color = [-1] * len(adj)
        self.cnt = [[0] * palette for _ in adj]
        self.nsat = [0] * len(adj)

    def assign(self, v: int, c: int) -> None:
        self.color[v] = c
        cnt, nsat = self.cnt, self.nsat
        for w in self.adj[v]:
            row = cnt[w]
            if row[c] == 0:
                nsat[w] += 1
            row[c] += 1

    def unassign(self, v: int) -> None:
        c = self.color[v]
        self.color[v] = -1
        cnt, nsat = self.cnt, self.nsat
        for w in self.adj[v]:
            row = cnt[w]
            row[c] -= 1
            if row[c] == 0:
                nsat[w] -= 1

    def _pick(self, U) -> int:
        nsat, deg = self.nsat, self.deg
        return min(U, key=lambda i: (-nsat[i], -deg[i], i))

    def _free(self, v: int) -> list[int]:
        row = self.cnt[v]
        return [c for c in range(self.P) if row[c] == 0]

    def split(self, U) -> list[set[int]]:
        """Pieces of ``U`` under adjacency restricted to ``U``."""
        U = set(U)
        out = []
        while U:
            s = U.pop()
            piece, todo = {s}, [s]
            while todo:
                u = todo.pop()
                for w in self.adj[u]:
                    if w in U:
                        U.discard(w)
                        piece.add(w)
                        todo.append(w)
            out.append(piece)
        return out

    def dsatur(self, U, node_limit: int) -> bool | None:
        """Plain chronological DSATUR over ``U``.

        True leaves ``U`` colored; False proves no extension exists; None
        means the node limit was hit (state restored).
        """
        uncolored = set(U)
        stack: list[list] = []
        nodes = 0
        while True:
            self.clock.tick()
            if not uncolored:
                return True
            nodes += 1
            if nodes > node_limit:
                for frame in stack:
                    self.unassign(frame[0])
                return None
            v = self._pick(uncolored)
            cands = self._free(v)
            if cands:
                self.assign(v, cands[0])
                uncolored.discard(v)
                stack.append([v, cands, 0])
                continue
            while stack:
                frame = stack[-1]
                u, cu, k = frame
                self.unassign(u)
                if k + 1 < len(cu):
                    frame[2] = k + 1
                    self.assign(u, cu[k + 1])
                    break
                uncolored.add(u)
                stack.pop()
            else:
                return False

    def decompose(self, U: set) -> bool:
        """Exact search that splits into independent pieces after every branch.

        Pieces that share no uncolored neighbor are solved separately, so a
        failure in one region never triggers re-enumeration of another.
        """
        U = set(U)
        trail = []
        while U:
            self.clock.tick()
            v = self._pick(U)
            cands = self._free(v)
            if len(cands) == 1:
                self.assign(v, cands[0])
                trail.append(v)
                U.discard(v)
                continue
            if not cands:
                break
            pieces = self.split(U)
            if len(pieces) > 1:
                done = []
                for piece in sorted(pieces, key=len):
                    if not self.decompose(piece):
                        break
                    done.append(piece)
                else:
                    return True
                for piece in done:
                    for u in piece:
                        self.unassign(u)
                break
            U.discard(v)
            for c in cands:
                self.assign(v, c)
                if self.solve(U):
                    return True
                self.unassign(v)
            U.add(v)
            break
        else:
            return True
        for u in reversed(trail):
            self.unassign(u)
        return False

    def solve(self, U) -> bool:
        """Color all of ``U`` consistently with the current assignment, if possible."""
        if not U:
            return True
        quick = self.dsatur(U, 64 + 8 * len(U))
        if quick is not None:
            return quick
        return self.decompose(U)

    def region(self, v: int) -> set[int]:
        """Uncolored items connected to ``v`` through uncolored items (``v`` excluded)."""
        color = self.color
        seen = {v}
        todo = [v]
        while todo:
            u = todo.pop()
            for w in self.adj[u]:
                if w not in seen and color[w] < 0:
                    seen.add(w)
                    todo.append(w)
        seen.discard(v)
        return seen


def _pieces(adj: list[list[int]]) -> list[list[int]]:
    seen = [False] * len(adj)
    out = []
    for s in range(len(adj)):
        if seen[s]:
            continue
        seen[s] = True
        comp, todo = [s], [s]
        while todo:
            u = todo.pop()
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    todo.append(w)
        out.append(sorted(comp))
    return out


def least_coloring(
    items: Sequence[Hashable],
    conflicts: Mapping[Hashable, Iterable[Hashable]],
    palette: int,
    time_budget: float | None = DEFAULT_TIME_BUDGET,
) -> dict | None:
    """Lexicographically least proper coloring of a conflict graph.

    ``items`` gives the scan order; ``conflicts[a]`` lists the items that
    must receive a color different from ``a``.  Returns ``None`` when no
    coloring with colors ``0 .. palette-1`` exists.

    Items are pinned in order.  To try a smaller color at ``v`` only the
    unpinned region attached to ``v`` has to be re-solved: every other
    unpinned region sees just pinned neighbors, so the current solution
    there stays valid.
    """
    items = list(items)
    index = {a: i for i, a in enumerate(items)}
    adj = [sorted({index[b] for b in conflicts.get(a, ()) if b in index and b != a}) for a in items]
    if items and palette <= 0:
        return None
    st = _Search(adj, palette, _Clock(time_budget))
    best = [-1] * len(items)
    for piece in _pieces(adj):
        if not st.solve(piece):
            return None
        for v in piece:
            best[v] = st.color[v]
            st.unassign(v)
        for v in piece:
            free = [c for c in range(best[v]) if st.cnt[v][c] == 0]
            if free:
                R = st.region(v)
                for c in free:
                    st.assign(v, c)
                    if st.solve(R):
                        best[v] = c
                        for u in R:
                            best[u] = st.color[u]
                            st.unassign(u)
                        st.unassign(v)
                        break
                    st.unassign(v)
            st.assign(v, best[v])
    return {items[i]: best[i] for i in range(len(items))}


def vertex_conflicts(H: StructuredMultigraph) -> dict[int, list[int]]:
    return {v: list(H.neighbor_set(v)) for v in H.vertices}


def edge_conflicts(H: StructuredMultigraph) -> tuple[list[EdgeSlot], dict[EdgeSlot, list[EdgeSlot]]]:
    slots = H.edge_slots()
    at: dict[int, list[EdgeSlot]] = {v: [] for v in H.vertices}
    for e in slots:
        at[e.u].append(e)
        at[e.v].append(e)
    conflicts = {e: sorted(set(at[e.u] + at[e.v]) - {e}) for e in slots}
    return slots, conflicts


def choose_least(
    kind: str,
    H: StructuredMultigraph,
    palette: int,
    time_budget: float | None = DEFAULT_TIME_BUDGET,
) -> dict | None:
    """Least proper ``palette``-coloring of ``H``'s vertices or edge slots.

    ``None`` means no proper coloring exists; running out of time raises
    :class:`BudgetExceeded` instead.
    """
    if kind == "vertex":
        return least_coloring(H.vertices, vertex_conflicts(H), palette, time_budget)
    if kind == "edge":
        slots, conflicts = edge_conflicts(H)
        return least_coloring(slots, conflicts, palette, time_budget)
    raise ValueError(f"unknown coloring kind {kind!r}")
