"""Built-in lazily presented infinite graphs.

Every family fixes a bijection with the naturals, since the parity witness
construction uses vertex numbers arithmetically:

* ``path``         one-sided path, ``i -- i+1``
* ``doubled-path`` the same with every edge of multiplicity 2
* ``tree?d=D``     D-regular tree in breadth-first numbering
* ``layered?degrees=a.b.c``  tree where every vertex at depth ``t`` has
  total degree ``degrees[t % len(degrees)]`` (breadth-first numbering)
* ``grid``         the square lattice Z^2 numbered along a square spiral
"""
from __future__ import annotations

import threading
from bisect import bisect_right
from functools import lru_cache
from math import isqrt
from urllib.parse import parse_qs, urlsplit

from .exceptions import MalformedInput
from .graph import DEFAULT_FUEL, LazyGraph


def infinite_path(fuel: int = DEFAULT_FUEL, multiplicity: int = 1) -> LazyGraph:
    def nbrs(v):
        if v == 0:
            return ((1, multiplicity),)
        return ((v - 1, multiplicity), (v + 1, multiplicity))

    def deg(v):
        return multiplicity if v == 0 else 2 * multiplicity

    name = "path" if multiplicity == 1 else "doubled-path"
    return LazyGraph(name, {}, nbrs, deg, fuel)


def doubled_path(fuel: int = DEFAULT_FUEL) -> LazyGraph:
    return infinite_path(fuel, multiplicity=2)


class _LayeredTree:
    """Index arithmetic for a breadth-first numbered tree whose vertex
    degrees depend only on depth."""

    def __init__(self, degrees: tuple[int, ...]):
        if not degrees or any(d < 2 for d in degrees):
            raise MalformedInput("layered tree degrees must all be at least 2")
        self.degrees = degrees
        # _starts[t] is the index of the first vertex at depth t
        self._starts = [0, 1]
        self._lock = threading.Lock()

    def children_per_vertex(self, depth: int) -> int:
        d = self.degrees[depth % len(self.degrees)]
        return d if depth == 0 else d - 1

    def _grow_until(self, v: int) -> None:
        if self._starts[-1] > v:
            return
        with self._lock:
            starts = self._starts
            while starts[-1] <= v:
                t = len(starts) - 2
                size = starts[-1] - starts[-2]
                starts.append(starts[-1] + size * self.children_per_vertex(t))

    def depth(self, v: int) -> int:
        self._grow_until(v)
        return bisect_right(self._starts, v) - 1

    def parent(self, v: int) -> int | None:
        if v == 0:
            return None
        t = self.depth(v)
        pos = v - self._starts[t]
        return self._starts[t - 1] + pos // self.children_per_vertex(t - 1)

    def children(self, v: int) -> range:
        t = self.depth(v)
        c = self.children_per_vertex(t)
        self._grow_until(self._starts[t + 1] + 1)
        pos = v - self._starts[t]
        first = self._starts[t + 1] + pos * c
        return range(first, first + c)

    def degree(self, v: int) -> int:
        return self.degrees[self.depth(v) % len(self.degrees)]


def layered_tree(degrees, fuel: int = DEFAULT_FUEL, family: str = "layered") -> LazyGraph:
    degrees = tuple(int(d) for d in degrees)
    tree = _LayeredTree(degrees)

    @lru_cache(maxsize=1 << 16)
    def nbrs(v):
        out = [(c, 1) for c in tree.children(v)]
        p = tree.parent(v)
        if p is not None:
            out.insert(0, (p, 1))
        return tuple(out)

    params = {"degrees": degrees} if family == "layered" else {"d": degrees[0]}
    return LazyGraph(family, params, nbrs, tree.degree, fuel)


def regular_tree(d: int = 3, fuel: int = DEFAULT_FUEL) -> LazyGraph:
    return layered_tree((d,), fuel, family="tree")


# -- square spiral ------------------------------------------------------------


def spiral_coords(i: int) -> tuple[int, int]:
    if i == 0:
        return (0, 0)
    m = (isqrt(i) + 1) // 2
    off = i - (2 * m - 1) ** 2
    side, pos = divmod(off, 2 * m)
    if side == 0:
        return (m, -m + 1 + pos)
    if side == 1:
        return (m - 1 - pos, m)
    if side == 2:
        return (-m, m - 1 - pos)
    return (-m + 1 + pos, -m)


def spiral_index(x: int, y: int) -> int:
    m = max(abs(x), abs(y))
    if m == 0:
        return 0
    start = (2 * m - 1) ** 2
    if x == m and y > -m:
        return start + (y + m - 1)
    if y == m:
        return start + 2 * m + (m - 1 - x)
    if x == -m:
        return start + 4 * m + (m - 1 - y)
    return start + 6 * m + (x + m - 1)


def spiral_grid(fuel: int = DEFAULT_FUEL) -> LazyGraph:
    def nbrs(v):
        x, y = spiral_coords(v)
        out = sorted(spiral_index(x + dx, y + dy) for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)))
        return tuple((w, 1) for w in out)

    return LazyGraph("grid", {}, nbrs, lambda v: 4, fuel)


def _parse_int_list(raw: str) -> tuple[int, ...]:
    return tuple(int(x) for x in raw.replace(",", ".").split(".") if x)


def parse_family(uri: str, fuel: int = DEFAULT_FUEL) -> LazyGraph:
    """Resolve ``family:name?param=value`` (the ``family:`` prefix is optional)."""
    text = uri[len("family:"):] if uri.startswith("family:") else uri
    parts = urlsplit(text)
    name = parts.path
    query = {k: v[-1] for k, v in parse_qs(parts.query).items()}
    try:
        if name == "path":
            return infinite_path(fuel)
        if name == "doubled-path":
            return doubled_path(fuel)
        if name == "grid":
            return spiral_grid(fuel)
        if name == "tree":
            return regular_tree(int(query.get("d", 3)), fuel)
        if name == "layered":
            return layered_tree(_parse_int_list(query["degrees"]), fuel)
    except (KeyError, ValueError) as exc:
        raise MalformedInput(f"bad parameters for family {name!r}: {exc}") from exc
    raise MalformedInput(f"unknown graph family {name!r}")
