"""Subordinate sets and the distance-layer construction.

A set ``E`` is ``(N, R)``-subordinate when every component of
``G^R`` restricted to ``E`` lies inside the union of the witness components
of one radius-``N`` ball of the component graph.  Such sets can be handled
piece by piece without any global coordination.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .exceptions import InvariantViolation, ScaleTooSmall
from .graph import distances_from, power_components
from .witness import ComponentGraph, component_graph


@dataclass
class SubordinateReport:
    ok: bool
    # least vertex of each G^R-piece of E -> key of a covering ball centre
    certificate: dict = field(default_factory=dict)
    # least vertex of each piece that no ball covers
    failures: list = field(default_factory=list)
    # largest centre-to-member distance actually needed
    radius_used: int = 0

    def __bool__(self):
        return self.ok


def _cover(cg: ComponentGraph, meet: set, N: int):
    first = min(meet)
    if first not in cg.adjacency:
        return None, None
    for centre in sorted(cg.ball(first, N)):
        reach = cg.ball(centre, N)
        if meet <= reach.keys():
            return centre, max(reach[k] for k in meet)
    return None, None


def is_subordinate(G, W, E: Iterable[int], N: int, R: int, cg: ComponentGraph | None = None, fuel: int | None = None) -> SubordinateReport:
    """Decide ``(N, R)``-subordination of the finite set ``E``.

    On lazy graphs the component graph is explored around each piece out to
    radius ``2N``; a piece touching anything further away cannot be covered.
    """
    E = frozenset(E)
    report = SubordinateReport(True)
    if not E:
        return report
    if cg is None and G.is_finite:
        cg = component_graph(G, W)
    for piece in power_components(G, E, R):
        local = cg if cg is not None else component_graph(G, W, around=min(piece), radius=2 * N + 1, fuel=fuel)
        try:
            meet = {local.owner[v] for v in piece}
        except KeyError:
            centre = None
        else:
            centre, used = _cover(local, meet, N)
        if centre is None:
            report.ok = False
            report.failures.append(min(piece))
        else:
            report.certificate[min(piece)] = centre
            report.radius_used = max(report.radius_used, used)
    return report


@dataclass(frozen=True)
class LayerFamily:
    """Sets ``S_i^j`` (``i < k``, ``j < s``) of vertices at distance exactly ``l*i`` from ``U_j``."""

    k: int
    l1: int
    l2: int
    sets: tuple  # sets[i][j]
    checks: dict = field(default_factory=dict, compare=False)

    @property
    def l(self) -> int:
        return max(self.l1, self.l2)

    @property
    def s(self) -> int:
        return len(self.sets[0]) if self.sets else 0

    def S(self, i: int) -> frozenset:
        return frozenset().union(*self.sets[i]) if self.sets[i] else frozenset()

    def layer(self, i: int, j: int) -> frozenset:
        return self.sets[i][j]

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "l1": self.l1,
            "l2": self.l2,
            "layers": [[sorted(S) for S in row] for row in self.sets],
        }


def required_scale(k: int, l1: int, l2: int) -> int:
    return 2 * k * max(l1, l2) + 1


def layers(G, W, k: int, l1: int, l2: int, verify: bool = True, region: Iterable[int] | None = None) -> LayerFamily:
    """Build the layer family and, when ``verify`` is set, check its three properties.

    Properties checked on finite graphs: each ``B(S_i^j, l1)`` is
    (1,1)-subordinate, distinct layers of one part are ``l2`` apart, and
    each complement ``V \\ S_i`` is (1,1)-subordinate.  On lazy graphs the
    family is computed on the finite ``region`` only and not verified.
    """
    need = required_scale(k, l1, l2)
    if W.scale < need:
        raise ScaleTooSmall(f"layers with k={k}, l1={l1}, l2={l2} need scale >= {need}, got {W.scale}")
    l = max(l1, l2)
    s = W.s
    if G.is_finite:
        dists = [distances_from(G, W.parts[j], l * (k - 1)) if k else {} for j in range(s)]
        sets = tuple(
            tuple(frozenset(v for v, d in dists[j].items() if d == l * i) for j in range(s)) for i in range(k)
        )
    else:
        if region is None:
            raise ValueError("lazy graphs need a finite region for layers")
        from .graph import FuelMeter

        meter = FuelMeter(G.fuel)
        rows = [[set() for _ in range(s)] for _ in range(k)]
        for x in region:
            near = distances_from(G, (x,), l * (k - 1), meter)
            for j in range(s):
                d = min((dd for v, dd in near.items() if W.part_of(v, meter) == j), default=None)
                if d is not None and d % l == 0:
                    rows[d // l][j].add(x)
        sets = tuple(tuple(frozenset(S) for S in row) for row in rows)
        return LayerFamily(k, l1, l2, sets)
    family = LayerFamily(k, l1, l2, sets)
    if verify:
        family.checks.update(check_layers(G, W, family))
    return family


def check_layers(G, W, family: LayerFamily) -> dict:
    """Verify the three layer properties; raise on failure, else return a summary."""
    from .graph import ball, set_distance

    cg = component_graph(G, W)
    radius = 0
    k, s = family.k, family.s
    for i in range(k):
        for j in range(s):
            S = family.sets[i][j]
            rep = is_subordinate(G, W, ball(G, S, family.l1), 1, 1, cg)
            if not rep:
                raise InvariantViolation(f"B(S_{i}^{j}, {family.l1}) is not (1,1)-subordinate")
            radius = max(radius, rep.radius_used)
    for j in range(s):
        for i in range(k):
            for i2 in range(i + 1, k):
                a, b = family.sets[i][j], family.sets[i2][j]
                if a and b:
                    d = set_distance(G, a, b, family.l2)
                    if d is not None and d < family.l2:
                        raise InvariantViolation(f"layers {i} and {i2} of part {j} are only {d} apart")
    for i in range(k):
        rest = set(G.vertices) - family.S(i)
        rep = is_subordinate(G, W, rest, 1, 1, cg)
        if not rep:
            raise InvariantViolation(f"V \\ S_{i} is not (1,1)-subordinate")
        radius = max(radius, rep.radius_used)
    return {"subordinate": True, "separated": True, "radius_used": radius}
