"""Perfect matchings of acyclic graphs with minimum degree at least 2.

The stream covers vertex ``0``, then ``1``, and so on.  To cover ``x`` it
takes the least edge at ``x`` and repairs the damage: any neighbor of the
growing block whose remaining degree fell to one is matched to its only
remaining neighbor.  On graphs without infinite paths that alternate
through degree-2 vertices this repair terminates, and the leftover graph
again has minimum degree at least 2, so the stream can go on forever.
Earlier decisions are never revised.

Finite graphs are accepted by :func:`local_matching_block` for testing,
but a finite acyclic graph always has leaves, so the stream itself is
meant for lazy graphs.
"""
from __future__ import annotations

from dataclasses import dataclass

from .base import GraphEstimator
from .exceptions import FuelExhausted, HypothesisViolation, InvariantViolation
from .graph import FuelMeter, _meter_for
from .runtime import register


@dataclass(frozen=True)
class MatchingBlock:
    edges: tuple  # ((y, y'), ...) in the order added
    rounds: int  # number of repair rounds that added edges


def local_matching_block(G, covered, x: int, meter: FuelMeter | None = None) -> MatchingBlock:
    """Finite matching covering ``x`` that leaves minimum degree at least 2 behind.

    ``covered`` is the set of vertices already removed.  Fuel exhaustion
    carries the partial block; it indicates that the repair did not close,
    which cannot happen on graphs meeting the hypotheses.
    """
    meter = _meter_for(G, meter)
    covered = covered if isinstance(covered, (set, frozenset, dict)) else set(covered)
    if x in covered:
        raise ValueError(f"vertex {x} is already covered")

    def free_nbrs(v):
        if meter is not None:
            meter.consume(partial=edges)
        return [w for w in G.neighbor_set(v) if w not in covered and w not in block]

    edges: list[tuple[int, int]] = []
    block: set[int] = set()
    start = free_nbrs(x)
    if not start:
        raise HypothesisViolation(f"hypothesis violated: vertex {x} has no uncovered neighbor")
    first = min(start)
    edges.append((x, first))
    block.update((x, first))
    frontier = [x, first]
    rounds = 0
    while True:
        A = {}
        seen = set()
        for b in frontier:
            for y in free_nbrs(b):
                if y in seen:
                    # y would see the block twice: a cycle
                    raise HypothesisViolation(f"hypothesis violated: cycle through vertex {y}")
                seen.add(y)
                rest = free_nbrs(y)
                if len(rest) <= 1:
                    A[y] = rest
        if not A:
            break
        rounds += 1
        targets = {}
        new_frontier = []
        for y in sorted(A):
            rest = A[y]
            if not rest:
                raise HypothesisViolation(f"hypothesis violated: vertex {y} is left with no neighbor")
            y2 = rest[0]
            if y2 in targets or y2 in A:
                raise InvariantViolation(f"repair map is not injective at {y2}")
            targets[y2] = y
            edges.append((y, y2))
            new_frontier += [y, y2]
        block.update(new_frontier)
        frontier = new_frontier
    return MatchingBlock(tuple(edges), rounds)


def residual_degrees_ok(G, covered, around) -> bool:
    """Every uncovered neighbor of ``around`` keeps at least two uncovered neighbors."""
    for v in around:
        for w in G.neighbor_set(v):
            if w in covered:
                continue
            if sum(1 for u in G.neighbor_set(w) if u not in covered) < 2:
                return False
    return True


class MatchingStream:
    """Incremental matching that covers vertices in increasing order.

    ``advance(upto)`` extends the matching until every vertex ``<= upto`` is
    covered and returns the edges so far.  Fuel is metered per block.
    """

    def __init__(self, G, fuel: int | None = None, check: bool = True):
        self.G = G
        self.fuel = fuel if fuel is not None else getattr(G, "fuel", None)
        self.check = check
        self.partner: dict[int, int] = {}
        self.edges: list[tuple[int, int]] = []
        self.blocks: list[MatchingBlock] = []
        self.stage = 0

    @property
    def covered(self) -> frozenset:
        return frozenset(self.partner)

    def advance(self, upto: int) -> list[tuple[int, int]]:
        while self.stage <= upto:
            n = self.stage
            if n not in self.partner and self.G.has_vertex(n):
                meter = FuelMeter(self.fuel) if self.fuel is not None else None
                try:
                    block = local_matching_block(self.G, self.partner, n, meter)
                except FuelExhausted as exc:
                    exc.partial = {"stage": n, "block": exc.partial}
                    raise
                for y, y2 in block.edges:
                    self.partner[y] = y2
                    self.partner[y2] = y
                    self.edges.append((min(y, y2), max(y, y2)))
                self.blocks.append(block)
                if self.check:
                    touched = {v for e in block.edges for v in e}
                    if not residual_degrees_ok(self.G, self.partner, touched):
                        raise InvariantViolation(f"block for vertex {n} leaves a vertex of degree below 2")
            self.stage += 1
        return list(self.edges)

    def matching(self) -> list[tuple[int, int]]:
        return list(self.edges)


def matching_stream(G, upto: int, fuel: int | None = None) -> list[tuple[int, int]]:
    """Matching covering every vertex ``0 .. upto``."""
    return MatchingStream(G, fuel).advance(upto)


@register("match-acyclic")
class AcyclicMatchingRunner:
    """Registry entry: runs the stream rather than a component-wise algorithm."""

    name = "match-acyclic"
    output = "matching"

    def __init__(self, upto: int = 100, fuel: int | None = None):
        self.upto = upto
        self.fuel = fuel

    def run(self, G) -> list[tuple[int, int]]:
        return matching_stream(G, self.upto, self.fuel)


class AcyclicPerfectMatching(GraphEstimator):
    """Estimator front-end for :class:`MatchingStream`.

    Fitted attributes: ``matching_`` (edges in the order added),
    ``covered_`` and ``blocks_``.
    """

    def __init__(self, upto: int = 100, fuel: int | None = None):
        self.upto = upto
        self.fuel = fuel

    def fit(self, G, witness=None):
        from .validation import check_graph

        G = check_graph(G)
        stream = MatchingStream(G, self.fuel)
        self.matching_ = stream.advance(self.upto)
        self.covered_ = stream.covered
        self.blocks_ = stream.blocks
        self.result_ = self.matching_
        return self
