"""Coloring ``k``-colorable perfect graphs with ``k + s`` colors by peeling.

Each peel removes one independent set ``A_i`` away from the current layer
and, near layer ``i`` of each part ``j``, an independent set ``B_i^j``.
Together they hit every maximum clique, so the chromatic number drops by
one.  Across peels the ``B_i^j`` of one part sit in well separated layers,
so their union stays independent and costs a single color per part.

Layer separation: ``B_i^j`` lies within distance 1 of ``S_i^j``, so two such
sets can only be adjacent when their layers are at most 3 apart.  The
default separation is therefore 4; smaller values are accepted for
experiments but can merge adjacent vertices into one color class.
"""
from __future__ import annotations

from dataclasses import dataclass

from .base import GraphEstimator
from .exceptions import HypothesisViolation, InvariantViolation, MalformedInput
from .graph import ball
from .runtime import AsiAlgorithm, register
from .search import DEFAULT_TIME_BUDGET
from .subordinate import LayerFamily, layers, required_scale
from .vertex_coloring import least_vertex_coloring

DEFAULT_SEPARATION = 4


@dataclass
class PeelResult:
    A: frozenset
    B: tuple  # B[j]
    remaining: frozenset


@dataclass
class PeelRecord:
    step: int
    palette: int
    A: frozenset
    B: tuple
    remaining: frozenset


def peel_step(G, alive, S_sets, palette: int, time_budget=DEFAULT_TIME_BUDGET) -> PeelResult:
    """One peel of the induced subgraph on ``alive`` using ``palette = k + 1`` colors.

    ``S_sets[j]`` is the current layer of part ``j``.  Colors the part of
    ``alive`` away from the layers, and each radius-one neighborhood of a
    layer, with least colorings; color class 0 of each is removed.
    """
    alive = frozenset(alive)
    S = frozenset().union(*S_sets) if S_sets else frozenset()
    c = least_vertex_coloring(G, alive - S, palette, time_budget, what="block away from the layers")
    A = frozenset(v for v, x in c.items() if x == 0)
    B = []
    for Sj in S_sets:
        d = least_vertex_coloring(G, alive & ball(G, Sj, 1), palette, time_budget, what="layer neighborhood")
        B.append(frozenset(v for v, x in d.items() if x == 0))
    removed = A.union(*B)
    return PeelResult(A, tuple(B), alive - removed)


def color_perfect(
    G,
    W,
    k: int,
    separation: int = DEFAULT_SEPARATION,
    time_budget=DEFAULT_TIME_BUDGET,
    verify_layers: bool = False,
    family: LayerFamily | None = None,
    trace: list | None = None,
) -> dict:
    """Proper ``k + s`` coloring of a perfect graph with chromatic number at most ``k``.

    Colors: ``A_i`` gets ``i`` and the union of the ``B_i^j`` gets ``k + j``.
    ``trace``, when given, receives one :class:`PeelRecord` per step.
    """
    if k < 0 or int(k) != k:
        raise MalformedInput(f"k must be a natural number, got {k!r}")
    if k == 0:
        if len(G):
            raise HypothesisViolation("hypothesis violated: a non-empty graph is not 0-colorable")
        return {}
    if family is None:
        family = layers(G, W, k, 1, separation, verify=verify_layers)
    alive = frozenset(G.vertices)
    col: dict[int, int] = {}
    for i in range(k):
        step = peel_step(G, alive, family.sets[i], k - i, time_budget)
        for v in step.A:
            col[v] = i
        for j, Bj in enumerate(step.B):
            for v in sorted(Bj - step.A):
                col.setdefault(v, k + j)
        if trace is not None:
            trace.append(PeelRecord(i, k - i, step.A, step.B, step.remaining))
        alive = step.remaining
    if alive:
        raise HypothesisViolation(
            f"hypothesis violated: {len(alive)} vertices survive {k} peels, so the graph is not a {k}-colorable perfect graph",
            block=sorted(alive),
        )
    for u, v, _ in G.edges():
        if col[u] == col[v]:
            raise InvariantViolation(f"color class {col[u]} contains the edge {u}-{v}; layer separation {separation} is too small")
    return dict(sorted(col.items()))


def perfect_min_scale(k: int, separation: int = DEFAULT_SEPARATION) -> int:
    return required_scale(k, 1, separation)


@register("perfect")
class PerfectAlgorithm(AsiAlgorithm):
    """Each peel looks at blocks reaching two components out, plus one for
    exact layer distances; ``3k + 1`` stages cover all ``k`` peels."""

    name = "perfect"

    def __init__(self, k: int = 2, separation: int = DEFAULT_SEPARATION, time_budget=DEFAULT_TIME_BUDGET):
        super().__init__()
        self.k = k
        self.separation = separation
        self.time_budget = time_budget

    def min_scale(self) -> int:
        return perfect_min_scale(self.k, self.separation)

    def stages(self, W) -> int:
        return 3 * self.k + 1

    def solve(self, G, W):
        return color_perfect(G, W, self.k, self.separation, self.time_budget)


class PerfectGraphColoring(GraphEstimator):
    """Estimator front-end for :func:`color_perfect`.

    ``k=None`` uses the clique number of the input.  ``scale=None`` uses the
    least admissible scale ``2*k*separation + 1``.  Fitted attributes:
    ``coloring_``, ``n_colors_``, ``k_``, ``witness_``, ``layers_``, ``peels_``.
    """

    def __init__(
        self,
        k: int | None = None,
        separation: int = DEFAULT_SEPARATION,
        scale: int | None = None,
        s: int = 1,
        verify_layers: bool = False,
        time_budget: float = DEFAULT_TIME_BUDGET,
    ):
        self.k = k
        self.separation = separation
        self.scale = scale
        self.s = s
        self.verify_layers = verify_layers
        self.time_budget = time_budget

    def _min_scale(self):
        return perfect_min_scale(self.k_, self.separation)

    def fit(self, G, witness=None):
        from .oracles import clique_number
        from .validation import check_graph

        G = check_graph(G, allow_lazy=False)
        self.k_ = self.k if self.k is not None else clique_number(G).value
        G, W = self._prepare(G, witness)
        self.layers_ = layers(G, W, self.k_, 1, self.separation, verify=self.verify_layers) if self.k_ else None
        self.peels_ = []
        self.coloring_ = color_perfect(
            G, W, self.k_, self.separation, self.time_budget, family=self.layers_, trace=self.peels_
        )
        self.n_colors_ = len(set(self.coloring_.values()))
        self.result_ = self.coloring_
        return self
