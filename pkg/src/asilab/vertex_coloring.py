"""Vertex coloring from a witness: the blockwise and the overlap constructions.

Blockwise: each witness component is colored on its own, part ``i`` using
colors ``i*k .. i*k + k - 1``.  Overlap: each part colors the radius-one
neighborhood of its components, and a vertex keeps the first of these
colorings that does not use the top color ``k - 1``; vertices on which every
coloring uses the top color share the single color 0.  That saves ``s``
colors over blockwise.
"""
from __future__ import annotations

from dataclasses import dataclass

from .base import GraphEstimator
from .exceptions import HypothesisViolation, ScaleTooSmall
from .graph import ball, components, induced
from .runtime import AsiAlgorithm, register
from .search import DEFAULT_TIME_BUDGET, choose_least
from .validation import check_positive

OVERLAP_MIN_SCALE = 4


def least_vertex_coloring(G, X, palette: int, time_budget=DEFAULT_TIME_BUDGET, what: str = "block") -> dict:
    """Least proper ``palette``-coloring of ``G`` restricted to ``X``, piece by piece.

    Raises :class:`HypothesisViolation` naming the first piece that cannot be
    colored.
    """
    out = {}
    for piece in components(G, X):
        H = induced(G, piece)
        col = choose_least("vertex", H, palette, time_budget)
        if col is None:
            raise HypothesisViolation(
                f"hypothesis violated: {what} containing vertex {min(piece)} is not {palette}-colorable",
                block=sorted(piece),
            )
        out.update(col)
    return out


def color_blockwise(G, W, k: int, time_budget=DEFAULT_TIME_BUDGET) -> dict:
    """Proper coloring with at most ``k(s+1)`` colors."""
    k = check_positive("k", k)
    col = {}
    for i, part in enumerate(W.parts):
        c = least_vertex_coloring(G, part, k, time_budget, what="component")
        col.update((v, i * k + x) for v, x in c.items())
    return dict(sorted(col.items()))


@dataclass
class OverlapState:
    k: int
    partial: list  # partial[i]: vertex -> color in 0..k-1 on B(U_i, 1)
    coloring: dict


def overlap_color(k: int, i: int, c: int) -> int:
    """Flattened color of the pair ``(i, c)``; 0 is reserved for the shared class."""
    return 1 + i * (k - 1) + c


def color_overlap(G, W, k: int, time_budget=DEFAULT_TIME_BUDGET, return_state: bool = False):
    """Proper coloring with at most ``k(s+1) - s`` colors (witness scale at least 4)."""
    k = check_positive("k", k)
    if W.scale < OVERLAP_MIN_SCALE:
        raise ScaleTooSmall(f"overlap coloring needs scale >= {OVERLAP_MIN_SCALE}, got {W.scale}")
    partial = []
    for part in W.parts:
        dom = ball(G, part, 1)
        partial.append(least_vertex_coloring(G, dom, k, time_budget, what="neighborhood of a component"))
    col = {}
    for v in G.vertices:
        col[v] = 0
        for i, c in enumerate(partial):
            x = c.get(v)
            if x is not None and x != k - 1:
                col[v] = overlap_color(k, i, x)
                break
    col = dict(sorted(col.items()))
    if return_state:
        return OverlapState(k, partial, col)
    return col


# -- as ASI algorithms --------------------------------------------------------


@register("blockwise")
class BlockwiseAlgorithm(AsiAlgorithm):
    name = "blockwise"

    def __init__(self, k: int = 2, time_budget=DEFAULT_TIME_BUDGET):
        super().__init__()
        self.k = k
        self.time_budget = time_budget

    def stages(self, W) -> int:
        return 0

    def solve(self, G, W):
        return color_blockwise(G, W, self.k, self.time_budget)


@register("overlap")
class OverlapAlgorithm(AsiAlgorithm):
    """Needs two stages: a neighbor component's radius-one ball reaches
    components two steps away from the focus."""

    name = "overlap"

    def __init__(self, k: int = 2, time_budget=DEFAULT_TIME_BUDGET):
        super().__init__()
        self.k = k
        self.time_budget = time_budget

    def min_scale(self) -> int:
        return OVERLAP_MIN_SCALE

    def stages(self, W) -> int:
        return 2

    def solve(self, G, W):
        return color_overlap(G, W, self.k, self.time_budget)


# -- estimators ---------------------------------------------------------------


class BlockwiseColoring(GraphEstimator):
    """Estimator front-end for :func:`color_blockwise`.

    Fitted attributes: ``coloring_``, ``n_colors_``, ``witness_``.
    """

    def __init__(self, k: int = 2, scale: int = 1, s: int = 1, time_budget: float = DEFAULT_TIME_BUDGET):
        self.k = k
        self.scale = scale
        self.s = s
        self.time_budget = time_budget

    def fit(self, G, witness=None):
        G, W = self._prepare(G, witness)
        self.coloring_ = color_blockwise(G, W, self.k, self.time_budget)
        self.n_colors_ = len(set(self.coloring_.values()))
        self.result_ = self.coloring_
        return self


class OverlapColoring(GraphEstimator):
    """Estimator front-end for :func:`color_overlap`.

    Fitted attributes: ``coloring_``, ``n_colors_``, ``witness_`` and
    ``partial_`` (the per-part colorings of radius-one neighborhoods).
    """

    def __init__(self, k: int = 2, scale: int = OVERLAP_MIN_SCALE, s: int = 1, time_budget: float = DEFAULT_TIME_BUDGET):
        self.k = k
        self.scale = scale
        self.s = s
        self.time_budget = time_budget

    def _min_scale(self):
        return OVERLAP_MIN_SCALE

    def fit(self, G, witness=None):
        G, W = self._prepare(G, witness)
        state = color_overlap(G, W, self.k, self.time_budget, return_state=True)
        self.coloring_ = state.coloring
        self.partial_ = state.partial
        self.n_colors_ = len(set(self.coloring_.values()))
        self.result_ = self.coloring_
        return self
