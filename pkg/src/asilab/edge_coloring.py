"""Edge coloring ``k``-edge-colorable multigraphs with ``k + p*s`` colors.

The peel mirrors the perfect-graph case with matchings instead of
independent sets.  Each step removes ``p`` color classes of a coloring of
the edges near the current layer, then a maximal matching of what is left
that contains one color class of a coloring away from the layers.  The
adjacency-lemma checkers below are the reason the edge chromatic number
drops by one per step; they are exposed separately so that guarantee can
be tested on small multigraphs.

Edges are addressed as :class:`EdgeSlot` ``(u, v, slot)`` with ``u < v``;
parallel edges are the slots ``0 .. m-1`` of one pair.

Layer separation: a removed edge lies inside the radius-3 ball of its layer,
so edges from two layers can only share an endpoint when the layers are at
most 6 apart.  The default separation is 7.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .base import GraphEstimator
from .exceptions import HypothesisViolation, InvariantViolation, MalformedInput
from .graph import EdgeSlot, StructuredMultigraph, ball
from .runtime import AsiAlgorithm, register
from .search import DEFAULT_TIME_BUDGET, least_coloring
from .subordinate import LayerFamily, layers, required_scale

DEFAULT_SEPARATION = 7
GREEDY_MIN_SCALE = 4


def _slot_pieces(slots) -> list[list[EdgeSlot]]:
    parent: dict[int, int] = {}

    def find(a):
        while parent.setdefault(a, a) != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for e in slots:
        ra, rb = find(e.u), find(e.v)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    groups = defaultdict(list)
    for e in slots:
        groups[find(e.u)].append(e)
    return [sorted(g) for _, g in sorted(groups.items())]


def least_edge_coloring(slots, palette: int, time_budget=DEFAULT_TIME_BUDGET, what: str = "block") -> dict:
    """Least proper edge coloring of a slot set, one connected piece at a time."""
    out = {}
    for piece in _slot_pieces(sorted(set(slots))):
        at = defaultdict(list)
        for e in piece:
            at[e.u].append(e)
            at[e.v].append(e)
        col = least_coloring(piece, {e: at[e.u] + at[e.v] for e in piece}, palette, time_budget)
        if col is None:
            raise HypothesisViolation(
                f"hypothesis violated: {what} at vertex {piece[0].u} has no proper {palette}-edge-coloring",
                block=[tuple(e) for e in piece],
            )
        out.update(col)
    return out


def _endpoints(slots) -> set[int]:
    return {x for e in slots for x in (e.u, e.v)}


def _degrees(slots) -> dict[int, int]:
    deg = defaultdict(int)
    for e in slots:
        deg[e.u] += 1
        deg[e.v] += 1
    return deg


def is_matching(slots) -> bool:
    seen = set()
    for e in slots:
        if e.u in seen or e.v in seen:
            return False
        seen.add(e.u)
        seen.add(e.v)
    return True


def greedy_maximal_matching(G, W, slots, start=()) -> frozenset:
    """Maximal matching of the slot set ``slots`` containing the matching ``start``.

    Part by part (``j = 0 .. s``), slots with both ends in ``B(U_j, 1)`` are
    scanned in slot order and added when both ends are still free.  Every
    edge lies in some such ball, so the result is maximal.
    """
    start = [EdgeSlot.of(*e) for e in start]
    if not is_matching(start):
        raise MalformedInput("the starting edge set is not a matching")
    slots = sorted(set(EdgeSlot.of(*e) for e in slots))
    live = set(slots)
    if any(e not in live for e in start):
        raise MalformedInput("the starting matching uses edges outside the graph")
    M = set(start)
    covered = _endpoints(M)
    for part in W.parts:
        region = ball(G, part, 1)
        for e in slots:
            if e.u in region and e.v in region and e.u not in covered and e.v not in covered:
                M.add(e)
                covered.update((e.u, e.v))
    return frozenset(M)


@dataclass
class EdgePeelResult:
    M: frozenset
    N: dict  # (j, l) -> frozenset of slots
    remaining: frozenset
    checks: dict = field(default_factory=dict)


def edge_peel_step(G, W, alive, S_sets, palette: int, p: int, time_budget=DEFAULT_TIME_BUDGET) -> EdgePeelResult:
    """One peel of the edge set ``alive`` whose edge chromatic number is at most ``palette``.

    Asserts the degree facts the guarantee rests on: afterwards every degree
    is below ``palette``, degrees near the layers are at most
    ``palette - p``, and the vertices near the layers whose degree exceeds
    ``palette - 1 - p`` form an independent set.
    """
    alive = frozenset(alive)
    k = palette - 1
    S = frozenset().union(*S_sets) if S_sets else frozenset()
    N: dict[tuple[int, int], frozenset] = {}
    taken: set[EdgeSlot] = set()
    for j, Sj in enumerate(S_sets):
        region = ball(G, Sj, 3)
        inside = [e for e in alive if e.u in region and e.v in region]
        d = least_edge_coloring(inside, palette, time_budget, what="layer neighborhood")
        for l in range(min(p, palette)):
            cls = frozenset(e for e, x in d.items() if x == l and e not in taken)
            N[(j, l)] = cls
            taken |= cls
    star = alive - taken
    away = [e for e in star if e.u not in S and e.v not in S]
    c = least_edge_coloring(away, palette, time_budget, what="block away from the layers")
    M = greedy_maximal_matching(G, W, star, (e for e, x in c.items() if x == 0))
    rest = star - M

    deg_star, deg = _degrees(star), _degrees(rest)
    near2 = ball(G, S, 2) if S else frozenset()
    cap = max(0, k - p + 1)
    for x, dx in deg.items():
        if dx > k:
            raise InvariantViolation(f"degree {dx} at vertex {x} exceeds {k} after the peel")
    for x in near2:
        if deg_star.get(x, 0) > cap:
            raise InvariantViolation(f"degree {deg_star[x]} at vertex {x} near the layers exceeds {cap}")
    hot = {x for x in near2 if deg.get(x, 0) > k - p}
    for e in rest:
        if e.u in hot and e.v in hot:
            raise InvariantViolation(f"high-degree vertices {e.u} and {e.v} near the layers are adjacent")
    return EdgePeelResult(M, N, rest, {"max_degree": max(deg.values(), default=0), "hot": len(hot)})


@dataclass
class EdgePeelRecord:
    step: int
    palette: int
    M: frozenset
    N: dict
    remaining: frozenset
    checks: dict


def edge_min_scale(k: int, separation: int = DEFAULT_SEPARATION) -> int:
    return max(required_scale(k, 3, separation), GREEDY_MIN_SCALE)


def edge_color(k: int, p: int, j: int, l: int) -> int:
    """Color of the ``l``-th removed class of part ``j``."""
    return k + j * p + l


def color_edges(
    G,
    W,
    k: int,
    p: int | None = None,
    separation: int = DEFAULT_SEPARATION,
    time_budget=DEFAULT_TIME_BUDGET,
    verify_layers: bool = False,
    family: LayerFamily | None = None,
    trace: list | None = None,
) -> dict:
    """Proper edge coloring with at most ``k + p*s`` colors, keyed by EdgeSlot.

    ``M_i`` gets color ``i`` and the ``l``-th class of part ``j`` gets
    ``k + j*p + l``.
    """
    if p is None:
        p = G.max_multiplicity
    if G.max_multiplicity > p:
        raise MalformedInput(f"edge multiplicity {G.max_multiplicity} exceeds p={p}")
    alive = frozenset(G.edge_slots())
    if k < 0 or int(k) != k:
        raise MalformedInput(f"k must be a natural number, got {k!r}")
    if k == 0:
        if alive:
            raise HypothesisViolation("hypothesis violated: a graph with edges is not 0-edge-colorable")
        return {}
    if W.scale < GREEDY_MIN_SCALE:
        from .exceptions import ScaleTooSmall

        raise ScaleTooSmall(f"edge coloring needs scale >= {GREEDY_MIN_SCALE}, got {W.scale}")
    if family is None:
        family = layers(G, W, k, 3, separation, verify=verify_layers)
    col: dict[EdgeSlot, int] = {}
    for i in range(k):
        step = edge_peel_step(G, W, alive, family.sets[i], k - i, p, time_budget)
        for e in step.M:
            col[e] = i
        for (j, l), cls in sorted(step.N.items()):
            for e in cls:
                col[e] = edge_color(k, p, j, l)
        if trace is not None:
            trace.append(EdgePeelRecord(i, k - i, step.M, step.N, step.remaining, step.checks))
        alive = step.remaining
    if alive:
        raise HypothesisViolation(
            f"hypothesis violated: {len(alive)} edges survive {k} peels, so the graph is not {k}-edge-colorable",
            block=[tuple(e) for e in sorted(alive)],
        )
    classes = defaultdict(list)
    for e, c in col.items():
        classes[c].append(e)
    for c, cls in classes.items():
        if not is_matching(cls):
            raise InvariantViolation(f"color class {c} is not a matching; layer separation {separation} is too small")
    return dict(sorted(col.items()))


# -- adjacency-lemma checkers -------------------------------------------------


@dataclass
class ValVerdict:
    conditions: dict  # name -> bool
    conclusion: bool | None = None  # chi'(H) <= k, when evaluated

    @property
    def hypotheses_hold(self) -> bool:
        return all(self.conditions.values())


def neighborhood(H, U) -> set[int]:
    """All vertices adjacent to some vertex of ``U``."""
    return {w for u in U for w in H.neighbor_set(u)}


def val_hypotheses(H: StructuredMultigraph, e, x: int, y: int, k: int, chi_index=None, evaluate_conclusion: bool = False) -> ValVerdict:
    """Evaluate the three adjacency-lemma conditions for edge ``e`` from ``x`` to ``y``.

    ``chi_index`` computes edge chromatic numbers (defaults to the exact
    oracle).  ``max_degree`` records the standing assumption ``Delta <= k``.
    """
    from .graph import edge_subgraph

    if chi_index is None:
        from .oracles import chromatic_index

        def chi_index(G):
            return chromatic_index(G).value

    e = EdgeSlot.of(*e) if len(e) == 3 else EdgeSlot.of(e[0], e[1], 0)
    if {e.u, e.v} != {x, y} or e.slot >= H.multiplicity(x, y):
        raise MalformedInput(f"{tuple(e)} is not an edge of H between {x} and {y}")
    others = [f for f in H.edge_slots() if f != e]
    minus = edge_subgraph(H, others, keep_vertices=True)
    cond = {"max_degree": H.max_degree <= k, "colorable_without_e": chi_index(minus) <= k}
    tight = 0
    ok2 = True
    for z in H.neighbor_set(x):
        bound = k - H.multiplicity(x, z) + 1
        dz = H.degree(z)
        ok2 &= dz <= bound
        if dz == bound and z != y:
            tight += 1
    cond["degree_bound"] = ok2
    cond["tight_count"] = tight <= k - H.degree(y) - H.multiplicity(x, y) + 1
    verdict = ValVerdict(cond)
    if evaluate_conclusion:
        verdict.conclusion = chi_index(H) <= k
    return verdict


def weak_val_hypotheses(H: StructuredMultigraph, U, k: int, p: int, chi_index=None, evaluate_conclusion: bool = True) -> ValVerdict:
    """Evaluate the two conditions of the weak adjacency lemma for the vertex set ``U``.

    When both hold (and ``Delta <= k``, multiplicity ``<= p``), the
    conclusion ``chi'(H) <= k`` is evaluated with the oracle.
    """
    from .graph import induced

    if chi_index is None:
        from .oracles import chromatic_index

        def chi_index(G):
            return chromatic_index(G).value

    U = frozenset(U)
    rest = induced(H, set(H.vertices) - U)
    cond = {
        "max_degree": H.max_degree <= k,
        "multiplicity": H.max_multiplicity <= p,
        "colorable_outside": chi_index(rest) <= k,
        "degree_bound": all(H.degree(y) <= k - p for y in neighborhood(H, U)),
    }
    verdict = ValVerdict(cond)
    if evaluate_conclusion and verdict.hypotheses_hold:
        verdict.conclusion = chi_index(H) <= k
    return verdict


# -- as an ASI algorithm, and the estimator -------------------------------------


@register("edge")
class EdgeAlgorithm(AsiAlgorithm):
    """Output items are edge slots, each owned by its lower endpoint.

    Each peel reaches three components out for the layer colorings, one
    for the away coloring and ``s + 1`` sequential greedy rounds, each
    needing one more for exact balls; ``k(6 + 3(s+1)) + 1`` stages cover it.
    """

    name = "edge"
    output = "edge"

    def __init__(self, k: int = 2, p: int = 1, separation: int = DEFAULT_SEPARATION, time_budget=DEFAULT_TIME_BUDGET):
        super().__init__()
        self.k = k
        self.p = p
        self.separation = separation
        self.time_budget = time_budget

    def min_scale(self) -> int:
        return edge_min_scale(self.k, self.separation)

    def stages(self, W) -> int:
        return self.k * (6 + 3 * (W.s + 1)) + 1

    def solve(self, G, W):
        return color_edges(G, W, self.k, self.p, self.separation, self.time_budget)


class MultigraphEdgeColoring(GraphEstimator):
    """Estimator front-end for :func:`color_edges`.

    ``p=None`` uses the largest multiplicity; ``k=None`` uses ``Delta + p``,
    which always bounds the edge chromatic number of such a multigraph.
    Fitted attributes: ``coloring_``, ``n_colors_``, ``k_``, ``p_``,
    ``witness_``, ``layers_``, ``peels_``.
    """

    def __init__(
        self,
        k: int | None = None,
        p: int | None = None,
        separation: int = DEFAULT_SEPARATION,
        scale: int | None = None,
        s: int = 1,
        verify_layers: bool = False,
        time_budget: float = DEFAULT_TIME_BUDGET,
    ):
        self.k = k
        self.p = p
        self.separation = separation
        self.scale = scale
        self.s = s
        self.verify_layers = verify_layers
        self.time_budget = time_budget

    def _min_scale(self):
        return edge_min_scale(self.k_, self.separation)

    def fit(self, G, witness=None):
        from .validation import check_graph

        G = check_graph(G, allow_lazy=False)
        self.p_ = self.p if self.p is not None else G.max_multiplicity
        self.k_ = self.k if self.k is not None else G.max_degree + self.p_
        G, W = self._prepare(G, witness)
        self.layers_ = layers(G, W, self.k_, 3, self.separation, verify=self.verify_layers) if self.k_ else None
        self.peels_ = []
        self.coloring_ = color_edges(
            G, W, self.k_, self.p_, self.separation, self.time_budget, family=self.layers_, trace=self.peels_
        )
        self.n_colors_ = len(set(self.coloring_.values()))
        self.result_ = self.coloring_
        return self
