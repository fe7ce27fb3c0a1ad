import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from asilab.edge_coloring import (
    MultigraphEdgeColoring,
    color_edges,
    edge_color,
    edge_min_scale,
    edge_peel_step,
    greedy_maximal_matching,
    is_matching,
)
from asilab.exceptions import HypothesisViolation, InvariantViolation, MalformedInput, ScaleTooSmall
from asilab.generators import doubled_path, long_path, random_multigraph
from asilab.graph import EdgeSlot, StructuredMultigraph, ball, edge_subgraph
from asilab.oracles import chromatic_index, verify
from asilab.witness import AsiWitness, build_witness_parity

from .conftest import path_graph

# Found by random search: at separation 6 two removed classes of one part
# that share a color meet at a vertex.
SEP6_CASES = [
    (
        StructuredMultigraph(range(7), [[0, 2, 2], [0, 5, 2], [1, 5, 2], [2, 4, 2], [3, 4, 2], [3, 6, 1]]),
        5,
        [[1], [0, 2, 3, 4, 5, 6]],
    ),
    (
        StructuredMultigraph(
            range(10),
            [[0, 6, 1], [0, 8, 2], [1, 4, 1], [1, 8, 1], [1, 9, 1], [2, 4, 2], [2, 9, 1], [3, 5, 1], [3, 7, 2], [5, 9, 1]],
        ),
        4,
        [[6], [0, 1, 2, 3, 4, 5, 7, 8, 9]],
    ),
]


def _slots(*pairs):
    return [EdgeSlot.of(u, v) for u, v in pairs]


def test_greedy_on_empty():
    G = path_graph(4)
    W = build_witness_parity(G, 4)
    assert greedy_maximal_matching(G, W, []) == frozenset()


def test_greedy_on_path():
    G = path_graph(4)
    W = build_witness_parity(G, 4)
    assert greedy_maximal_matching(G, W, G.edge_slots()) == set(_slots((0, 1), (2, 3)))


def test_greedy_keeps_start():
    G = path_graph(4)
    W = build_witness_parity(G, 4)
    assert greedy_maximal_matching(G, W, G.edge_slots(), _slots((1, 2))) == set(_slots((1, 2)))


def test_greedy_rejects_non_matching_start():
    G = path_graph(4)
    with pytest.raises(MalformedInput):
        greedy_maximal_matching(G, build_witness_parity(G, 4), G.edge_slots(), _slots((0, 1), (1, 2)))


@given(st.integers(0, 10**6))
@settings(max_examples=40)
def test_greedy_is_maximal(seed):
    G = random_multigraph(12, seed=seed)
    M = greedy_maximal_matching(G, build_witness_parity(G, 4), G.edge_slots())
    assert is_matching(M)
    covered = {x for e in M for x in (e.u, e.v)}
    assert all(e.u in covered or e.v in covered for e in G.edge_slots())


def test_single_edge_peel():
    G = path_graph(2)
    W = AsiWitness(4, [[0, 1], []])
    step = edge_peel_step(G, W, G.edge_slots(), [frozenset()], 2, 1)
    assert not step.remaining and step.M == set(G.edge_slots())


def test_doubled_path_peel_drops_chi():
    G = doubled_path(8)
    W = AsiWitness(edge_min_scale(4), [list(G.vertices), []])
    S = [frozenset({0})]
    step = edge_peel_step(G, W, G.edge_slots(), S, 5, 2)
    region = ball(G, S[0], 3)
    for cls in step.N.values():
        assert all(e.u in region and e.v in region for e in cls)
    assert chromatic_index(edge_subgraph(G, step.remaining)).value <= 4


def test_long_path():
    G = long_path(500)
    col = color_edges(G, build_witness_parity(G, edge_min_scale(2)), 2, 1)
    rep = verify("edge", G, col)
    assert rep.ok and rep.n_colors <= 3


def test_doubled_long_path():
    G = doubled_path(500)
    col = color_edges(G, build_witness_parity(G, edge_min_scale(4)), 4, 2)
    rep = verify("edge", G, col)
    assert rep.ok and rep.n_colors <= 6


def test_random_multigraph_twelve():
    G = random_multigraph(12, seed=8)
    k = chromatic_index(G, limit=None).value
    col = color_edges(G, build_witness_parity(G, edge_min_scale(k)), k, G.max_multiplicity)
    rep = verify("edge", G, col)
    assert rep.ok and rep.n_colors <= k + G.max_multiplicity


def test_palette_layout():
    assert [edge_color(3, 2, j, l) for j in range(2) for l in range(2)] == [3, 4, 5, 6]


def test_too_few_colors():
    G = StructuredMultigraph(range(3), [[0, 1], [1, 2], [0, 2]])
    with pytest.raises(HypothesisViolation):
        color_edges(G, AsiWitness(edge_min_scale(2), [[0, 1, 2], []]), 2, 1)


def test_scale_check():
    G = long_path(30)
    with pytest.raises(ScaleTooSmall):
        color_edges(G, build_witness_parity(G, edge_min_scale(2) - 1), 2, 1)


def test_multiplicity_check():
    with pytest.raises(MalformedInput):
        color_edges(doubled_path(5), AsiWitness(29, [list(range(5)), []]), 4, 1)


@pytest.mark.parametrize("G, k, parts", SEP6_CASES)
def test_separation_six_fails_on_known_instances(G, k, parts):
    assert chromatic_index(G).value <= k
    with pytest.raises(InvariantViolation, match="separation 6"):
        color_edges(G, AsiWitness(edge_min_scale(k, 6), parts), k, 2, separation=6)


@pytest.mark.parametrize("G, k, parts", SEP6_CASES)
def test_separation_seven_handles_known_instances(G, k, parts):
    col = color_edges(G, AsiWitness(edge_min_scale(k), parts), k, 2)
    assert verify("edge", G, col).ok


@given(st.integers(0, 10**6), st.integers(1, 2))
@settings(max_examples=25)
def test_peel_invariants(seed, p):
    G = random_multigraph(9, seed=seed, max_degree=4, p=p)
    if G.n_edges == 0:
        return
    k = chromatic_index(G, limit=None).value
    trace = []
    col = color_edges(G, build_witness_parity(G, edge_min_scale(k)), k, p, trace=trace)
    rep = verify("edge", G, col)
    assert rep.ok and rep.n_colors <= k + p and rep.n_colors <= G.max_degree + 2 * p
    assert not trace[-1].remaining
    for rec in trace:
        if rec.remaining:
            rest = edge_subgraph(G, rec.remaining)
            assert chromatic_index(rest, limit=None).value <= k - rec.step - 1


def test_estimator_defaults():
    G = doubled_path(40)
    est = MultigraphEdgeColoring().fit(G)
    assert est.p_ == 2 and est.k_ == G.max_degree + 2
    assert verify("edge", G, est.coloring_).ok


@pytest.mark.parametrize("seed", range(25))
def test_pendant_paths_keep_chromatic_index(seed):
    # a pendant path extends any coloring of the core plus its first edge with two colors
    from asilab.generators import with_pendant_paths

    core = random_multigraph(4 + seed % 5, seed=seed, max_degree=4, p=1 + seed % 2)
    attach = sorted(core.vertices, key=lambda v: (core.degree(v), v))[:2]
    host = with_pendant_paths(core, 3, attach)
    first = max(core.vertices) + 1
    stub = StructuredMultigraph(
        list(core.vertices) + [first, first + 3],
        list(core.edges()) + [(attach[0], first, 1), (attach[1], first + 3, 1)],
    )
    assert chromatic_index(host, limit=None).value == max(chromatic_index(stub, limit=None).value, 2)
