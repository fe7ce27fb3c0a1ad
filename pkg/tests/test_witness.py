import itertools
import random

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from asilab.exceptions import InvalidWitness
from asilab.families import infinite_path, regular_tree
from asilab.graph import StructuredMultigraph, distance, power_components
from asilab.witness import (
    AsiWitness,
    ParityWitness,
    build_witness_parity,
    component_graph,
    pad_witness,
    parity_label,
    validate_witness,
)

from .conftest import path_graph, small_graphs


def brute_parity(G, r):
    """f and g straight from their definitions, over all pairs, in G^r."""
    nxg = nx.Graph(G.to_networkx())
    d = dict(nx.all_pairs_shortest_path_length(nxg))
    out = {}
    for x in G.vertices:
        best = None
        for y in G.vertices:
            if y not in d[x]:
                continue
            val = y + -(-d[x][y] // r)
            if best is None or (val, y) < best:
                best = (val, y)
        out[x] = (best[1], best[0])
    return out


def test_lazy_path_scale_one():
    G = infinite_path()
    for x in range(40):
        assert parity_label(G, x, 1) == (0, x)
    W = build_witness_parity(G, 1)
    assert [W.part_of(x) for x in range(6)] == [0, 1, 0, 1, 0, 1]


def test_single_vertex():
    W = build_witness_parity(StructuredMultigraph([0]), 1)
    assert W.parts == (frozenset({0}), frozenset())


def test_finite_path_scale_two_matches_definition():
    G = path_graph(10)
    W = build_witness_parity(G, 2)
    ref = brute_parity(G, 2)
    assert all(W.potential[x] == ref[x][1] for x in G.vertices)
    assert all(W.part_of(x) == ref[x][1] % 2 for x in G.vertices)


@given(small_graphs(max_n=10), st.integers(1, 3))
def test_parity_matches_definition(G, r):
    W = build_witness_parity(G, r)
    ref = brute_parity(G, r)
    for x in G.vertices:
        assert W.potential[x] == ref[x][1]


@given(small_graphs(max_n=10), st.integers(1, 3), st.integers(1, 3))
def test_potential_properties(G, r, s):
    W = build_witness_parity(G, r, s)
    g = W.potential
    for x, y in itertools.combinations(G.vertices, 2):
        d = distance(G, x, y, r)
        if d is not None:
            assert abs(g[x] - g[y]) <= 1
    for i, part in enumerate(W.parts):
        for comp in power_components(G, part, r):
            assert len({g[v] for v in comp}) == 1
            c = g[min(comp)]
            # every component lies within G^r-distance c of {0..c}
            low = [v for v in G.vertices if v <= c]
            assert all(any((d := distance(G, v, u)) is not None and -(-d // r) <= c for u in low) for v in comp)
    assert validate_witness(G, W).valid


def test_validate_path_witness(path6):
    W = AsiWitness(1, [[0, 1, 4, 5], [2, 3]])
    rep = validate_witness(path6, W)
    assert {c.vertices for c in rep.components.values()} == {frozenset({0, 1}), frozenset({4, 5}), frozenset({2, 3})}


def test_overlapping_parts_rejected():
    tri = StructuredMultigraph([0, 1, 2], [[0, 1], [1, 2], [0, 2]])
    with pytest.raises(InvalidWitness, match="not a partition"):
        validate_witness(tri, AsiWitness(1, [[0, 1], [1, 2]]))


def test_uncovered_vertex_rejected(path6):
    with pytest.raises(InvalidWitness, match="not a partition"):
        validate_witness(path6, AsiWitness(1, [[0, 1], [2, 3]]))


def test_lazy_path_probe_singletons():
    G = infinite_path()
    rep = validate_witness(G, build_witness_parity(G, 1), probe=range(100))
    assert all(len(c.vertices) == 1 for c in rep.components.values())


def test_component_graph_on_path(path6):
    cg = component_graph(path6, AsiWitness(1, [[0, 1, 4, 5], [2, 3]]))
    assert cg.adjacency == {0: {2}, 2: {0, 4}, 4: {2}}


def test_component_graph_single_component():
    G = path_graph(3)
    cg = component_graph(G, AsiWitness(1, [[0, 1, 2], []]))
    assert len(cg) == 1 and cg.adjacency == {0: frozenset()}


def test_lazy_component_graph_fragment():
    G = infinite_path()
    cg = component_graph(G, build_witness_parity(G, 1), around=10, radius=1)
    assert set(cg.by_key) == {9, 10, 11}
    assert cg.adjacency[10] == {9, 11}
    assert 10 in cg.adjacency[9] and 10 in cg.adjacency[11]


def test_pad_unchanged(path6):
    W = build_witness_parity(path6, 1)
    assert pad_witness(W, 1) == W


def test_pad_adds_empty_parts(path6):
    W = pad_witness(build_witness_parity(path6, 1), 3)
    assert W.s == 3 and W.parts[2] == W.parts[3] == frozenset()
    assert validate_witness(path6, W).valid


def test_pad_cannot_shrink(path6):
    with pytest.raises(ValueError):
        pad_witness(build_witness_parity(path6, 1, 2), 1)


def test_lazy_tree_witness_components_close():
    G = regular_tree(3)
    W = build_witness_parity(G, 2)
    rep = validate_witness(G, W, probe=range(50), fuel=10**5)
    assert all(rep.components[x].part == W.part_of(x) for x in range(50))


def test_parity_estimator():
    est = ParityWitness(scale=2).fit(path_graph(8))
    assert est.transform([0, 1, 2, 3, 4]) == [0, 1, 1, 0, 0]
    assert est.get_params() == {"scale": 2, "s": 1, "fuel": None}


@pytest.mark.parametrize("uri", ["path", "doubled-path", "grid", "tree?d=3", "layered?degrees=3.2.2"])
@pytest.mark.parametrize("r", [1, 2, 3])
def test_lazy_search_matches_single_vertex_route(uri, r):
    from asilab.families import parse_family

    G = parse_family("family:" + uri)
    W = build_witness_parity(G, r)
    # query out of order so the resumed search is exercised
    order = list(range(120))
    random.Random(r).shuffle(order)
    for x in order:
        assert W.label(x) == parity_label(G, x, r), (uri, r, x)
