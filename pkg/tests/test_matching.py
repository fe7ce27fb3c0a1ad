import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from asilab.exceptions import FuelExhausted, HypothesisViolation
from asilab.families import infinite_path, layered_tree, regular_tree
from asilab.graph import StructuredMultigraph, components, induced
from asilab.matching import AcyclicPerfectMatching, MatchingStream, local_matching_block, matching_stream
from asilab.oracles import verify


def _chain_tree():
    """0 has neighbors 1, 4 and the chain 5-6-7-8 ending at the branch vertex 9.

    Every vertex the repair looks at, except the chain, keeps degree 3.
    """
    edges = [(0, 1), (0, 4), (0, 5), (5, 6), (6, 7), (7, 8), (8, 9)]
    nxt = 10
    for v, extra in ((1, 2), (4, 2), (9, 2)):
        for _ in range(extra):
            edges.append((v, nxt))
            nxt += 1
    # the children of 1 and 4 need two further neighbors each
    for v in range(10, 14):
        edges += [(v, nxt), (v, nxt + 1)]
        nxt += 2
    return StructuredMultigraph(range(nxt), edges)


def test_single_edge_when_neighbors_are_rich():
    G = regular_tree(3)
    block = local_matching_block(G, set(), 0)
    assert block.edges == ((0, 1),) and block.rounds == 0


@pytest.mark.parametrize("x", range(0, 40, 7))
def test_regular_tree_blocks_are_single_edges(x):
    assert len(local_matching_block(regular_tree(3), set(), x).edges) == 1


def test_chain_propagates():
    block = local_matching_block(_chain_tree(), set(), 0)
    assert block.edges == ((0, 1), (5, 6), (7, 8))
    assert block.rounds == 2


def test_covered_vertex_rejected():
    with pytest.raises(ValueError):
        local_matching_block(regular_tree(3), {0}, 0)


def test_path_never_closes():
    with pytest.raises(FuelExhausted) as err:
        matching_stream(infinite_path(), 0, fuel=500)
    assert err.value.partial["stage"] == 0 and len(err.value.partial["block"]) > 10


def test_alternating_degree_two_path_exhausts_fuel():
    # degrees 3, 2, 3, 2, ... down every branch: every other vertex has degree 2
    G = layered_tree((3, 2))
    with pytest.raises(FuelExhausted):
        matching_stream(G, 0, fuel=20000)


def test_finite_cycle_detected():
    G = StructuredMultigraph(range(4), [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)])
    with pytest.raises(HypothesisViolation):
        local_matching_block(G, set(), 1)


def test_stream_zero():
    M = matching_stream(regular_tree(3), 0)
    assert M == [(0, 1)]


def _check_stream(G, upto):
    M = matching_stream(G, upto)
    covered = {v for e in M for v in e}
    assert set(range(upto + 1)) <= covered
    assert all(G.multiplicity(u, v) for u, v in M)
    assert verify("matching", induced(G, covered), M, cover=range(upto + 1)).ok
    return M


@pytest.mark.parametrize("uri", ["tree?d=3", "layered?degrees=3.2.2", "layered?degrees=4.2.2.3"])
def test_stream_covers_and_is_consistent(uri):
    from asilab.families import parse_family

    G = parse_family("family:" + uri)
    small, big = _check_stream(G, 50), _check_stream(G, 99)
    assert big[: len(small)] == small


def test_blocks_are_connected_and_injective():
    G = layered_tree((3, 2, 2))
    stream = MatchingStream(G)
    stream.advance(80)
    for block in stream.blocks:
        verts = {v for e in block.edges for v in e}
        assert len(components(induced(G, verts))) == 1
        targets = [e[1] for e in block.edges[1:]]
        assert len(targets) == len(set(targets))


@given(st.integers(2, 3), st.integers(0, 60))
@settings(max_examples=20)
def test_incremental_advance(d, cut):
    G = layered_tree((3, 2, 2)) if d == 2 else regular_tree(d)
    s = MatchingStream(G)
    s.advance(cut)
    s.advance(70)
    assert s.matching() == matching_stream(G, 70)


def test_estimator():
    est = AcyclicPerfectMatching(upto=30).fit(regular_tree(3))
    assert set(range(31)) <= est.covered_
    assert est.predict() == est.matching_
