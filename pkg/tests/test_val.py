import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from asilab.edge_coloring import val_hypotheses, weak_val_hypotheses
from asilab.exceptions import MalformedInput
from asilab.generators import random_multigraph
from asilab.graph import EdgeSlot, StructuredMultigraph, induced
from asilab.oracles import chromatic_index


def test_double_edge():
    H = StructuredMultigraph([0, 1], [[0, 1, 2]])
    v = val_hypotheses(H, EdgeSlot(0, 1, 0), 0, 1, 2, evaluate_conclusion=True)
    assert v.conditions["colorable_without_e"]
    # z = 1: deg 2 <= 2 - 2 + 1 fails
    assert not v.conditions["degree_bound"]
    assert v.conclusion


def test_star():
    H = StructuredMultigraph(range(4), [[0, 1], [0, 2], [0, 3]])
    for leaf in (1, 2, 3):
        v = val_hypotheses(H, (0, leaf), leaf, 0, 3)
        assert v.hypotheses_hold


def test_edge_must_exist():
    H = StructuredMultigraph(range(3), [[0, 1]])
    with pytest.raises(MalformedInput):
        val_hypotheses(H, (1, 2), 1, 2, 3)


def test_weak_empty_set():
    H = StructuredMultigraph(range(3), [[0, 1], [1, 2], [0, 2]])
    for k in (2, 3):
        v = weak_val_hypotheses(H, set(), k, 1)
        assert v.conditions["degree_bound"]
        assert v.conditions["colorable_outside"] == (chromatic_index(H).value <= k)


def test_weak_isolated_vertices():
    H = StructuredMultigraph(range(5), [[0, 1], [1, 2]])
    v = weak_val_hypotheses(H, {3, 4}, 2, 1)
    assert v.hypotheses_hold and v.conclusion == v.conditions["colorable_outside"]


def test_weak_counts_members_of_u_as_neighbors():
    # a triangle with every vertex in U: no vertex outside U, yet chi' = 3 > 2
    H = StructuredMultigraph(range(3), [[0, 1], [1, 2], [0, 2]])
    v = weak_val_hypotheses(H, {0, 1, 2}, 2, 1)
    assert not v.conditions["degree_bound"]


def test_exhaustive_four_vertices():
    pairs = list(itertools.combinations(range(4), 2))
    for mult in itertools.product(range(3), repeat=len(pairs)):
        if sum(mult) > 7:
            continue
        H = StructuredMultigraph(range(4), [(u, v, m) for (u, v), m in zip(pairs, mult) if m])
        for k in range(max(1, H.max_degree), 4):
            for e in H.edge_slots():
                for x, y in ((e.u, e.v), (e.v, e.u)):
                    v = val_hypotheses(H, e, x, y, k, evaluate_conclusion=True)
                    assert not v.hypotheses_hold or v.conclusion


@given(st.integers(0, 10**6), st.data())
@settings(max_examples=40)
def test_weak_random(seed, data):
    H = random_multigraph(data.draw(st.integers(2, 8)), seed=seed, max_degree=4, p=2)
    p = max(1, H.max_multiplicity)
    k = data.draw(st.integers(max(1, H.max_degree), 5))
    U = data.draw(st.sets(st.sampled_from(H.vertices)))
    v = weak_val_hypotheses(H, U, k, p)
    if v.hypotheses_hold:
        assert v.conclusion
        assert chromatic_index(induced(H, set(H.vertices) - U)).value <= k
