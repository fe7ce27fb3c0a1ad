import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from asilab.exceptions import ScaleTooSmall
from asilab.families import infinite_path
from asilab.generators import long_path, random_tree
from asilab.graph import ball, power_components, set_distance
from asilab.subordinate import check_layers, is_subordinate, layers, required_scale
from asilab.witness import AsiWitness, build_witness_parity, component_graph


def test_empty_set_is_subordinate(path6):
    assert is_subordinate(path6, AsiWitness(1, [[0, 1, 4, 5], [2, 3]]), set(), 0, 1)


def test_whole_component_is_subordinate(path6):
    rep = is_subordinate(path6, AsiWitness(1, [[0, 1, 4, 5], [2, 3]]), {2, 3}, 0, 1)
    assert rep.ok and rep.certificate == {2: 2}


def test_far_components_joined_by_a_power_path():
    # E touches components 0 and 40 and, at R = 2, the evens in between chain them
    G = long_path(60)
    W = build_witness_parity(G, 4)
    cg = component_graph(G, W)
    E = set(range(0, 41, 2))
    a, b = cg.component_of(0), cg.component_of(40)
    assert len(cg.ball(a.key, 3)) < len(cg) and b.key not in cg.ball(a.key, 2)
    rep = is_subordinate(G, W, E, 1, 2)
    assert not rep.ok and rep.failures == [0]


def test_certificates_reverify():
    G = random_tree(120, seed=4)
    W = build_witness_parity(G, 17)
    cg = component_graph(G, W)
    family = layers(G, W, 2, 1, 4)
    E = ball(G, family.layer(1, 0), 1)
    rep = is_subordinate(G, W, E, 1, 1, cg)
    assert rep.ok
    for piece in power_components(G, E, 1):
        reach = cg.ball(rep.certificate[min(piece)], 1)
        assert {cg.owner[v] for v in piece} <= reach.keys()


def test_first_layer_is_the_part():
    G = long_path(50)
    W = build_witness_parity(G, 3)
    fam = layers(G, W, 1, 1, 1)
    assert fam.layer(0, 0) == W.parts[0]


def test_scale_boundary():
    G = long_path(50)
    k, l1, l2 = 2, 1, 3
    with pytest.raises(ScaleTooSmall):
        layers(G, build_witness_parity(G, 2 * k * max(l1, l2)), k, l1, l2)
    layers(G, build_witness_parity(G, required_scale(k, l1, l2)), k, l1, l2)


def test_long_path_properties():
    G = long_path(201)
    W = build_witness_parity(G, required_scale(3, 1, 4))
    fam = layers(G, W, 3, 1, 4, verify=False)
    checks = check_layers(G, W, fam)
    assert checks
    for j in range(W.s):
        for i in range(3):
            for i2 in range(i + 1, 3):
                d = set_distance(G, fam.layer(i, j), fam.layer(i2, j))
                assert d is None or d >= 4


def test_lazy_layers_need_region():
    G = infinite_path()
    W = build_witness_parity(G, 17)
    with pytest.raises(ValueError):
        layers(G, W, 2, 1, 4)
    fam = layers(G, W, 2, 1, 4, region=range(60))
    finite = layers(long_path(200), build_witness_parity(long_path(200), 17), 2, 1, 4, verify=False)
    for i in range(2):
        assert fam.layer(i, 0) == {v for v in finite.layer(i, 0) if v < 60}


@given(st.integers(0, 10**6), st.integers(1, 3), st.integers(1, 3))
@settings(max_examples=20)
def test_layers_deterministic_and_sound(seed, k, l):
    G = random_tree(80, seed=seed)
    W = build_witness_parity(G, required_scale(k, l, l))
    a = layers(G, W, k, l, l)
    b = layers(G, W, k, l, l)
    assert a.to_dict() == b.to_dict()
