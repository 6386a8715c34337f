import numpy as np

from conics.groups import PermGroup, compose, inverse


def cycle(n: int) -> np.ndarray:
    return np.roll(np.arange(n), -1)


def test_compose_and_inverse():
    p = np.array([1, 2, 0])
    assert (compose(p, inverse(p)) == np.arange(3)).all()


def test_order_and_orbits():
    G = PermGroup(5, [cycle(5), np.array([0, 4, 3, 2, 1])])
    assert G.order() == 10
    assert G.orbits == [[0, 1, 2, 3, 4]]


def test_identity_generators_are_dropped():
    G = PermGroup(4, [np.arange(4)])
    assert G.generators == []
    assert G.order() == 1
    assert G.orbits == [[0], [1], [2], [3]]


def test_elements_respect_the_limit():
    G = PermGroup(4, [cycle(4), np.array([1, 0, 2, 3])])
    assert len(G.elements()) == 24
    assert G.elements(limit=10) is None


def test_setwise_stabilizer_and_orbit_representatives():
    G = PermGroup(4, [cycle(4)])
    assert G.setwise_stabilizer({0, 2}).order() == 2
    reps = G.set_orbit_representatives([frozenset({0, 1}), frozenset({1, 2}), frozenset({0, 2})])
    assert reps == [frozenset({0, 1}), frozenset({0, 2})]


def test_induced_action_on_blocks():
    G = PermGroup(4, [np.array([2, 3, 0, 1])])
    H = G.induced([[0, 1], [2, 3]])
    assert H.order() == 2
    assert (H.generators[0] == np.array([1, 0])).all()


def test_pointwise_stabilizer():
    G = PermGroup(4, [cycle(4), np.array([1, 0, 2, 3])])
    assert G.pointwise_stabilizer([0]).order() == 6
