import numpy as np
import pytest

from conics.configuration import load_configuration
from conics.groups import PermGroup
from conics.symmetry import (
    combinatorial_orbits,
    decompose_orbits,
    is_isometry,
    product_stabilizer,
    reflection_permutations,
)
from .conftest import unit


def test_no_reflections(config_a):
    assert reflection_permutations(config_a) == []
    decomp = decompose_orbits(config_a)
    assert decomp.combinatorial == [[i] for i in range(15)]
    assert decomp.singles == list(range(15))


def test_reflections_pair_conics(config_b):
    orbits = combinatorial_orbits(config_b)
    assert sorted(len(o) for o in orbits) == [1, 2, 2, 2, 2, 2]
    assert orbits == sorted(orbits)
    for orb in orbits:
        if len(orb) == 2:
            a, b = config_b.conics[orb]
            assert a[0] == b[0] == 1
            assert (a[1:] == -b[1:]).all()


def test_decomposition_without_lattice(config_b):
    decomp = decompose_orbits(config_b)
    assert decomp.stabilizer_order is None
    assert len(decomp.orbits) == 6
    assert decomp.counts(range(config_b.size)).tolist() == [len(o) for o in decomp.combinatorial]
    data = decomp.to_dict()
    assert data["conics"] == 11
    assert sum(data["combinatorial_orbits"]) == 11


@pytest.mark.slow
@pytest.mark.parametrize("name, order", [("24A1#4", 20160), ("12A2#2", 720)])
def test_stabilizer_orders(name, order):
    decomp = decompose_orbits(load_configuration(name))
    assert decomp.stabilizer_order == order


@pytest.mark.slow
def test_reflection_only_skips_the_stabilizer():
    decomp = decompose_orbits(load_configuration("12A2#2"), reflection_only=True)
    assert decomp.stabilizer_order is None
    assert len(decomp.orbits) == len(decomp.combinatorial)


def test_product_graph_stabilizer(config_a):
    # the coordinate permutations of 2I_6, acting on pairs
    order, generators = product_stabilizer(config_a)
    assert order == 720
    assert all(is_isometry(config_a, g) for g in generators)
    decomp = decompose_orbits(config_a)
    assert decomp.stabilizer_order == 720
    assert decomp.orbits == [list(range(15))]


def test_product_graph_needs_full_rank(config_b):
    assert config_b.rank == 7
    assert product_stabilizer(config_b) is None


def test_transposition_of_two_conics(config_a):
    # e1 + e2 <-> e1 + e3 alone moves the product with e2 + e4
    perm = np.arange(config_a.size)
    i = config_a.index_of(unit(6, (0, 1), (1, 1)))
    j = config_a.index_of(unit(6, (0, 1), (2, 1)))
    perm[[i, j]] = perm[[j, i]]
    assert not is_isometry(config_a, perm)
    # the transposition (2 3) of coordinates is one
    swap = [config_a.index_of(tuple(v[[0, 2, 1, 3, 4, 5]])) for v in config_a.conics]
    assert is_isometry(config_a, np.array(swap))


@pytest.mark.slow
def test_stabilizer_away_from_a_n():
    # 6D4#1 is built by replanting 24A1#11, without a code graph; both share F, hence O_hbar
    d4 = load_configuration("6D4#1")
    a1 = load_configuration("24A1#11")
    assert not d4.niemeier.components
    decomp = decompose_orbits(d4)
    assert decomp.stabilizer_order is not None
    weyl_d4 = PermGroup(d4.size, reflection_permutations(d4)).order()
    weyl_a1 = PermGroup(a1.size, reflection_permutations(a1)).order()
    assert decomp.stabilizer_order * weyl_d4 == 2160 * weyl_a1
    assert decomp.group.order() == decomp.stabilizer_order * weyl_d4
