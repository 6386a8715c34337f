import pytest

from conics.bounds import (
    combinatorial_bound,
    combinatorial_bound_D,
    compatibility_graph,
    compute_bounds,
    max_family,
)
from conics.symmetry import decompose_orbits


@pytest.mark.parametrize(
    "m, n, expected",
    [(0, 5, 1), (1, 5, 1), (2, 10, 5), (3, 9, 12), (3, 10, 13), (4, 8, 14), (7, 5, 0)],
)
def test_combinatorial_bound(m, n, expected):
    assert combinatorial_bound(m, n) == expected


def test_table_agrees_with_clique_search():
    assert max_family(6, 3) == combinatorial_bound(3, 6) == 4


def test_bound_over_all_sizes():
    assert combinatorial_bound_D(4) >= combinatorial_bound(2, 4) + combinatorial_bound(4, 4)


def test_compatibility_graph(config_b):
    decomp = decompose_orbits(config_b)
    G = compatibility_graph(decomp, range(config_b.size))
    assert G.number_of_edges() == 11 * 10 // 2


def test_orbit_bounds(config_b):
    decomp = compute_bounds(decompose_orbits(config_b))
    for i, orb in enumerate(decomp.combinatorial):
        if len(orb) == 2:
            # e_1 + e_k and e_1 - e_k together span the root e_1
            assert decomp.bounds[i] == (frozenset({0, 1}), 1)
        else:
            assert decomp.bnd(i) == 0
    assert decomp.bnd_total(range(6)) == 5
