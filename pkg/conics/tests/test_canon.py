import itertools

import numpy as np

from conics.canon import ColoredGraph, automorphism_group, canonical_form, isomorphism


def cycle_graph(n: int, order=None) -> ColoredGraph:
    order = list(range(n)) if order is None else list(order)
    A = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        a, b = order[i], order[(i + 1) % n]
        A[a, b] = A[b, a] = 1
    return ColoredGraph.build([0] * n, A)


def petersen() -> ColoredGraph:
    pairs = list(itertools.combinations(range(5), 2))
    n = len(pairs)
    A = np.zeros((n, n), dtype=np.int64)
    for i, j in itertools.combinations(range(n), 2):
        if not set(pairs[i]) & set(pairs[j]):
            A[i, j] = A[j, i] = 1
    return ColoredGraph.build([0] * n, A)


def test_cycle_automorphisms():
    aut = automorphism_group(cycle_graph(6))
    assert aut.order == 12
    assert aut.orbit_sizes[0] == 6


def test_petersen_automorphisms():
    assert automorphism_group(petersen()).order == 120


def test_vertex_colours_cut_the_group():
    A = cycle_graph(4).adjacency
    assert automorphism_group(ColoredGraph.build([1, 0, 0, 0], A)).order == 2


def test_edge_colours_count():
    A = cycle_graph(4).adjacency.copy()
    A[0, 1] = A[1, 0] = 2
    assert automorphism_group(ColoredGraph.build([0] * 4, A)).order == 2


def test_canonical_form_is_invariant():
    g1 = cycle_graph(7)
    g2 = cycle_graph(7, order=[3, 0, 5, 1, 6, 2, 4])
    assert canonical_form(g1).certificate == canonical_form(g2).certificate
    p = isomorphism(g1, g2)
    assert p is not None
    assert (g2.adjacency[np.ix_(p, p)] == g1.adjacency).all()


def test_non_isomorphic_graphs():
    path = cycle_graph(5).adjacency.copy()
    path[0, 4] = path[4, 0] = 0
    g = ColoredGraph.build([0] * 5, path)
    assert isomorphism(g, cycle_graph(5)) is None
    assert canonical_form(g).certificate != canonical_form(cycle_graph(5)).certificate
