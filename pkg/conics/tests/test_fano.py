import numpy as np
import pytest

from conics.errors import ConicsError, InvariantViolation
from conics.fano import FanoGraph, are_isomorphic, aut_order, build_graph, graph_certificate

from .conftest import unit


def test_products_become_multiplicities():
    G = FanoGraph.from_products([[4, 0, 2], [0, 4, 1], [2, 1, 4]])
    assert G.edges == [(0, 1, 2), (1, 2, 1)]
    assert G.degree_census() == {1: [0, 1, 1], 2: [0, 1, 1]}


def test_rejects_bad_multiplicities():
    with pytest.raises(InvariantViolation):
        FanoGraph(2, np.array([[0, 3], [3, 0]]))
    with pytest.raises(InvariantViolation):
        FanoGraph(2, np.array([[0, 1], [0, 0]]))


def test_all_conics_of_config_a_form_a_kneser_graph(config_a):
    L = config_a.conic_set(range(config_a.size))
    G = build_graph(L)
    assert G.n == 15
    # disjoint pairs are the double edges; the rest do not meet
    assert len(G.edges) == 45
    assert all(m == 2 for _, _, m in G.edges)
    assert aut_order(G) == 720


def test_export_formats_describe_the_same_graph(config_b):
    L = config_b.conic_set(range(config_b.size))
    G = build_graph(L)
    assert FanoGraph.from_dict(G.to_dict()).edges == G.edges
    assert FanoGraph.from_text(G.to_text()).edges == G.edges
    assert graph_certificate(FanoGraph.from_dict(G.to_dict())).certificate == graph_certificate(G).certificate


def test_json_export_is_sorted_and_compact():
    G = FanoGraph.from_products([[4, 1], [1, 4]])
    assert G.to_json() == '{"edges":[[0,1,1]],"n":2}'


def test_malformed_inputs():
    with pytest.raises(ConicsError):
        FanoGraph.from_dict({"edges": []})
    with pytest.raises(ConicsError):
        FanoGraph.from_text("01\n1\n")


def test_isomorphism_follows_relabelling(config_a):
    idx = [config_a.index_of(v) for v in (unit(6, (0, 1), (1, 1)), unit(6, (2, 1), (3, 1)), unit(6, (0, 1), (2, 1)))]
    other = [config_a.index_of(v) for v in (unit(6, (4, 1), (5, 1)), unit(6, (0, 1), (1, 1)), unit(6, (4, 1), (0, 1)))]
    G1 = build_graph(config_a.conic_set(idx))
    G2 = build_graph(config_a.conic_set(other))
    assert are_isomorphic(G1, G2)
