from fractions import Fraction

import pytest

from conics.canon import isomorphism
from conics.configuration import load_configuration
from conics.errors import ConicsError, UnknownCatalogEntryError
from conics.niemeier import (
    RootSystemComponent,
    build_leech,
    build_niemeier,
    candidates,
    catalog,
    hbar,
    parse_glue_word,
    replant,
)
from conics.symmetry import product_graph


def test_catalog_lists_glued_lattices_and_leech():
    assert catalog() == ["12A2", "24A1", "6A4", "6D4", "8A3", "Leech"]


def test_root_system_components():
    A2 = RootSystemComponent("A", 2)
    assert (A2.dim, A2.det, A2.root_count) == (3, 3, 6)
    D4 = RootSystemComponent("D", 4)
    assert (D4.dim, D4.det, D4.root_count) == (4, 4, 24)
    assert D4.add(1, 1) == 0
    assert A2.negate(1) == 2
    with pytest.raises(ConicsError):
        RootSystemComponent("E", 8)


def test_parse_glue_word():
    assert parse_glue_word("1(12)") == [(1, 1, 2), (1, 2, 1)]
    assert parse_glue_word("0123") == [(0, 1, 2, 3)]


@pytest.mark.parametrize("name, roots", [("24A1", 48), ("12A2", 72)])
def test_glued_lattices_are_unimodular_with_the_right_roots(name, roots):
    N = build_niemeier(name)
    assert N.rank == 24
    assert abs(N.lattice.det) == 1
    assert len(N.roots()) == roots


def test_unknown_lattice():
    with pytest.raises(UnknownCatalogEntryError):
        build_niemeier("3E8")


def test_hbar_representatives():
    rep = hbar("24A1#4")
    assert rep.norm == 12
    assert rep.component_norms() == {"1/2": 15, "9/2": 1}
    rep = hbar("12A2#2")
    assert rep.component_norms() == {"6": 2}


def test_unknown_hbar():
    with pytest.raises(UnknownCatalogEntryError):
        hbar("24A1#10")


def test_conics_are_norm_four_vectors_on_the_hbar_slice():
    rep = hbar("24A1#4")
    N = rep.lattice
    C = candidates(N, rep.vector)
    assert len(C)
    assert all(N.norm(x) == 4 for x in C[:50])
    assert all(N.dot(x, rep.vector) == 4 for x in C[:50])


def test_dot_is_scaled():
    N = build_niemeier("24A1")
    r = N.roots()[0]
    assert N.norm(r) == Fraction(2)


@pytest.mark.slow
def test_leech_has_no_roots():
    assert len(build_leech().roots()) == 0


@pytest.mark.slow
@pytest.mark.parametrize("name, size", [("Leech#1", 891), ("Leech#2", 759)])
def test_leech_conic_counts(name, size):
    rep = hbar(name)
    assert len(candidates(rep.lattice, rep.vector)) == size


@pytest.mark.slow
def test_replanting_twice_returns_the_lattice():
    rep = hbar("24A1#11")
    M, h2 = replant(rep.lattice, rep.vector)
    assert abs(M.lattice.det) == 1
    back, _ = replant(M, h2)
    assert rep.lattice.same_lattice(back)


@pytest.mark.slow
def test_replanted_pair_shares_the_conics():
    d4 = load_configuration("6D4#1")
    a1 = load_configuration("24A1#11")
    assert d4.size == a1.size
    assert d4.rank == a1.rank
    # same products up to relabeling
    assert isomorphism(product_graph(a1), product_graph(d4)) is not None
