import random

import pytest

from conics.discriminant import is_isomorphic
from conics.errors import ConicsError, InvariantViolation, NotInHypError
from conics.lattice import IntegerLattice
from conics.reduction import (
    PolarizedDefinite,
    PolarizedHyperbolic,
    bijection_counts,
    check_homological_conditions,
    classify_irreducible,
    discriminant_relations,
    enumerate_fn,
    hyp,
    pair_products,
    product_range,
    random_definite,
    random_hyperbolic,
    reduce,
)


@pytest.fixture
def one_conic():
    """The span of e_1 + e_2 and hbar in configuration A."""
    return PolarizedDefinite(IntegerLattice([[4, 0], [0, 8]]), (1, 1), 3)


def test_product_ranges():
    assert product_range(1) == {-4, -2, -1, 0, 1, 2}
    assert product_range(2) == {-2, 0, 1, 2}
    assert product_range(3) == product_range(5) == {0, 1, 2}


def test_hbar_must_be_divisible():
    with pytest.raises(ConicsError):
        PolarizedDefinite(IntegerLattice([[2 if i == j else 0 for j in range(6)] for i in range(6)]), (1,) * 6, 3)


def test_polarization_norm_is_checked():
    with pytest.raises(ConicsError):
        PolarizedHyperbolic(IntegerLattice([[0, 1], [1, 0]]), (1, 1), 3)


def test_hyp_zero(one_conic):
    NS = hyp(one_conic)
    assert NS.lattice.gram == ((-2, 4), (4, 0))
    assert NS.h == (1, 1)
    assert NS.type == "I"
    assert enumerate_fn(NS, 2) == [(1, 0)]
    assert enumerate_fn(NS, 1) == []
    assert classify_irreducible(NS) == ([(1, 0)], [])


def test_reduce_inverts_hyp(one_conic):
    assert reduce(hyp(one_conic)) == one_conic


def test_bijections_and_conditions(one_conic):
    NS = hyp(one_conic)
    counts = bijection_counts(NS, one_conic)
    assert counts.holds
    assert counts.conics == (1, 1)
    assert check_homological_conditions(NS).passes


def test_discriminant_relations_hold(one_conic):
    NS = hyp(one_conic)
    relations = discriminant_relations(NS, one_conic)
    assert relations[0].name == "order"
    assert all(r.holds for r in relations if r.applies)


def test_kappa_outside_hyp(one_conic):
    with pytest.raises(NotInHypError):
        hyp(one_conic, (2, 0))
    with pytest.raises(NotInHypError):
        hyp(one_conic, (1, 0))


def test_pair_products_are_range_checked(one_conic):
    assert pair_products(one_conic, (1, 0), (1, 0)) == 4
    with pytest.raises(InvariantViolation):
        pair_products(one_conic, (1, 0), (-1, 0))


@pytest.mark.parametrize("degree", [1, 2, 3, 4])
@pytest.mark.parametrize("seed", range(3))
def test_reduce_inverts_hyp_on_random_lattices(degree, seed):
    S = random_definite(degree, random.Random(seed))
    back = reduce(hyp(S))
    assert back.rank == S.rank
    assert back.lattice.det == S.lattice.det
    assert back.lattice.norm(back.hbar) == S.lattice.norm(S.hbar)
    assert is_isomorphic(back.form, S.form)
    assert len(back.conics()) == len(S.conics())
    assert len(back.roots()) == len(S.roots())


@pytest.mark.parametrize("degree", [1, 2, 4])
@pytest.mark.parametrize("seed", range(3))
def test_relations_and_bijections_on_random_lattices(degree, seed):
    NS = random_hyperbolic(degree, random.Random(seed))
    S = reduce(NS)
    counts = bijection_counts(NS, S)
    assert counts.holds, counts.to_dict()
    relations = discriminant_relations(NS, S)
    assert all(r.holds for r in relations if r.applies), [r.to_dict() for r in relations]
