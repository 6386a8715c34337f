import math

import pytest

from conics.errors import DegenerateLatticeError, NotContainedError
from conics.lattice import (
    IntegerLattice,
    Sublattice,
    discriminant_form,
    index_in,
    is_root_free,
    orthogonal_complement,
    saturate,
)

from .conftest import diagonal_gram


def test_rejects_odd_and_asymmetric_grams():
    with pytest.raises(ValueError):
        IntegerLattice([[3]])
    with pytest.raises(ValueError):
        IntegerLattice([[2, 1], [0, 2]])


def test_signature():
    assert IntegerLattice([[0, 1], [1, 0]]).signature == (1, 1)
    assert IntegerLattice([[2, -1], [-1, 2]]).signature == (2, 0)
    assert IntegerLattice([[-2]]).signature == (0, 1)


def test_det_and_direct_sum():
    A2 = IntegerLattice([[2, -1], [-1, 2]])
    assert A2.det == 3
    assert A2.direct_sum(IntegerLattice([[2]])).det == 6


def test_saturation_and_index():
    Z3 = IntegerLattice(diagonal_gram(3))
    S = Sublattice.from_generators(Z3, [[2, 0, 0], [0, 3, 0]])
    assert not S.primitive
    assert saturate(Z3, [[2, 0, 0], [0, 3, 0]]).basis == ((1, 0, 0), (0, 1, 0))
    assert index_in(saturate(Z3, [[1, 0, 0], [0, 1, 0]]), S) == 6
    assert index_in(Z3, S) == math.inf


def test_index_of_full_rank_sublattice():
    Z2 = IntegerLattice(diagonal_gram(2))
    assert index_in(Z2, Sublattice.from_generators(Z2, [[2, 0], [0, 1]])) == 2


def test_coords_and_containment():
    Z2 = IntegerLattice(diagonal_gram(2))
    S = Sublattice.from_generators(Z2, [[2, 0], [0, 1]])
    assert S.contains((4, 3))
    assert not S.contains((1, 0))
    with pytest.raises(NotContainedError):
        S.coords_of((1, 0))


def test_orthogonal_complement():
    Z3 = IntegerLattice(diagonal_gram(3))
    S = Sublattice.from_generators(Z3, [[1, 1, 1]])
    C = orthogonal_complement(Z3, S)
    assert C.rank == 2
    assert all(sum(v) == 0 for v in C.basis)


def test_root_freeness():
    assert is_root_free(IntegerLattice([[4]]))
    assert not is_root_free(IntegerLattice([[2, -1], [-1, 2]]))
    assert is_root_free(IntegerLattice([[4, 2], [2, 4]]))


def test_discriminant_form_needs_nondegenerate_lattice():
    with pytest.raises(DegenerateLatticeError):
        discriminant_form(IntegerLattice([[2, 2], [2, 2]]))
    assert discriminant_form(IntegerLattice(diagonal_gram(4))).size == 16
