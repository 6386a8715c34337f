import pytest

from conics.configuration import Configuration, is_admissible, is_geometric, require_nonempty
from conics.errors import ConicsError, EmptyConicSetError, NotContainedError, SaturateFirstError

from .conftest import diagonal_gram, unit


def conic(n, i, j, sign=1):
    return unit(n, (i, 1), (j, sign))


def test_sizes(config_a, config_b):
    assert config_a.size == 15
    assert len(config_a.roots) == 12
    assert config_a.rank == 6
    assert config_b.size == 11
    assert len(config_b.roots) == 16
    assert len(config_b.perp_roots) == 5


def test_from_gram_validates():
    with pytest.raises(ConicsError):
        Configuration.from_gram(diagonal_gram(6), (1, 1, 1, 1, 1, 0))
    with pytest.raises(ConicsError):
        Configuration.from_gram([[0, 1], [1, 0]], (1, 1))


def test_index_of(config_a):
    i = config_a.index_of(conic(6, 0, 1))
    assert tuple(config_a.conics[i]) == conic(6, 0, 1)
    with pytest.raises(NotContainedError):
        config_a.index_of(conic(6, 0, 1, -1))


def test_saturation_closes_disjoint_pairs(config_a):
    members = [config_a.index_of(conic(6, 0, 1)), config_a.index_of(conic(6, 2, 3))]
    L = config_a.saturate(members)
    assert L.size == 3
    assert config_a.index_of(conic(6, 4, 5)) in L.members
    assert L.is_saturated


def test_meeting_pair_is_admissible(config_a):
    L = config_a.saturate([config_a.index_of(conic(6, 0, 1)), config_a.index_of(conic(6, 0, 2))])
    assert L.size == 2
    assert L.rank == 3
    assert L.pair_products_ok
    assert L.is_root_free
    assert L.hbar_divisible
    assert is_admissible(L)


def test_admissibility_needs_saturation(config_a):
    L = config_a.conic_set([config_a.index_of(conic(6, 0, 1)), config_a.index_of(conic(6, 2, 3))])
    assert not L.is_saturated
    with pytest.raises(SaturateFirstError):
        is_admissible(L)


def test_full_configuration_has_roots(config_a):
    L = config_a.saturate(range(config_a.size))
    assert L.size == 15
    assert not L.is_root_free


def test_small_sets_are_geometric(config_b):
    L = config_b.saturate([config_b.index_of(conic(8, 0, 3))])
    verdict = is_geometric(L)
    assert verdict.geometric
    assert verdict.rank == 2


def test_digest(config_a):
    vectors = [conic(6, 0, 1), conic(6, 0, 2)]
    L1 = config_a.from_vectors(vectors)
    L2 = config_a.from_vectors(reversed(vectors))
    assert L1 == L2
    assert L1.digest() == L2.digest()
    assert L1.to_dict()["digest"] == L1.digest()
    assert L1.digest() != config_a.from_vectors(vectors[:1]).digest()


def test_empty_set(config_a):
    with pytest.raises(EmptyConicSetError):
        require_nonempty(config_a.conic_set([]))
