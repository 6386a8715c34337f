import pytest

from conics.discriminant import FiniteQuadraticForm
from conics.embedding import (
    embeds_in_K3_lattice,
    embeds_in_niemeier,
    hyp_elements,
    reduced_binary_forms,
    transcendental_lattices,
)
from conics.errors import NotInHypError

from .conftest import diagonal_gram


def test_reduced_binary_forms():
    assert reduced_binary_forms(39) == [(2, 1, 20), (4, 1, 10), (6, 3, 8)]


def test_transcendental_lattice_of_its_own_genus():
    T = FiniteQuadraticForm.from_gram([[6, 0], [0, 20]])
    assert (6, 0, 20) in transcendental_lattices(T.negated())


def test_rank_above_twenty_never_embeds():
    verdict = embeds_in_K3_lattice(FiniteQuadraticForm.trivial(), 21)
    assert verdict.embeds is False


def test_length_bound_at_two():
    small = FiniteQuadraticForm.from_gram(diagonal_gram(6))
    assert embeds_in_K3_lattice(small, 6).embeds is True
    big = FiniteQuadraticForm.from_gram(diagonal_gram(12))
    verdict = embeds_in_K3_lattice(big, 12)
    assert verdict.embeds is False
    assert verdict.reasons


@pytest.mark.parametrize("rank, embeds", [(10, True), (11, False), (12, True)])
def test_type_two_length_cases(rank, embeds):
    # l_2 = 12 sits at 22 - r, 23 - r and 24 - r; at 24 - r a non-characteristic kappa passes
    form = FiniteQuadraticForm.from_gram(diagonal_gram(12))
    kappa = (1,) + (0,) * 11
    verdict = embeds_in_K3_lattice(form, rank, kappa)
    assert verdict.embeds is embeds
    if rank == 12:
        assert "kappa is not characteristic" in verdict.reasons


def test_hyp_elements_respect_hbar():
    gram = diagonal_gram(6)
    form = FiniteQuadraticForm.from_gram(gram)
    assert hyp_elements(form, gram, (1,) * 6) == []

    gram = diagonal_gram(8)
    form = FiniteQuadraticForm.from_gram(gram)
    hyp = hyp_elements(form, gram, (2, 1, 1, 0, 0, 0, 0, 0))
    assert len(hyp) == 11
    assert hyp == sorted(hyp)
    assert all(sum(k) == 3 for k in hyp)


def test_kappa_outside_hyp_is_rejected():
    gram = diagonal_gram(6)
    form = FiniteQuadraticForm.from_gram(gram)
    with pytest.raises(NotInHypError):
        embeds_in_K3_lattice(form, 6, (1, 1, 1, 0, 0, 0), hyp=[])


def test_niemeier_embedding_of_small_forms():
    assert embeds_in_niemeier(FiniteQuadraticForm.from_gram([[4]]), 1)
    assert not embeds_in_niemeier(FiniteQuadraticForm.trivial(), 25)
    with pytest.raises(ValueError):
        embeds_in_niemeier(FiniteQuadraticForm.trivial(), 1, variant="T")
