import itertools

import pytest

from conics.enumeration import enumerate_vectors
from conics.errors import UnboundedEnumerationError


def brute_force(gram, norm, box):
    n = len(gram)
    out = []
    for x in itertools.product(range(-box, box + 1), repeat=n):
        if sum(x[i] * gram[i][j] * x[j] for i in range(n) for j in range(n)) == norm:
            out.append(x)
    return sorted(out)


@pytest.mark.parametrize(
    "gram, norm",
    [
        ([[2, 0], [0, 2]], 2),
        ([[2, -1], [-1, 2]], 2),
        ([[2, -1], [-1, 2]], 6),
        ([[2, 1, 0], [1, 4, 1], [0, 1, 6]], 8),
        ([[4, 1, 0, 0], [1, 4, 1, 0], [0, 1, 4, 1], [0, 0, 1, 4]], 8),
    ],
)
def test_matches_exhaustive_search(gram, norm):
    assert enumerate_vectors(gram, norm) == brute_force(gram, norm, 4)


def test_a2_roots():
    roots = enumerate_vectors([[2, -1], [-1, 2]], 2)
    assert len(roots) == 6
    assert roots == sorted(roots)


def test_closed_under_negation_with_zero_constraints():
    vs = enumerate_vectors([[2, 0, 0], [0, 2, 0], [0, 0, 2]], 4, [((1, 1, 1), 0)])
    assert vs
    assert set(vs) == {tuple(-a for a in v) for v in vs}


def test_constraint_slices():
    gram = [[2 if i == j else 0 for j in range(6)] for i in range(6)]
    vs = enumerate_vectors(gram, 4, [((1,) * 6, 4)])
    assert len(vs) == 15
    assert all(sorted(v) == [0, 0, 0, 0, 1, 1] for v in vs)


def test_inconsistent_constraint_is_empty():
    assert enumerate_vectors([[2, 0], [0, 2]], 2, [((1, 0), 1)]) == []


def test_rejects_indefinite_forms():
    with pytest.raises(UnboundedEnumerationError):
        enumerate_vectors([[2, 3], [3, 2]], 2)
