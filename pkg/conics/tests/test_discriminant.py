import itertools
import random
from fractions import Fraction
from math import isqrt

import numpy as np
import pytest

from conics.discriminant import (
    FiniteQuadraticForm,
    invariants,
    is_isomorphic,
    is_odd,
    reduce_extension,
    smallest_isotropic,
    within_extension_bounds,
)
from conics.lattice import IntegerLattice, discriminant_form, orthogonal_complement, saturate

from .conftest import diagonal_gram


def test_root_lattice_forms():
    A1 = FiniteQuadraticForm.from_gram([[2]])
    assert A1.orders == (2,)
    assert A1.q_diag == (Fraction(1, 2),)
    A2 = FiniteQuadraticForm.from_gram([[2, -1], [-1, 2]])
    assert A2.orders == (3,)
    assert A2.q_diag == (Fraction(2, 3),)


def test_form_sizes():
    assert FiniteQuadraticForm.from_gram([[2, 1], [1, 2]]).size == 3
    assert FiniteQuadraticForm.from_gram([[0, 1], [1, 0]]).is_trivial


def test_isomorphism_ignores_the_basis():
    A2 = FiniteQuadraticForm.from_gram([[2, -1], [-1, 2]])
    other = FiniteQuadraticForm.from_gram([[2, 1], [1, 2]])
    assert is_isomorphic(A2, other)
    assert not is_isomorphic(A2, A2.negated())
    assert not is_isomorphic(A2, FiniteQuadraticForm.from_gram([[6]]))


def test_primary_parts_and_parity():
    F = FiniteQuadraticForm.from_gram([[6]])
    assert F.primes == (2, 3)
    assert F.p_part(2).size == 2 and F.p_part(3).size == 3
    assert is_odd(FiniteQuadraticForm.from_gram([[2]]))
    assert not is_odd(FiniteQuadraticForm.from_gram([[0, 2], [2, 0]]))


def test_invariants_of_odd_two_part():
    inv = invariants(FiniteQuadraticForm.from_gram(diagonal_gram(3)), 2)
    assert inv.ell == 3
    assert inv.parity == "odd"


def test_serialization_keeps_the_form():
    F = FiniteQuadraticForm.from_gram([[2, -1, 0], [-1, 2, -1], [0, -1, 4]])
    assert FiniteQuadraticForm.from_dict(F.to_dict()) == F


def test_smallest_isotropic_prefers_order_p():
    F = FiniteQuadraticForm.from_gram(diagonal_gram(6))
    assert smallest_isotropic(F, 2) == (0, 0, 1, 1, 1, 1)


def test_reduce_extension_reaches_the_bounds():
    F = FiniteQuadraticForm.from_gram(diagonal_gram(6))
    assert not within_extension_bounds(F)
    reduced = reduce_extension(F)
    assert within_extension_bounds(reduced.form)
    assert reduced.kernels
    ratio = F.size // reduced.form.size
    assert F.size % reduced.form.size == 0 and isqrt(ratio) ** 2 == ratio


E8 = [
    [2, -1, 0, 0, 0, 0, 0, 0],
    [-1, 2, -1, 0, 0, 0, 0, 0],
    [0, -1, 2, -1, 0, 0, 0, 0],
    [0, 0, -1, 2, -1, 0, 0, 0],
    [0, 0, 0, -1, 2, -1, 0, -1],
    [0, 0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, 0, -1, 2, 0],
    [0, 0, 0, 0, -1, 0, 0, 2],
]

D4 = [[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]]
A2 = [[2, -1], [-1, 2]]


def block_sum(*grams):
    n = sum(len(g) for g in grams)
    out = [[0] * n for _ in range(n)]
    at = 0
    for g in grams:
        for i, row in enumerate(g):
            out[at + i][at:at + len(row)] = row
        at += len(g)
    return out


@pytest.mark.parametrize("seed", range(6))
def test_complement_in_a_unimodular_lattice(seed):
    rng = random.Random(seed)
    E = IntegerLattice(E8)
    assert E.det == 1
    gens = [[rng.randint(-1, 1) for _ in range(8)] for _ in range(rng.randint(1, 3))]
    gens = [g for g in gens if any(g)] or [[1] + [0] * 7]
    S = saturate(E, gens)
    T = orthogonal_complement(E, S)
    assert S.rank + T.rank == 8
    assert is_isomorphic(discriminant_form(T.lattice), discriminant_form(S.lattice).negated())


@pytest.mark.parametrize("seed", range(4))
@pytest.mark.parametrize("gram", [[[2, -1, 0], [-1, 2, -1], [0, -1, 4]], diagonal_gram(3, 6), block_sum(D4, [[6]])])
def test_invariants_ignore_the_basis(seed, gram):
    rng = random.Random(seed)
    n = len(gram)
    U = np.eye(n, dtype=np.int64)
    for _ in range(6):
        i, j = rng.sample(range(n), 2)
        U[i] += rng.choice((-1, 1)) * U[j]
    G = np.array(gram, dtype=np.int64)
    F = FiniteQuadraticForm.from_gram(gram)
    F2 = FiniteQuadraticForm.from_gram((U @ G @ U.T).tolist())
    assert is_isomorphic(F, F2)
    for p in F.primes:
        assert invariants(F, p) == invariants(F2, p)


def isotropic_subgroups(F):
    """Isotropic subgroups of order at most 4, as generator lists."""
    elements = [x for x in F.elements() if any(x) and F.q(x) == 0]
    out = [[]]
    for x in elements:
        out.append([x])
    for x, y in itertools.combinations(elements, 2):
        if F.b(x, y) == 0 and F.q(F.add(x, y)) == 0:
            out.append([x, y])
    return out


def quotients(F):
    for gens in isotropic_subgroups(F):
        Q, _ = F.subquotient(F.orthogonal(gens), kernel=gens) if gens else (F, [])
        yield Q


@pytest.mark.parametrize("gram", [diagonal_gram(4), block_sum(D4, D4), block_sum(A2, A2, A2)])
@pytest.mark.parametrize("anisotropic", [False, True])
def test_reduce_extension_against_all_subgroups(gram, anisotropic):
    F = FiniteQuadraticForm.from_gram(gram)
    assert F.size <= 36
    reduced = reduce_extension(F, anisotropic=anisotropic).form
    candidates = list(quotients(F))
    # the result is H^perp / H for some isotropic H
    assert any(Q.size == reduced.size and is_isomorphic(Q, reduced) for Q in candidates)
    if anisotropic:
        assert not any(any(x) and reduced.q(x) == 0 for x in reduced.elements())
    elif any(within_extension_bounds(Q) for Q in candidates):
        assert within_extension_bounds(reduced)
