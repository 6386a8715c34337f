from fractions import Fraction

import numpy as np

from conics import linalg


def test_hnf_rows_is_a_canonical_basis():
    A = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    B = [[4, 8, 8], [2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    assert linalg.to_rows(linalg.hnf_rows(A)) == linalg.to_rows(linalg.hnf_rows(B))


def test_hnf_pivots_positive_and_reduced():
    H = linalg.hnf_rows([[3, 1], [1, 2]])
    assert H[0, 0] > 0 and H[1, 1] > 0
    assert 0 <= H[0, 1] < H[1, 1]
    assert H[1, 0] == 0


def test_smith_normal_form_of_textbook_matrix():
    A = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    assert linalg.elementary_divisors(A) == [2, 6, 12]
    snf = linalg.smith_normal_form(linalg.int_matrix(A))
    assert (snf.s.dot(linalg.int_matrix(A)).dot(snf.t) == snf.d).all()


def test_integer_kernel():
    K = linalg.integer_kernel(linalg.int_matrix([[1, 1]]))
    assert linalg.to_rows(K) == ((1, -1),)


def test_saturation_recovers_primitive_span():
    S = linalg.saturation(linalg.int_matrix([[2, 2, 0]]))
    assert linalg.to_rows(S) == ((1, 1, 0),)


def test_solve_integer():
    assert linalg.solve_integer(linalg.int_matrix([[2]]), [3]) is None
    x0, K = linalg.solve_integer(linalg.int_matrix([[2, 4]]), [6])
    assert 2 * x0[0] + 4 * x0[1] == 6
    assert K.shape == (2, 1)


def test_determinant_and_rank():
    assert linalg.determinant([[2, -1], [-1, 2]]) == 3
    assert linalg.matrix_rank([[1, 2], [2, 4]]) == 1
    assert linalg.rational_determinant([[Fraction(1, 2), 0], [0, 2]]) == 1


def test_rational_solve_left_rejects_outside_span():
    B = linalg.int_matrix([[1, 0, 0], [0, 1, 0]])
    assert linalg.rational_solve_left(B, [[0, 0, 1]]) is None
    X = linalg.rational_solve_left(B, [[3, 5, 0]])
    assert [int(x) for x in X[0]] == [3, 5]


def test_xgcd():
    g, x, y = linalg.xgcd(240, 46)
    assert g == 2 and 240 * x + 46 * y == 2


def test_lll_gram_keeps_determinant():
    G = [[2, 1], [1, 10]]
    reduced, U = linalg.lll_gram(G)
    assert linalg.determinant(reduced) == linalg.determinant(G)
    assert abs(linalg.determinant(U)) == 1
