from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix

from conics import linalg
from conics.discriminant import FiniteQuadraticForm
from conics.enumeration import enumerate_vectors
from conics.errors import DegenerateLatticeError, NotContainedError, UnboundedEnumerationError

logger = logging.getLogger(__name__)

LatticeVector = tuple  # coordinates, ints or Fractions


def _sign_changes(coeffs: list[int]) -> int:
    signs = [c > 0 for c in coeffs if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


@dataclass(frozen=True)
class IntegerLattice:
    """An even lattice given by its Gram matrix."""

    gram: tuple[tuple[int, ...], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        g = tuple(tuple(int(x) for x in row) for row in self.gram)
        n = len(g)
        if any(len(row) != n for row in g):
            raise ValueError("Gram matrix must be square")
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(i)):
            raise ValueError("Gram matrix must be symmetric")
        if any(g[i][i] % 2 for i in range(n)):
            raise ValueError("lattice must be even")
        object.__setattr__(self, "gram", g)

    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def matrix(self) -> np.ndarray:
        return linalg.int_matrix(self.gram, self.rank)

    @cached_property
    def det(self) -> int:
        return linalg.determinant(self.matrix)

    @cached_property
    def signature(self) -> tuple[int, int]:
        """(sigma_+, sigma_-) from the sign pattern of the characteristic polynomial."""
        if self.rank == 0:
            return (0, 0)
        cp = DomainMatrix([[ZZ(x) for x in row] for row in self.gram], (self.rank, self.rank), ZZ).charpoly()
        coeffs = [int(c) for c in cp]
        zeros = 0
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
            zeros += 1
        pos = _sign_changes(coeffs)
        neg = _sign_changes([c * (-1) ** (len(coeffs) - 1 - i) for i, c in enumerate(coeffs)])
        return (pos, neg)

    @property
    def is_positive_definite(self) -> bool:
        return self.signature == (self.rank, 0)

    def dot(self, x: Sequence, y: Sequence):
        return np.array(x, dtype=object).dot(self.matrix).dot(np.array(y, dtype=object))

    def norm(self, x: Sequence):
        return self.dot(x, x)

    def scaled(self, k: int, name: str = "") -> "IntegerLattice":
        return IntegerLattice(tuple(tuple(k * x for x in row) for row in self.gram), name=name)

    def direct_sum(self, other: "IntegerLattice") -> "IntegerLattice":
        n, m = self.rank, other.rank
        g = [[0] * (n + m) for _ in range(n + m)]
        for i in range(n):
            g[i][:n] = self.gram[i]
        for i in range(m):
            g[n + i][n:] = other.gram[i]
        return IntegerLattice(g)

    def change_basis(self, rows) -> "IntegerLattice":
        B = linalg.int_matrix(rows, self.rank)
        return IntegerLattice(linalg.to_rows(B.dot(self.matrix).dot(B.T)))

    def to_dict(self) -> dict:
        return {"rank": self.rank, "gram": [list(r) for r in self.gram]}


@dataclass(frozen=True)
class Sublattice:
    """Row span of an HNF basis inside Z^n = the ambient lattice's coordinates."""

    ambient: IntegerLattice
    basis: tuple[tuple[int, ...], ...]
    primitive: bool = False

    @classmethod
    def from_generators(cls, ambient: IntegerLattice, gens: Iterable[Sequence[int]], *, saturate: bool = False) -> "Sublattice":
        rows = [[int(x) for x in g] for g in gens]
        n = ambient.rank
        if saturate:
            H = linalg.saturation(rows, ncols=n) if rows else np.zeros((0, n), dtype=object)
        else:
            H = linalg.hnf_rows(rows, ncols=n) if rows else np.zeros((0, n), dtype=object)
        basis = linalg.to_rows(H)
        return cls(ambient, basis, primitive=_is_primitive(basis))

    @property
    def rank(self) -> int:
        return len(self.basis)

    @cached_property
    def matrix(self) -> np.ndarray:
        return linalg.int_matrix(self.basis, self.ambient.rank)

    @cached_property
    def lattice(self) -> IntegerLattice:
        """The sublattice with the restricted form, in its HNF basis."""
        B = self.matrix
        return IntegerLattice(linalg.to_rows(B.dot(self.ambient.matrix).dot(B.T)))

    def coords_of(self, v: Sequence[int]) -> tuple[int, ...]:
        X = linalg.rational_solve_left(self.matrix, [list(v)])
        if X is None or any(Fraction(x).denominator != 1 for x in X[0]):
            raise NotContainedError()
        return tuple(int(x) for x in X[0])

    def contains(self, v: Sequence[int]) -> bool:
        try:
            self.coords_of(v)
        except NotContainedError:
            return False
        return True

    def to_dict(self) -> dict:
        d = self.lattice.to_dict()
        d["basis"] = [list(r) for r in self.basis]
        return d


def _is_primitive(basis) -> bool:
    if not basis:
        return True
    return all(d == 1 for d in linalg.elementary_divisors(basis))


# ---------- operations ----------
def discriminant_form(L: IntegerLattice) -> FiniteQuadraticForm:
    if L.rank and L.det == 0:
        raise DegenerateLatticeError()
    return FiniteQuadraticForm.from_gram(L.gram)


def saturate(amb: IntegerLattice, gens: Iterable[Sequence[int]]) -> Sublattice:
    return Sublattice.from_generators(amb, gens, saturate=True)


def orthogonal_complement(amb: IntegerLattice, S: Sublattice) -> Sublattice:
    if S.rank == 0:
        return Sublattice.from_generators(amb, linalg.identity(amb.rank))
    K = linalg.integer_kernel(S.matrix.dot(amb.matrix))
    return Sublattice.from_generators(amb, K)


def is_root_free(S: Sublattice | IntegerLattice) -> bool:
    L = S.lattice if isinstance(S, Sublattice) else S
    if L.rank == 0:
        return True
    if not L.is_positive_definite:
        raise UnboundedEnumerationError("root test needs a definite lattice")
    return not enumerate_vectors(L.gram, 2)


def index_in(amb: Sublattice | IntegerLattice, sub: Sublattice) -> int | float:
    """[amb : sub], math.inf when sub has smaller rank."""
    if isinstance(amb, IntegerLattice):
        A = linalg.identity(amb.rank)
    else:
        A = amb.matrix
    if sub.rank == 0:
        return 1 if len(A) == 0 else math.inf
    X = linalg.rational_solve_left(A, sub.matrix)
    if X is None or any(Fraction(x).denominator != 1 for x in X.flat):
        raise NotContainedError()
    if sub.rank < len(A):
        return math.inf
    return abs(linalg.determinant(linalg.int_matrix(X.tolist())))
