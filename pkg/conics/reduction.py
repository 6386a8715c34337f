"""
The dictionary between hyperbolic 2d-polarized lattices NS containing h
(the K3 side) and positive definite lattices S containing hbar.

On a common basis the two Gram matrices are related by
    G_S  = (G_NS h)(G_NS h)^T / 2 - G_NS,
    G_NS = (G_S hbar)(G_S hbar)^T / (2 (d - 1)^2) - G_S,
with hbar and h having the same coordinates; conics c of NS and vectors l of S
with l^2 = 4, l.hbar = 2(d - 1) then correspond as c = l - hbar/d + h/d.
For d = 1 we let hbar = 0 and S = -h^perp.
"""
from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from sympy import factorint

from conics import linalg
from conics.discriminant import (
    Element,
    FiniteQuadraticForm,
    is_isomorphic,
    is_odd,
    is_unit_square,
    scaled_determinant,
)
from conics.embedding import hyp_elements
from conics.enumeration import enumerate_vectors
from conics.errors import ConicsError, EmptyConicSetError, InvariantViolation, NotInHypError
from conics.lattice import IntegerLattice

logger = logging.getLogger(__name__)

MAX_REDUCIBLE = 189


# ---------- types ----------
@dataclass(frozen=True)
class PolarizedHyperbolic:
    lattice: IntegerLattice
    h: tuple[int, ...]
    degree: int

    def __post_init__(self):
        object.__setattr__(self, "h", tuple(int(x) for x in self.h))
        if self.lattice.signature[0] != 1:
            raise ConicsError(f"NS must be hyperbolic, signature is {self.lattice.signature}")
        if self.lattice.norm(self.h) != 2 * self.degree:
            raise ConicsError(f"h^2 = {self.lattice.norm(self.h)}, expected {2 * self.degree}")

    @property
    def rank(self) -> int:
        return self.lattice.rank

    @property
    def gram(self) -> np.ndarray:
        return self.lattice.matrix

    @property
    def Gh(self) -> np.ndarray:
        return self.gram.dot(np.array(self.h, dtype=object))

    @property
    def type(self) -> str:
        """I when h lies in 2 NS^dual."""
        return "I" if all(int(x) % 2 == 0 for x in self.Gh) else "II"

    @property
    def form(self) -> FiniteQuadraticForm:
        return FiniteQuadraticForm.from_gram(self.lattice.gram)

    def to_dict(self) -> dict:
        data = self.lattice.to_dict()
        data.update({"h": list(self.h), "d": self.degree, "type": self.type})
        return data


@dataclass(frozen=True)
class PolarizedDefinite:
    lattice: IntegerLattice
    hbar: tuple[int, ...]
    degree: int
    basis: tuple[tuple[Fraction, ...], ...] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "hbar", tuple(int(x) for x in self.hbar))
        d = self.degree
        if not self.lattice.is_positive_definite:
            raise ConicsError("S must be positive definite")
        if self.lattice.norm(self.hbar) != 2 * d * (d - 1):
            raise ConicsError(f"hbar^2 = {self.lattice.norm(self.hbar)}, expected {2 * d * (d - 1)}")
        if d >= 2 and any(int(x) % (2 * (d - 1)) for x in self.Ghbar):
            raise ConicsError(f"hbar is not in {2 * (d - 1)} S^dual")

    @property
    def rank(self) -> int:
        return self.lattice.rank

    @property
    def gram(self) -> np.ndarray:
        return self.lattice.matrix

    @property
    def Ghbar(self) -> np.ndarray:
        return self.gram.dot(np.array(self.hbar, dtype=object))

    @property
    def form(self) -> FiniteQuadraticForm:
        return FiniteQuadraticForm.from_gram(self.lattice.gram)

    def conics(self) -> list[tuple[int, ...]]:
        """l^2 = 4 and l.hbar = 2(d - 1)."""
        return _constrained(self.lattice.gram, 4, self.hbar, 2 * (self.degree - 1))

    def roots(self, hbar_product: int = 0) -> list[tuple[int, ...]]:
        return _constrained(self.lattice.gram, 2, self.hbar, hbar_product)

    def to_dict(self) -> dict:
        data = self.lattice.to_dict()
        data.update({"hbar": list(self.hbar), "d": self.degree})
        return data


def _constrained(gram, norm: int, w: Sequence[int], value: int) -> list[tuple[int, ...]]:
    if any(w):
        return enumerate_vectors(gram, norm, [(w, value)])
    if value:
        return []
    return enumerate_vectors(gram, norm)


# ---------- lattice helpers ----------
def _integral(A: np.ndarray) -> np.ndarray:
    if any(Fraction(x).denominator != 1 for x in np.asarray(A).flat):
        raise InvariantViolation("Gram matrix is not integral")
    return np.array([[int(x) for x in row] for row in A], dtype=object)


def _overlattice(gram: np.ndarray, rows) -> tuple[np.ndarray, np.ndarray]:
    """
    The lattice spanned by rational rows (old coordinates): its Gram matrix
    in an HNF basis, and that basis.
    """
    R = np.array([[Fraction(x) for x in row] for row in rows], dtype=object)
    den = linalg.lcm_denominator(list(R.flat))
    H = linalg.hnf_rows((R * den).astype(object).tolist())
    B = np.array([[Fraction(int(x), den) for x in row] for row in H], dtype=object)
    return _integral(B.dot(np.asarray(gram, dtype=object)).dot(B.T)), B


def _coords_in(B: np.ndarray, v: Sequence) -> tuple[int, ...]:
    X = linalg.rational_solve_left(B, [list(v)])
    if X is None or any(Fraction(x).denominator != 1 for x in X[0]):
        raise InvariantViolation("vector is not in the lattice")
    return tuple(int(x) for x in X[0])


# ---------- enumeration on the K3 side ----------
def enumerate_fn(NS: PolarizedHyperbolic, n: int) -> list[tuple[int, ...]]:
    """Fn_n: classes with c^2 = -2 and c.h = n; n = 1 lines, n = 2 conics."""
    neg = -NS.gram
    return enumerate_vectors(neg, 2, [(NS.h, -n)])


def exceptional_divisors(NS: PolarizedHyperbolic) -> list[tuple[int, ...]]:
    """e in h^perp with e^2 = -2."""
    return enumerate_vectors(-NS.gram, 2, [(NS.h, 0)])


def isotropic_vectors(NS: PolarizedHyperbolic) -> list[tuple[int, ...]]:
    """e with e^2 = 0 and e.h = 2."""
    return enumerate_vectors(-NS.gram, 0, [(NS.h, -2)])


# ---------- the two constructions ----------
def reduce(NS: PolarizedHyperbolic) -> PolarizedDefinite:
    """S(NS, h); needs a conic class."""
    d = NS.degree
    G = NS.gram
    conics = enumerate_fn(NS, 2)
    if not conics:
        raise EmptyConicSetError()
    K = linalg.integer_kernel(NS.Gh.reshape(1, -1))
    perp = [list(r) for r in linalg.to_rows(K)]
    if d == 1:
        Gs = -np.asarray(K, dtype=object).dot(G).dot(np.asarray(K, dtype=object).T)
        S = PolarizedDefinite(IntegerLattice(linalg.to_rows(Gs)), (0,) * len(perp), d)
        return S
    _, B = _overlattice(G, perp + [list(NS.h), list(conics[0])])
    Gh = NS.Gh
    M = np.outer(Gh, Gh)
    Gs_old = np.array([[Fraction(int(x), 2) for x in row] for row in M], dtype=object) - G
    Gs = B.dot(Gs_old).dot(B.T)
    hbar = _coords_in(B, NS.h)
    S = PolarizedDefinite(IntegerLattice(linalg.to_rows(_integral(Gs))), hbar, d, basis=linalg.to_rows(B))
    logger.debug("reduce: rank %d, |discr NS| = %d, |discr S| = %d", S.rank, abs(NS.lattice.det), abs(S.lattice.det))
    return S


def hyp(S: PolarizedDefinite, kappa: Element | None = None) -> PolarizedHyperbolic:
    """
    hyp_0(S) (type I), or for kappa in Hyp its index 2 extension by kappa + h/2.
    """
    d = S.degree
    G = S.gram
    form = S.form
    if kappa is not None:
        kappa = tuple(int(x) for x in kappa)
        if len(kappa) != form.rank or not any(kappa) or form.scale(2, kappa) != form.zero():
            raise NotInHypError()
        if d == 3 and kappa not in hyp_elements(form, S.lattice.gram, S.hbar):
            raise NotInHypError()
        try:
            return _hyp(S, G, form, kappa)
        except (InvariantViolation, ValueError) as exc:
            # the extension by kappa + h/2 is not an even lattice
            raise NotInHypError(str(exc)) from exc
    return _hyp(S, G, form, None)


def _hyp(S: PolarizedDefinite, G: np.ndarray, form: FiniteQuadraticForm, kappa: Element | None) -> PolarizedHyperbolic:
    d = S.degree
    if d == 1:
        n = S.rank
        Gn = np.zeros((n + 1, n + 1), dtype=object)
        Gn[:n, :n] = -G
        Gn[n, n] = 2
        h = (0,) * n + (1,)
        if kappa is None:
            return PolarizedHyperbolic(IntegerLattice(linalg.to_rows(Gn)), h, d)
        w = list(form.lift(kappa)) + [Fraction(1, 2)]
        rows = [list(r) for r in linalg.to_rows(linalg.identity(n + 1))] + [w]
        Gk, B = _overlattice(Gn, rows)
        return PolarizedHyperbolic(IntegerLattice(linalg.to_rows(Gk)), _coords_in(B, h), d)

    Gh = S.Ghbar
    scale = 2 * (d - 1) ** 2
    Gn = np.array([[Fraction(int(x), scale) for x in row] for row in np.outer(Gh, Gh)], dtype=object) - G
    Gn = _integral(Gn)
    if kappa is None:
        return PolarizedHyperbolic(IntegerLattice(linalg.to_rows(Gn)), S.hbar, d)
    w = [k + Fraction(x, 2) for k, x in zip(form.lift(kappa), S.hbar)]
    rows = [list(r) for r in linalg.to_rows(linalg.identity(S.rank))] + [w]
    Gk, B = _overlattice(Gn, rows)
    NS = PolarizedHyperbolic(IntegerLattice(linalg.to_rows(Gk)), _coords_in(B, S.hbar), d)
    if NS.type != "II":
        raise InvariantViolation("hyp with kappa produced a type I lattice")
    return NS


# ---------- conics and lines ----------
def classify_irreducible(NS: PolarizedHyperbolic) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """A conic is irreducible iff it meets every line nonnegatively."""
    lines = enumerate_fn(NS, 1)
    conics = enumerate_fn(NS, 2)
    if not lines:
        return conics, []
    L = np.array(lines, dtype=object).dot(NS.gram)
    irreducible, reducible = [], []
    for c in conics:
        if all(int(x) >= 0 for x in L.dot(np.array(c, dtype=object))):
            irreducible.append(c)
        else:
            reducible.append(c)
    if len(reducible) > MAX_REDUCIBLE:
        logger.warning("%d reducible conics exceed %d", len(reducible), MAX_REDUCIBLE)
    return irreducible, reducible


@dataclass
class HomologicalReport:
    hyperbolic: bool
    primitive: bool | None
    no_exceptional: bool
    no_isotropic: bool
    not_veronese: bool

    @property
    def passes(self) -> bool:
        return all(v is not False for v in (self.hyperbolic, self.primitive, self.no_exceptional, self.no_isotropic, self.not_veronese))

    def to_dict(self) -> dict:
        return {
            "hyperbolic": self.hyperbolic,
            "primitive": self.primitive,
            "no_exceptional": self.no_exceptional,
            "no_isotropic": self.no_isotropic,
            "not_veronese": self.not_veronese,
        }


def check_homological_conditions(NS: PolarizedHyperbolic, *, primitive: bool | None = None) -> HomologicalReport:
    """
    Hyperbolicity, no e with e^2 = -2 and e.h = 0, no e with e^2 = 0 and
    e.h = 2, and h not in 2 NS when d = 4. Primitivity needs an embedding and
    is passed in when known.
    """
    veronese = NS.degree == 4 and all(x % 2 == 0 for x in NS.h)
    return HomologicalReport(
        hyperbolic=NS.lattice.signature[0] == 1,
        primitive=primitive,
        no_exceptional=not exceptional_divisors(NS),
        no_isotropic=not isotropic_vectors(NS),
        not_veronese=not veronese,
    )


def product_range(d: int) -> frozenset[int]:
    if d == 1:
        return frozenset({-4, -2, -1, 0, 1, 2})
    if d == 2:
        return frozenset({-2, 0, 1, 2})
    return frozenset({0, 1, 2})


def pair_products(S: PolarizedDefinite, l1: Sequence[int], l2: Sequence[int]) -> int:
    """l1 . l2 for two conics of S, checked against the admissible range for d."""
    value = int(S.lattice.dot(l1, l2))
    if tuple(l1) == tuple(l2):
        return value
    d = S.degree
    if value not in product_range(d):
        raise InvariantViolation(f"l1 . l2 = {value} outside {sorted(product_range(d))}")
    extreme = {1: -4, 2: -2}.get(d)
    summed = tuple(int(a) + int(b) for a, b in zip(l1, l2)) == S.hbar
    if extreme is not None and (value == extreme) != summed:
        raise InvariantViolation(f"l1 . l2 = {value} but l1 + l2 {'=' if summed else '!='} hbar")
    return value


# ---------- bijections and discriminant relations ----------
@dataclass
class BijectionCounts:
    conics: tuple[int, int]
    exceptional: tuple[int, int]
    isotropic: tuple[int, int]

    @property
    def holds(self) -> bool:
        return all(a == b for a, b in (self.conics, self.exceptional, self.isotropic))

    def to_dict(self) -> dict:
        return {"conics": list(self.conics), "exceptional": list(self.exceptional), "isotropic": list(self.isotropic)}


def bijection_counts(NS: PolarizedHyperbolic, S: PolarizedDefinite | None = None) -> BijectionCounts:
    """Conics, exceptional divisors and 2-isotropic vectors of NS against their counterparts in S."""
    S = S or reduce(NS)
    d = NS.degree
    if d == 1:
        # all three sets match the roots of S
        roots = len(S.roots(0))
        return BijectionCounts(
            (len(enumerate_fn(NS, 2)), len(S.conics())),
            (len(exceptional_divisors(NS)), roots),
            (len(isotropic_vectors(NS)), roots),
        )
    return BijectionCounts(
        (len(enumerate_fn(NS, 2)), len(S.conics())),
        (len(exceptional_divisors(NS)), len(S.roots(0))),
        (len(isotropic_vectors(NS)), len(S.roots(2 * (d - 1)))),
    )


@dataclass
class Relation:
    name: str
    applies: bool
    holds: bool | None

    def to_dict(self) -> dict:
        return {"name": self.name, "applies": self.applies, "holds": self.holds}


def _is_rational_square(x: Fraction) -> bool:
    if x <= 0:
        return False
    return all(math.isqrt(v) ** 2 == v for v in (x.numerator, x.denominator))


def _ell(F: FiniteQuadraticForm, p: int) -> int:
    return F.p_part(p).rank


def discriminant_relations(NS: PolarizedHyperbolic, S: PolarizedDefinite | None = None) -> list[Relation]:
    """The relations between discr S and discr NS, prime by prime."""
    S = S or reduce(NS)
    d = NS.degree
    N, Sf = NS.form, S.form
    d_prime = 2 if d == 1 else d - 1
    out = [Relation("order", True, _is_rational_square(Fraction(Sf.size, d_prime * N.size)))]

    odd_primes = sorted((set(N.primes) | set(Sf.primes) | set(factorint(max(d - 1, 1)))) - {2})
    for p in odd_primes:
        if (d - 1) % p:
            out.append(Relation(f"p={p}: -S_p = N_p", True, is_isomorphic(Sf.p_part(p).negated(), N.p_part(p))))
        else:
            ell_ok = _ell(Sf, p) == _ell(N, p) + 1
            us, un = scaled_determinant(Sf, p, negate=True), scaled_determinant(N, p)
            det_ok = is_unit_square(us / (-2 * un), p)
            out.append(Relation(f"p={p}: l_p(S) = l_p(N) + 1, determinants", True, ell_ok and det_ok))

    S2, N2 = Sf.p_part(2), N.p_part(2)
    if d == 1:
        if NS.type == "I":
            out.append(Relation("p=2, d=1, type I: l_2(N) = l_2(S) + 1", True, N2.rank == S2.rank + 1))
        else:
            out.append(Relation("p=2, d=1, type II: l_2(S) = l_2(N) + 1", True, S2.rank == N2.rank + 1))
    elif d % 2:
        if NS.type == "I":
            out.append(Relation("p=2, d odd, type I: l_2 equal, N_2 odd", True, S2.rank == N2.rank and is_odd(N2)))
        else:
            out.append(Relation("p=2, d odd, type II: l_2(S) = l_2(N) + 2, S_2 odd", True, S2.rank == N2.rank + 2 and is_odd(S2)))
    else:
        if NS.type == "I":
            out.append(Relation("p=2, d even, type I: S_2 = N_2 as groups", True, sorted(S2.orders) == sorted(N2.orders)))
        else:
            out.append(Relation("p=2, d even, type II: l_2(S) = l_2(N) + 2, S_2 odd", True, S2.rank == N2.rank + 2 and is_odd(S2)))
    return out


# ---------- random instances ----------
def random_definite(d: int, rng: random.Random, *, extra_rank: int = 2, spread: int = 2) -> PolarizedDefinite:
    """
    S = (Z hbar + Z y) + Z (hbar + y)/d plus a random definite summand, where
    y^2 = 2d(d + 1); hbar is primitive and hbar.S = 2(d - 1)Z.
    """
    R = _random_even_definite(rng, extra_rank, spread)
    n = 2 + extra_rank
    G = np.zeros((n, n), dtype=object)
    if d == 1:
        # S = <4> + R, hbar = 0
        G[0, 0], G[1, 1] = 4, 4
        G[2:, 2:] = R
        return PolarizedDefinite(IntegerLattice(linalg.to_rows(G)), (0,) * n, 1)
    # basis g = (hbar + y)/d, y
    hh, yy = 2 * d * (d - 1), 2 * d * (d + 1)
    G[0, 0] = (hh + yy) // (d * d)
    G[0, 1] = G[1, 0] = yy // d
    G[1, 1] = yy
    G[2:, 2:] = R
    hbar = (d, -1) + (0,) * extra_rank
    return PolarizedDefinite(IntegerLattice(linalg.to_rows(G)), hbar, d)


def _random_even_definite(rng: random.Random, n: int, spread: int) -> np.ndarray:
    while True:
        A = np.zeros((n, n), dtype=object)
        for i in range(n):
            A[i, i] = 2 * rng.randint(2, 2 + spread)
            for j in range(i):
                A[i, j] = A[j, i] = rng.randint(-1, 1)
        if n == 0 or IntegerLattice(linalg.to_rows(A)).is_positive_definite:
            return A


def random_hyperbolic(d: int, rng: random.Random, *, extra_rank: int = 2) -> PolarizedHyperbolic:
    """
    A type II lattice U + (-E): h = e + d f, with a root and a norm 4 vector in
    E so that a conic exists for every d.
    """
    R = _random_even_definite(rng, extra_rank, 2)
    n = 4 + extra_rank
    G = np.zeros((n, n), dtype=object)
    G[0, 1] = G[1, 0] = 1
    G[2, 2] = G[3, 3] = -2
    G[4:, 4:] = -R
    h = (1, d) + (0,) * (n - 2)
    return PolarizedHyperbolic(IntegerLattice(linalg.to_rows(G)), h, d)
