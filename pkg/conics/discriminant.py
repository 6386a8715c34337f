"""
Finite quadratic forms: discriminant groups L^/L with q: L^/L -> Q/2Z.

A form is stored on a list of generators of prime-power order. q is kept on
the generators (lifted into [0, 2)) and b on pairs of distinct generators
(lifted into [0, 1)).
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from sympy import factorint
from sympy.ntheory import legendre_symbol

from conics import linalg
from conics.errors import DegenerateLatticeError, NotTwoTorsionError

logger = logging.getLogger(__name__)

Element = tuple[int, ...]

ODD_FORM = "undefined-odd-form"


def _mod1(x: Fraction) -> Fraction:
    return x - math.floor(x)


def _mod2(x: Fraction) -> Fraction:
    return x - 2 * math.floor(x / 2)


@dataclass(frozen=True)
class FiniteQuadraticForm:
    orders: tuple[int, ...]
    q_diag: tuple[Fraction, ...]
    b_off: tuple[tuple[Fraction, ...], ...]
    # generators as dual vectors of the lattice the form came from
    lifts: tuple[tuple[Fraction, ...], ...] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        k = len(self.orders)
        object.__setattr__(self, "orders", tuple(int(o) for o in self.orders))
        object.__setattr__(self, "q_diag", tuple(_mod2(Fraction(x)) for x in self.q_diag))
        b = tuple(
            tuple(Fraction(0) if i == j else _mod1(Fraction(self.b_off[i][j])) for j in range(k))
            for i in range(k)
        )
        object.__setattr__(self, "b_off", b)

    # ---------- construction ----------
    @classmethod
    def trivial(cls) -> "FiniteQuadraticForm":
        return cls((), (), ())

    @classmethod
    def from_gram(cls, gram) -> "FiniteQuadraticForm":
        """Discriminant form of the lattice with the given (nondegenerate) Gram matrix."""
        G = linalg.int_matrix(gram)
        n = len(G)
        if n and linalg.determinant(G) == 0:
            raise DegenerateLatticeError()
        if n == 0:
            return cls.trivial()
        snf = linalg.smith_normal_form(G)
        lifts, orders = [], []
        for i, d in enumerate(snf.diagonal):
            if d <= 1:
                continue
            g = [Fraction(int(x), d) for x in snf.t[:, i]]
            for p, a in sorted(factorint(d).items()):
                pa = p ** a
                lifts.append(tuple(x * (d // pa) for x in g))
                orders.append(pa)
        return cls.from_lifts(G, lifts, orders)

    @classmethod
    def from_lifts(cls, gram, lifts, orders) -> "FiniteQuadraticForm":
        G = linalg.int_matrix(gram)
        L = [np.array(v, dtype=object) for v in lifts]
        GL = [G.dot(v) for v in L]
        k = len(L)
        q = [L[i].dot(GL[i]) for i in range(k)]
        b = [[L[i].dot(GL[j]) for j in range(k)] for i in range(k)]
        return cls(tuple(orders), tuple(q), tuple(tuple(r) for r in b),
                   lifts=tuple(tuple(Fraction(x) for x in v) for v in lifts))

    # ---------- group structure ----------
    @property
    def rank(self) -> int:
        return len(self.orders)

    @cached_property
    def size(self) -> int:
        return math.prod(self.orders)

    @property
    def is_trivial(self) -> bool:
        return self.size == 1

    @cached_property
    def primes(self) -> tuple[int, ...]:
        return tuple(sorted({next(iter(factorint(o))) for o in self.orders}))

    @cached_property
    def exponent(self) -> int:
        return math.lcm(1, *self.orders)

    def zero(self) -> Element:
        return (0,) * self.rank

    def reduce(self, x: Sequence[int]) -> Element:
        return tuple(int(a) % o for a, o in zip(x, self.orders))

    def add(self, x: Element, y: Element) -> Element:
        return tuple((a + c) % o for a, c, o in zip(x, y, self.orders))

    def scale(self, k: int, x: Element) -> Element:
        return tuple((k * a) % o for a, o in zip(x, self.orders))

    def order_of(self, x: Element) -> int:
        return math.lcm(1, *(o // math.gcd(a, o) for a, o in zip(x, self.orders)))

    def elements(self) -> Iterable[Element]:
        return itertools.product(*(range(o) for o in self.orders))

    def generator(self, i: int) -> Element:
        return tuple(int(j == i) for j in range(self.rank))

    # ---------- form ----------
    def b(self, x: Element, y: Element) -> Fraction:
        s = Fraction(0)
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if yj:
                    s += xi * yj * (self.q_diag[i] if i == j else self.b_off[i][j])
        return _mod1(s)

    def q(self, x: Element) -> Fraction:
        s = Fraction(0)
        idx = [i for i, a in enumerate(x) if a]
        for a, i in enumerate(idx):
            s += x[i] * x[i] * self.q_diag[i]
            for j in idx[a + 1:]:
                s += 2 * x[i] * x[j] * self.b_off[i][j]
        return _mod2(s)

    def lift(self, x: Element) -> tuple[Fraction, ...]:
        if self.lifts is None:
            raise ValueError("form carries no lattice lifts")
        n = len(self.lifts[0]) if self.lifts else 0
        out = [Fraction(0)] * n
        for a, v in zip(x, self.lifts):
            if a:
                out = [o + a * c for o, c in zip(out, v)]
        return tuple(out)

    # ---------- derived forms ----------
    def p_part(self, p: int) -> "FiniteQuadraticForm":
        idx = [i for i, o in enumerate(self.orders) if o % p == 0]
        return self._restrict(idx)

    def p_indices(self, p: int) -> list[int]:
        return [i for i, o in enumerate(self.orders) if o % p == 0]

    def _restrict(self, idx: list[int]) -> "FiniteQuadraticForm":
        return FiniteQuadraticForm(
            tuple(self.orders[i] for i in idx),
            tuple(self.q_diag[i] for i in idx),
            tuple(tuple(self.b_off[i][j] for j in idx) for i in idx),
            lifts=None if self.lifts is None else tuple(self.lifts[i] for i in idx),
        )

    def negated(self) -> "FiniteQuadraticForm":
        return FiniteQuadraticForm(
            self.orders,
            tuple(-x for x in self.q_diag),
            tuple(tuple(-x for x in row) for row in self.b_off),
        )

    def direct_sum(self, other: "FiniteQuadraticForm") -> "FiniteQuadraticForm":
        k, m = self.rank, other.rank
        b = [[Fraction(0)] * (k + m) for _ in range(k + m)]
        for i in range(k):
            for j in range(k):
                b[i][j] = self.b_off[i][j]
        for i in range(m):
            for j in range(m):
                b[k + i][k + j] = other.b_off[i][j]
        return FiniteQuadraticForm(self.orders + other.orders, self.q_diag + other.q_diag,
                                   tuple(tuple(r) for r in b))

    def orthogonal(self, vectors: Sequence[Element]) -> list[Element]:
        """Generators of {x : b(x, v) = 0 for every v}."""
        k = self.rank
        if k == 0:
            return []
        N = self.exponent
        vectors = [v for v in vectors if any(v)]
        if not vectors:
            return [self.generator(i) for i in range(k)]
        rows = []
        for v in vectors:
            rows.append([int(self.b(self.generator(i), v) * N) for i in range(k)])
        A = [r + [N if a == t else 0 for a in range(len(vectors))] for t, r in enumerate(rows)]
        K = linalg.integer_kernel(linalg.int_matrix(A))
        gens = {self.reduce(row[:k]) for row in K}
        gens.discard(self.zero())
        return sorted(gens)

    def subquotient(self, generators: Sequence[Element], kernel: Sequence[Element] = ()):
        """
        The form on <generators>/<kernel>, kernel isotropic inside the subgroup.
        Returns (form, images) where images[i] is the element of self that
        the i-th new generator stands for.
        """
        k = len(generators)
        if k == 0:
            return FiniteQuadraticForm.trivial(), []
        cols = [list(g) for g in generators] + [[-a for a in z] for z in kernel]
        A = [[c[r] for c in cols] + [self.orders[r] if a == r else 0 for a in range(self.rank)]
             for r in range(self.rank)]
        K = linalg.integer_kernel(linalg.int_matrix(A))
        R = linalg.hnf_rows([row[:k] for row in K], ncols=k)
        snf = linalg.smith_normal_form(R)
        Tinv = linalg.rational_inverse(snf.t)
        images, orders = [], []
        for i, d in enumerate(snf.diagonal + [0] * (k - len(snf.diagonal))):
            if d == 1:
                continue
            if d == 0:
                raise ValueError("subgroup presentation is not finite")
            coeffs = [int(c) for c in Tinv[i]]
            h = self.zero()
            for c, g in zip(coeffs, generators):
                h = self.add(h, self.scale(c, g))
            for p, a in sorted(factorint(d).items()):
                pa = p ** a
                images.append(self.scale(d // pa, h))
                orders.append(pa)
        kq = len(images)
        q = tuple(self.q(x) for x in images)
        b = tuple(tuple(self.b(images[i], images[j]) for j in range(kq)) for i in range(kq))
        lifts = None
        if self.lifts is not None:
            lifts = tuple(self.lift(x) for x in images)
        return FiniteQuadraticForm(tuple(orders), q, b, lifts=lifts), images

    # ---------- serialization ----------
    def to_dict(self) -> dict:
        return {
            "orders": list(self.orders),
            "q_diag": [str(x) for x in self.q_diag],
            "b_off": [[str(x) for x in row] for row in self.b_off],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FiniteQuadraticForm":
        return cls(tuple(data["orders"]), tuple(Fraction(x) for x in data["q_diag"]),
                   tuple(tuple(Fraction(x) for x in row) for row in data["b_off"]))


# ---------- invariants ----------
@dataclass(frozen=True)
class PadicInvariants:
    p: int
    ell: int
    size: int
    det_class: str
    parity: str | None = None
    # the unit itself, mod p (odd p) or mod 8 (p = 2), when defined
    unit: int | None = field(default=None, compare=False)


def p_part(F: FiniteQuadraticForm, p: int) -> FiniteQuadraticForm:
    return F.p_part(p)


def two_torsion(F: FiniteQuadraticForm) -> list[Element]:
    """Generators (o/2) e_i of the subgroup of elements of order <= 2."""
    return [F.scale(o // 2, F.generator(i)) for i, o in enumerate(F.orders) if o % 2 == 0]


def is_odd(F: FiniteQuadraticForm) -> bool:
    return any(F.q(t).denominator != 1 for t in two_torsion(F))


def _bilinear_matrix(F: FiniteQuadraticForm, q_shift=None, b_shift=None) -> list[list[Fraction]]:
    k = F.rank
    B = [[F.b_off[i][j] for j in range(k)] for i in range(k)]
    for i in range(k):
        B[i][i] = F.q_diag[i] + (q_shift[i] if q_shift else 0)
    if b_shift:
        for (i, j), s in b_shift.items():
            B[i][j] += s
            B[j][i] += s
    return B


def unit_of(F: FiniteQuadraticForm, q_shift=None, b_shift=None) -> Fraction:
    """det(B) * |F| for a p-primary form: a p-adic unit (rational)."""
    if F.rank == 0:
        return Fraction(1)
    return linalg.rational_determinant(_bilinear_matrix(F, q_shift, b_shift)) * F.size


def unit_class(u: Fraction, p: int) -> int:
    """Representative of u mod squares: u mod p for odd p, u mod 8 for p = 2."""
    v = u.numerator * u.denominator
    while v % p == 0:
        v //= p
    return v % 8 if p == 2 else v % p


def is_unit_square(u: Fraction, p: int) -> bool:
    c = unit_class(u, p)
    if p == 2:
        return c == 1
    return legendre_symbol(c, p) == 1


def invariants(F: FiniteQuadraticForm, p: int) -> PadicInvariants:
    Fp = F.p_part(p)
    ell = Fp.rank
    parity = None
    if p == 2:
        parity = "odd" if is_odd(Fp) else "even"
    if parity == "odd":
        return PadicInvariants(p, ell, Fp.size, ODD_FORM, parity)
    u = unit_class(unit_of(Fp), p)
    if p == 2:
        det_class = str(u)
    else:
        det_class = "square" if legendre_symbol(u, p) == 1 else "nonsquare"
    return PadicInvariants(p, ell, Fp.size, det_class, parity, unit=u)


def scaled_determinant(F: FiniteQuadraticForm, p: int, *, negate: bool = False) -> Fraction | None:
    """
    |F| * det_p(F) (or det_p(-F)) as a p-adic unit, None when p = 2 and F_2 is odd.
    """
    Fp = F.p_part(p)
    if p == 2 and is_odd(Fp):
        return None
    if negate:
        Fp = Fp.negated()
    return Fraction(F.size, Fp.size) * unit_of(Fp)


def is_characteristic(F: FiniteQuadraticForm, v: Element) -> bool:
    if F.scale(2, v) != F.zero():
        raise NotTwoTorsionError()
    return all(_mod1(F.q(t)) == F.b(t, v) for t in two_torsion(F))


# ---------- isomorphism ----------
def is_isomorphic(F: FiniteQuadraticForm, G: FiniteQuadraticForm) -> bool:
    if F.size != G.size:
        return False
    primes = sorted(set(F.primes) | set(G.primes))
    return all(_isomorphic_primary(F.p_part(p), G.p_part(p)) for p in primes)


def _isomorphic_primary(F: FiniteQuadraticForm, G: FiniteQuadraticForm) -> bool:
    if sorted(F.orders) != sorted(G.orders):
        return False
    if F.rank == 0:
        return True
    order = sorted(range(F.rank), key=lambda i: -F.orders[i])
    pool: dict[tuple[int, Fraction], list[Element]] = {}
    for x in G.elements():
        pool.setdefault((G.order_of(x), G.q(x)), []).append(x)
    images: list[Element] = []

    def extend(pos: int) -> bool:
        if pos == len(order):
            return True
        i = order[pos]
        e = F.generator(i)
        for x in pool.get((F.orders[i], F.q_diag[i]), []):
            if all(G.b(x, images[t]) == F.b_off[i][order[t]] for t in range(pos)):
                images.append(x)
                if extend(pos + 1):
                    return True
                images.pop()
        return False

    return extend(0)


# ---------- isotropic reduction ----------
@dataclass(frozen=True)
class ExtensionReduction:
    form: FiniteQuadraticForm
    kernels: tuple[Element, ...]


def within_extension_bounds(F: FiniteQuadraticForm) -> bool:
    for p in F.primes:
        Fp = F.p_part(p)
        if Fp.rank <= 2:
            continue
        if p == 2 and Fp.rank <= 3 and is_odd(Fp):
            continue
        return False
    return True


def _violating_primes(F: FiniteQuadraticForm, anisotropic: bool) -> list[int]:
    if anisotropic:
        return list(F.primes)
    out = []
    for p in F.primes:
        Fp = F.p_part(p)
        if Fp.rank <= 2 or (p == 2 and Fp.rank <= 3 and is_odd(Fp)):
            continue
        out.append(p)
    return out


def smallest_isotropic(F: FiniteQuadraticForm, p: int) -> Element | None:
    """Lexicographically smallest nonzero isotropic element of F_p, order-p elements first."""
    idx = F.p_indices(p)
    ranges = [range(F.orders[i]) if i in idx else range(1) for i in range(F.rank)]
    best_any = None
    for x in itertools.product(*ranges):
        if not any(x) or F.q(x) != 0:
            continue
        if F.order_of(x) == p:
            return x
        if best_any is None:
            best_any = x
    return best_any


def reduce_extension(F: FiniteQuadraticForm, *, anisotropic: bool = False) -> ExtensionReduction:
    """
    Pass to K^perp/K for isotropic cyclic K until every p-part satisfies
    l_p <= 2 (or p = 2, l_2 <= 3 and the 2-part is odd). With anisotropic=True
    the loop continues while any isotropic element is left.
    """
    kernels: list[Element] = []
    current = F
    while True:
        x = None
        for p in _violating_primes(current, anisotropic):
            x = smallest_isotropic(current, p)
            if x is not None:
                break
            if not anisotropic:
                logger.warning("no isotropic element in the %d-part of a form of size %d", p, current.size)
        if x is None:
            return ExtensionReduction(current, tuple(kernels))
        kernels.append(x)
        current, _ = current.subquotient(current.orthogonal([x]), kernel=[x])
        logger.debug("isotropic reduction step: size -> %d", current.size)
