"""
Fincke–Pohst enumeration of lattice vectors, in exact integer arithmetic.

The quadratic form is LLL-reduced, split as sum_i D_i (x_i + sum_j R_ij x_j)^2
and then scaled so that every partial sum is an integer; the search compares
integers only.
"""
from __future__ import annotations

import logging
import math
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from conics import linalg
from conics.errors import UnboundedEnumerationError

logger = logging.getLogger(__name__)

Vector = tuple[int, ...]


# ---------- helpers ----------
def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _check_definite(gram) -> None:
    _, D = linalg.ldl(gram)
    if len(D) != len(gram) or any(d <= 0 for d in D):
        raise UnboundedEnumerationError()


class _ScaledForm:
    """Integer data for sum_i W_i Z_i^2 == scale * Q(y - c)."""

    def __init__(self, gram, center: Sequence[Fraction]):
        n = len(gram)
        R, D = linalg.ldl(gram)
        self.n = n
        self.den = [linalg.lcm_denominator(R[i][i + 1:]) for i in range(n)]
        self.coeffs = [
            [(j, int(R[i][j] * self.den[i])) for j in range(i + 1, n) if R[i][j] != 0]
            for i in range(n)
        ]
        omega = [D[i] / (self.den[i] ** 2) for i in range(n)]
        delta = linalg.lcm_denominator(omega)
        self.weights = [int(w * delta) for w in omega]
        self.center_den = linalg.lcm_denominator(center)
        self.center = [int(c * self.center_den) for c in center]
        self.delta = delta

    def budget(self, target: Fraction) -> tuple[list[int], int]:
        """Weights and right-hand side for a rational target value."""
        td = target.denominator
        return [w * td for w in self.weights], self.delta * self.center_den ** 2 * target.numerator


def enumerate_ellipsoid(
    gram,
    target,
    *,
    center: Sequence | None = None,
    exact: bool = True,
    reduce: bool = True,
) -> list[Vector]:
    """
    All integer y with (y - c).M.(y - c) == target (or <= target when exact=False).
    M must be positive definite.
    """
    n = len(gram)
    target = Fraction(target)
    if target < 0:
        return []
    if n == 0:
        return [()] if (target == 0 or not exact) else []
    _check_definite(gram)
    c = [Fraction(x) for x in center] if center is not None else [Fraction(0)] * n

    if reduce:
        G, U = linalg.lll_gram(gram)
        if any(c):
            c = list(linalg.rational_inverse(U.T).dot(np.array(c, dtype=object)))
    else:
        G, U = linalg.int_matrix(gram), linalg.identity(n)

    form = _ScaledForm([[Fraction(x) for x in row] for row in G], c)
    W, total = form.budget(target)
    den, coeffs, u, Dn = form.den, form.coeffs, form.center, form.center_den
    t = [0] * n
    y = [0] * n
    found: list[list[int]] = []

    def descend(i: int, rem: int) -> None:
        s = sum(a * t[j] for j, a in coeffs[i])
        if i == 0 and exact:
            q, r = divmod(rem, W[0])
            if r:
                return
            z = math.isqrt(q)
            if z * z != q:
                return
            for Z in ((z, -z) if z else (0,)):
                num = Z - s
                if num % den[0]:
                    continue
                ti = num // den[0]
                if (ti + u[0]) % Dn:
                    continue
                y[0] = (ti + u[0]) // Dn
                found.append(list(y))
            return
        zmax = math.isqrt(rem // W[i])
        lo = _ceil_div(-zmax - s + den[i] * u[i], den[i] * Dn)
        hi = (zmax - s + den[i] * u[i]) // (den[i] * Dn)
        for yi in range(lo, hi + 1):
            ti = Dn * yi - u[i]
            Z = den[i] * ti + s
            cost = W[i] * Z * Z
            if cost > rem:
                continue
            t[i], y[i] = ti, yi
            if i == 0:
                if not exact or cost == rem:
                    found.append(list(y))
            else:
                descend(i - 1, rem - cost)
        t[i] = 0

    descend(n - 1, total)
    Ut = U.T
    out = sorted(tuple(int(v) for v in Ut.dot(np.array(yy, dtype=object))) for yy in found)
    logger.debug("ellipsoid enumeration: rank=%d target=%s -> %d vectors", n, target, len(out))
    return out


def enumerate_vectors(
    gram,
    norm,
    constraints: Iterable[tuple[Sequence, object]] = (),
    *,
    exact: bool = True,
) -> list[Vector]:
    """
    Integer vectors x with x.G.x == norm and x.G.w_i == c_i for each (w_i, c_i).

    The affine solution set of the constraints is split off and the enumeration
    runs in the kernel, which has to be definite.
    """
    G = linalg.int_matrix(gram)
    n = len(G)
    rows, rhs = [], []
    for w, c in constraints:
        w = np.array([Fraction(x) for x in w], dtype=object)
        row = w.dot(G)
        den = linalg.lcm_denominator(list(row) + [c])
        rows.append([int(x * den) for x in row])
        rhs.append(int(Fraction(c) * den))
    if not rows:
        return enumerate_ellipsoid(G, norm, exact=exact)

    solution = linalg.solve_integer(linalg.int_matrix(rows), rhs)
    if solution is None:
        return []
    x0, K = solution
    Gx0 = G.dot(x0)
    const = int(x0.dot(Gx0))
    if K.shape[1] == 0:
        ok = const == norm if exact else const <= norm
        return [tuple(int(v) for v in x0)] if ok else []

    M = K.T.dot(G).dot(K)
    b = K.T.dot(Gx0)
    _check_definite(M)
    Minv = linalg.rational_inverse(M)
    c = -Minv.dot(b)
    target = Fraction(norm) - const + c.dot(M).dot(c)
    ys = enumerate_ellipsoid(M, target, center=list(c), exact=exact)
    out = sorted(tuple(int(v) for v in x0 + K.dot(np.array(yy, dtype=object))) for yy in ys)
    return out
