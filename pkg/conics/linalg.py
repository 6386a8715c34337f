"""
Exact integer linear algebra on numpy object arrays.

Every routine keeps entries as Python ints (or Fractions), so results are
exact whatever the size of the intermediate numbers.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np
from sympy.polys.domains import QQ, ZZ
from sympy.polys.matrices import DomainMatrix


# ---------- construction ----------
def int_matrix(rows, ncols: int | None = None) -> np.ndarray:
    rows = [[int(x) for x in row] for row in rows]
    if not rows:
        return np.zeros((0, ncols or 0), dtype=object)
    A = np.empty((len(rows), len(rows[0])), dtype=object)
    for i, row in enumerate(rows):
        A[i, :] = row
    return A


def identity(n: int) -> np.ndarray:
    I = np.zeros((n, n), dtype=object)
    for i in range(n):
        I[i, i] = 1
    return I


def to_rows(A: np.ndarray) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in A)


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b != 0:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


# ---------- Hermite / Smith ----------
class HermiteForm(NamedTuple):
    h: np.ndarray        # U @ A
    u: np.ndarray        # unimodular
    pivots: list[int]

    @property
    def rank(self) -> int:
        return len(self.pivots)


def hermite_normal_form(A) -> HermiteForm:
    """
    Row Hermite normal form: U @ A = H, H upper echelon with positive pivots
    and the entries above each pivot reduced into [0, pivot).
    """
    H = np.array(A, dtype=object).copy()
    if H.ndim != 2:
        H = H.reshape(len(H), -1)
    m, n = H.shape
    U = identity(m)
    r = 0
    pivots: list[int] = []
    for j in range(n):
        if r == m:
            break
        for i in range(r + 1, m):
            b = H[i, j]
            if b == 0:
                continue
            a = H[r, j]
            g, x, y = xgcd(a, b)
            ag, bg = a // g, b // g
            H[r], H[i] = x * H[r] + y * H[i], -bg * H[r] + ag * H[i]
            U[r], U[i] = x * U[r] + y * U[i], -bg * U[r] + ag * U[i]
        if H[r, j] == 0:
            continue
        if H[r, j] < 0:
            H[r] = -H[r]
            U[r] = -U[r]
        for i in range(r):
            q = H[i, j] // H[r, j]
            if q:
                H[i] = H[i] - q * H[r]
                U[i] = U[i] - q * U[r]
        pivots.append(j)
        r += 1
    return HermiteForm(H, U, pivots)


def hnf_rows(A, ncols: int | None = None) -> np.ndarray:
    """Nonzero rows of the Hermite normal form: a canonical basis of the row span."""
    A = np.array(A, dtype=object)
    if A.size == 0:
        return np.zeros((0, ncols or 0), dtype=object)
    hf = hermite_normal_form(A)
    return hf.h[: hf.rank].copy()


class SmithForm(NamedTuple):
    d: np.ndarray        # S @ A @ T
    s: np.ndarray
    t: np.ndarray

    @property
    def diagonal(self) -> list[int]:
        return [int(self.d[i, i]) for i in range(min(self.d.shape))]

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal if x != 0)


def smith_normal_form(A) -> SmithForm:
    """S @ A @ T = D with D diagonal, d_i >= 0 and d_i | d_{i+1}."""
    D = np.array(A, dtype=object).copy()
    m, n = D.shape
    S, T = identity(m), identity(n)
    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    v = D[i, j]
                    if v != 0 and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
            if best is None:
                return SmithForm(D, S, T)
            _, i, j = best
            if i != t:
                D[[t, i]] = D[[i, t]]
                S[[t, i]] = S[[i, t]]
            if j != t:
                D[:, [t, j]] = D[:, [j, t]]
                T[:, [t, j]] = T[:, [j, t]]
            p = D[t, t]
            clean = True
            for i in range(t + 1, m):
                q = D[i, t] // p
                if q:
                    D[i] = D[i] - q * D[t]
                    S[i] = S[i] - q * S[t]
                if D[i, t] != 0:
                    clean = False
            for j in range(t + 1, n):
                q = D[t, j] // p
                if q:
                    D[:, j] = D[:, j] - q * D[:, t]
                    T[:, j] = T[:, j] - q * T[:, t]
                if D[t, j] != 0:
                    clean = False
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i, j] % p != 0),
                None,
            )
            if bad is None:
                break
            D[t] = D[t] + D[bad]
            S[t] = S[t] + S[bad]
        if D[t, t] < 0:
            D[t] = -D[t]
            S[t] = -S[t]
    return SmithForm(D, S, T)


def elementary_divisors(A) -> list[int]:
    A = np.array(A, dtype=object)
    if A.size == 0:
        return []
    return [d for d in smith_normal_form(A).diagonal if d != 0]


# ---------- kernels and solving ----------
def integer_kernel(A, ncols: int | None = None) -> np.ndarray:
    """Rows form a Z-basis of {x in Z^n : A @ x = 0}, in Hermite normal form."""
    A = np.array(A, dtype=object)
    n = A.shape[1] if A.ndim == 2 and A.size else (ncols if ncols is not None else A.shape[-1])
    if A.size == 0:
        return identity(n)
    hf = hermite_normal_form(A.T.copy())
    K = hf.u[hf.rank:]
    if len(K) == 0:
        return np.zeros((0, n), dtype=object)
    return hnf_rows(K)


def saturation(A, ncols: int | None = None) -> np.ndarray:
    """HNF basis of (Q-span of rows of A) intersected with Z^n."""
    A = np.array(A, dtype=object)
    n = A.shape[1] if A.ndim == 2 and A.size else ncols
    if A.size == 0:
        return np.zeros((0, n or 0), dtype=object)
    K = integer_kernel(A)
    if len(K) == 0:
        return identity(n)
    return integer_kernel(K)


def solve_integer(C, c) -> tuple[np.ndarray, np.ndarray] | None:
    """
    Integer solutions of C @ x = c as x0 + K @ y.
    Returns (x0, K) with K's columns a Z-basis of the kernel, or None.
    """
    C = np.array(C, dtype=object)
    c = [int(v) for v in c]
    m, n = C.shape
    snf = smith_normal_form(C)
    rhs = snf.s.dot(np.array(c, dtype=object)) if m else np.zeros(0, dtype=object)
    diag = snf.diagonal
    rank = snf.rank
    y = np.zeros(n, dtype=object)
    for i in range(m):
        if i < rank:
            if rhs[i] % diag[i] != 0:
                return None
            y[i] = rhs[i] // diag[i]
        elif rhs[i] != 0:
            return None
    x0 = snf.t.dot(y) if n else y
    return np.array([int(v) for v in x0], dtype=object), snf.t[:, rank:].copy()


# ---------- determinants, ranks, inverses ----------
def _domain_matrix(A, domain) -> DomainMatrix:
    rows = [[_to_domain(x, domain) for x in row] for row in A]
    return DomainMatrix(rows, (len(rows), len(rows[0]) if rows else 0), domain)


def _to_domain(x, domain):
    if domain is ZZ:
        return ZZ(int(x))
    x = Fraction(x)
    return QQ(x.numerator, x.denominator)


def _from_qq(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def determinant(A) -> int:
    A = np.array(A, dtype=object)
    if A.size == 0:
        return 1
    return int(_domain_matrix(A, ZZ).det())


def rational_determinant(A) -> Fraction:
    A = np.array(A, dtype=object)
    if A.size == 0:
        return Fraction(1)
    return _from_qq(_domain_matrix(A, QQ).det())


def matrix_rank(A) -> int:
    A = np.array(A, dtype=object)
    if A.size == 0:
        return 0
    return int(_domain_matrix(A, QQ).rank())


def rational_inverse(A) -> np.ndarray:
    A = np.array(A, dtype=object)
    inv = _domain_matrix(A, QQ).inv().to_list()
    out = np.empty(A.shape, dtype=object)
    for i, row in enumerate(inv):
        out[i, :] = [_from_qq(x) for x in row]
    return out


def rational_solve_left(B, V) -> np.ndarray | None:
    """
    Solve X @ B = V over Q for full-row-rank B (rows independent).
    Returns None when some row of V is outside the row span of B.
    """
    B = np.array(B, dtype=object)
    V = np.array(V, dtype=object)
    r, n = B.shape
    if r == 0:
        return None if any(x != 0 for x in V.flat) else np.zeros((len(V), 0), dtype=object)
    # pick r independent columns of B
    hf = hermite_normal_form(B)
    cols = hf.pivots
    Binv = rational_inverse(B[:, cols])
    X = V[:, cols].dot(Binv)
    if (X.dot(B) != V).any():
        return None
    return X


def lcm_denominator(values) -> int:
    return math.lcm(1, *(Fraction(v).denominator for v in values))


# ---------- lattice reduction ----------
def lll_gram(gram, delta: Fraction = Fraction(3, 4)) -> tuple[np.ndarray, np.ndarray]:
    """
    Exact LLL on a positive definite Gram matrix.

    Returns (G', U) with G' = U @ G @ U.T and U unimodular; the rows of U are the
    reduced basis written in the old one.
    """
    n = len(gram)
    G = [[int(x) for x in row] for row in gram]
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    mu = [[Fraction(0)] * n for _ in range(n)]
    B = [Fraction(0)] * n
    for k in range(n):
        for j in range(k):
            s = Fraction(G[k][j]) - sum(mu[j][i] * mu[k][i] * B[i] for i in range(j))
            mu[k][j] = s / B[j]
        B[k] = G[k][k] - sum(mu[k][j] ** 2 * B[j] for j in range(k))
        if B[k] <= 0:
            raise ValueError("Gram matrix is not positive definite")

    def size_reduce(k: int, l: int) -> None:
        q = round(mu[k][l])
        if not q:
            return
        U[k] = [a - q * b for a, b in zip(U[k], U[l])]
        G[k] = [a - q * b for a, b in zip(G[k], G[l])]
        for i in range(n):
            G[i][k] = G[i][k] - q * G[i][l]
        mu[k][l] -= q
        for j in range(l):
            mu[k][j] -= q * mu[l][j]

    k = 1
    while k < n:
        size_reduce(k, k - 1)
        if B[k] < (delta - mu[k][k - 1] ** 2) * B[k - 1]:
            m = mu[k][k - 1]
            b_new = B[k] + m * m * B[k - 1]
            mu[k][k - 1] = m * B[k - 1] / b_new
            B[k] = B[k - 1] * B[k] / b_new
            B[k - 1] = b_new
            U[k], U[k - 1] = U[k - 1], U[k]
            G[k], G[k - 1] = G[k - 1], G[k]
            for row in G:
                row[k], row[k - 1] = row[k - 1], row[k]
            for j in range(k - 1):
                mu[k][j], mu[k - 1][j] = mu[k - 1][j], mu[k][j]
            for i in range(k + 1, n):
                t = mu[i][k]
                mu[i][k] = mu[i][k - 1] - m * t
                mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k]
            k = max(k - 1, 1)
        else:
            for l in range(k - 2, -1, -1):
                size_reduce(k, l)
            k += 1
    return int_matrix(G), int_matrix(U)


def ldl(gram) -> tuple[list[list[Fraction]], list[Fraction]]:
    """
    G = R.T @ diag(D) @ R with R unit upper triangular, so that
    x.G.x = sum_i D_i (x_i + sum_{j>i} R_ij x_j)^2.
    """
    n = len(gram)
    A = [[Fraction(x) for x in row] for row in gram]
    R = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    D: list[Fraction] = []
    for i in range(n):
        d = A[i][i]
        D.append(d)
        if d == 0:
            return R, D
        for j in range(i + 1, n):
            R[i][j] = A[i][j] / d
        for j in range(i + 1, n):
            for k in range(i + 1, n):
                A[j][k] -= R[i][j] * d * R[i][k]
    return R, D


def vector_matrix(vectors: Sequence[Sequence[int]], n: int) -> np.ndarray:
    if not vectors:
        return np.zeros((0, n), dtype=object)
    return int_matrix(vectors)
