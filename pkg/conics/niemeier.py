"""
Niemeier lattices: glue-code extensions of A_n/D_n root lattices and the
Leech lattice, together with the named 12-polarizations hbar.

Vectors are stored in *scaled ambient coordinates*: integer rows X with
x . y = X . Y / scale. For a glued lattice the ambient space is the
orthogonal sum of the standard coordinates of the components and scale is
the square of the common glue denominator; for the Leech lattice it is the
usual 1/sqrt(8) normalisation.
"""
from __future__ import annotations

import itertools
import json
import logging
import math
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from pathlib import Path
from typing import Sequence

import numpy as np

from conics import linalg
from conics.codes import GOLAY_B, TERNARY_A, build_golay, support
from conics.conf import get_setting
from conics.enumeration import enumerate_ellipsoid, enumerate_vectors
from conics.errors import (
    ConicsError,
    InvariantViolation,
    NotContainedError,
    NotReplantableError,
    UnknownCatalogEntryError,
)
from conics.lattice import IntegerLattice

logger = logging.getLogger(__name__)

LEECH = "Leech"
LEECH_SCALE = 8


# ---------- root systems ----------
@dataclass(frozen=True)
class RootSystemComponent:
    kind: str
    n: int
    index: int = 0
    offset: int = 0

    def __post_init__(self):
        if self.kind not in ("A", "D"):
            raise ConicsError(f"unsupported root system {self.kind}{self.n}")
        if self.n < (1 if self.kind == "A" else 4):
            raise ConicsError(f"{self.kind}{self.n} is not a root system of that kind")

    @property
    def label(self) -> str:
        return f"{self.kind}{self.n}"

    @property
    def dim(self) -> int:
        return self.n + 1 if self.kind == "A" else self.n

    @property
    def classes(self) -> int:
        return self.n + 1 if self.kind == "A" else 4

    @property
    def det(self) -> int:
        return self.classes

    @property
    def denominator(self) -> int:
        return self.n + 1 if self.kind == "A" else 2

    @property
    def root_count(self) -> int:
        return self.n * (self.n + 1) if self.kind == "A" else 2 * self.n * (self.n - 1)

    @cached_property
    def simple_roots(self) -> tuple[tuple[int, ...], ...]:
        rows = []
        steps = self.n if self.kind == "A" else self.n - 1
        for i in range(steps):
            e = [0] * self.dim
            e[i], e[i + 1] = 1, -1
            rows.append(tuple(e))
        if self.kind == "D":
            e = [0] * self.dim
            e[self.n - 2], e[self.n - 1] = 1, 1
            rows.append(tuple(e))
        return tuple(rows)

    @cached_property
    def gram(self) -> tuple[tuple[int, ...], ...]:
        R = np.array(self.simple_roots, dtype=np.int64)
        return linalg.to_rows(R.dot(R.T))

    def glue_vector(self, a: int) -> tuple[Fraction, ...]:
        """The standard minimal representative [a] of a class in the dual quotient."""
        a %= self.classes
        if self.kind == "A":
            m = self.n + 1
            return (Fraction(a, m),) * (m - a) + (Fraction(a - m, m),) * a
        half = Fraction(1, 2)
        if a == 0:
            return (Fraction(0),) * self.n
        if a == 1:
            return (half,) * self.n
        if a == 2:
            return (Fraction(0),) * (self.n - 1) + (Fraction(1),)
        return (half,) * (self.n - 1) + (-half,)

    def in_root_lattice(self, x: Sequence) -> bool:
        if any(Fraction(v).denominator != 1 for v in x):
            return False
        s = sum(int(v) for v in x)
        return s == 0 if self.kind == "A" else s % 2 == 0

    def class_of(self, x: Sequence) -> int:
        for a in range(self.classes):
            g = self.glue_vector(a)
            if self.in_root_lattice([Fraction(v) - c for v, c in zip(x, g)]):
                return a
        raise NotContainedError(f"{tuple(x)} is not in the dual of {self.label}")

    def add(self, a: int, b: int) -> int:
        g, h = self.glue_vector(a), self.glue_vector(b)
        return self.class_of([x + y for x, y in zip(g, h)])

    def negate(self, a: int) -> int:
        return self.class_of([-x for x in self.glue_vector(a)])


@lru_cache(maxsize=None)
def class_shell(kind: str, n: int, a: int, bound: int) -> tuple[tuple[Fraction, tuple[Fraction, ...]], ...]:
    """(norm, vector) for every vector of the coset [a] + R with norm <= bound."""
    comp = RootSystemComponent(kind, n)
    g = np.array(comp.glue_vector(a), dtype=object)
    B = np.array(comp.simple_roots, dtype=object)
    M = linalg.int_matrix(comp.gram)
    c = -linalg.rational_inverse(M).dot(B.dot(g))
    target = Fraction(bound) - g.dot(g) + c.dot(M).dot(c)
    out = []
    for y in enumerate_ellipsoid(M, target, center=list(c), exact=False):
        x = g + np.array(y, dtype=object).dot(B)
        out.append((Fraction(x.dot(x)), tuple(Fraction(v) for v in x)))
    out.sort()
    return tuple(out)


# ---------- glue notation ----------
def parse_glue_word(text: str) -> list[tuple[int, ...]]:
    """
    Glue generators in the usual shorthand: digits outside parentheses are
    fixed, the parenthesised block is taken with all its cyclic shifts.
    """
    if "(" not in text:
        return [tuple(int(ch) for ch in text)]
    head, rest = text.split("(", 1)
    block, tail = rest.split(")", 1)
    pre = [int(ch) for ch in head]
    cyc = [int(ch) for ch in block]
    post = [int(ch) for ch in tail]
    return [tuple(pre + cyc[s:] + cyc[:s] + post) for s in range(len(cyc))]


def _load_json(filename: str) -> dict:
    path = Path(get_setting("DATA_DIR")) / filename
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def glue_catalog() -> dict:
    return _load_json("glue.json")


def hbar_catalog() -> dict:
    return _load_json("hbar.json")


def catalog() -> list[str]:
    return sorted(glue_catalog()) + [LEECH]


# ---------- lattices ----------
@dataclass(frozen=True, eq=False)
class NiemeierLattice:
    name: str
    basis: np.ndarray
    scale: int
    components: tuple[RootSystemComponent, ...] = ()
    code: tuple[tuple[int, ...], ...] = field(default=(), repr=False)
    expected_roots: int | None = None

    @property
    def rank(self) -> int:
        return self.basis.shape[0]

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @property
    def is_leech(self) -> bool:
        return self.name == LEECH

    @cached_property
    def pivots(self) -> list[int]:
        return [int(np.flatnonzero(row)[0]) for row in self.basis]

    @cached_property
    def lattice(self) -> IntegerLattice:
        B = linalg.int_matrix(self.basis.tolist())
        raw = B.dot(B.T)
        if any(x % self.scale for x in raw.flat):
            raise InvariantViolation(f"{self.name}: basis is not integral at scale {self.scale}")
        return IntegerLattice(linalg.to_rows(raw // self.scale), name=self.name)

    @cached_property
    def _basis64(self) -> np.ndarray:
        return np.array(self.basis.tolist(), dtype=np.int64)

    def dot(self, x: Sequence[int], y: Sequence[int]) -> Fraction:
        return Fraction(sum(int(a) * int(b) for a, b in zip(x, y)), self.scale)

    def norm(self, x: Sequence[int]) -> Fraction:
        return self.dot(x, x)

    def coords(self, X) -> np.ndarray:
        """Lattice coordinates of ambient rows, by substitution along the HNF pivots."""
        X = np.atleast_2d(np.array(X, dtype=np.int64))
        B = self._basis64
        C = np.zeros((len(X), self.rank), dtype=np.int64)
        R = X.copy()
        for i, p in enumerate(self.pivots):
            q, r = np.divmod(R[:, p], B[i, p])
            if r.any():
                raise NotContainedError(f"vector is not in {self.name}")
            C[:, i] = q
            R -= np.outer(q, B[i])
        if R.any():
            raise NotContainedError(f"vector is not in {self.name}")
        return C

    def coords_of(self, x: Sequence[int]) -> tuple[int, ...]:
        return tuple(int(v) for v in self.coords([x])[0])

    def contains(self, x: Sequence[int]) -> bool:
        try:
            self.coords([x])
        except NotContainedError:
            return False
        return True

    def from_coords(self, C) -> np.ndarray:
        return np.atleast_2d(np.array(C, dtype=np.int64)).dot(self._basis64)

    def split(self, x: Sequence[int]) -> list[tuple[int, ...]]:
        """Per-component pieces of an ambient vector."""
        return [tuple(int(v) for v in x[c.offset:c.offset + c.dim]) for c in self.components]

    def component_norms(self, x: Sequence[int]) -> list[Fraction]:
        return [Fraction(sum(v * v for v in piece), self.scale) for piece in self.split(x)]

    def is_primitive(self, x: Sequence[int]) -> bool:
        return math.gcd(*(int(v) for v in self.coords_of(x))) == 1

    # ----- shells -----
    @cached_property
    def _shells(self) -> dict[int, np.ndarray]:
        return {}

    def shell(self, norm: int) -> np.ndarray:
        """All lattice vectors of the given norm, as sorted ambient rows."""
        if norm not in self._shells:
            if self.components:
                rows = self._glued_shell(norm)
            elif self.is_leech and norm == 4:
                rows = _leech_norm4()
            else:
                rows = self._enumerated_shell(norm)
            rows = rows[np.lexsort(rows.T[::-1])] if len(rows) else rows.reshape(0, self.dim)
            self._shells[norm] = rows
            logger.info("%s: %d vectors of norm %d", self.name, len(rows), norm)
        return self._shells[norm]

    def roots(self) -> np.ndarray:
        return self.shell(2)

    def _enumerated_shell(self, norm: int) -> np.ndarray:
        C = enumerate_vectors(self.lattice.gram, norm)
        if not C:
            return np.zeros((0, self.dim), dtype=np.int64)
        return self.from_coords(C)

    def _class_options(self, comp: RootSystemComponent, a: int, bound: int):
        den = math.isqrt(self.scale)
        entries = class_shell(comp.kind, comp.n, a, bound)
        norms = np.array([int(nm * self.scale) for nm, _ in entries], dtype=np.int64)
        vecs = np.array([[int(v * den) for v in vec] for _, vec in entries], dtype=np.int64).reshape(len(entries), comp.dim)
        return norms, vecs

    def _glued_shell(self, norm: int) -> np.ndarray:
        target = norm * self.scale
        options = [[self._class_options(c, a, norm) for a in range(c.classes)] for c in self.components]
        found = []
        for word in self.code:
            opts = [options[k][a] for k, a in enumerate(word)]
            mins = [int(o[0].min()) if len(o[0]) else target + 1 for o in opts]
            if sum(mins) > target:
                continue
            suffix = np.cumsum([0] + mins[::-1])[::-1]
            part_norm = np.zeros(1, dtype=np.int64)
            part_vec = np.zeros((1, 0), dtype=np.int64)
            last = len(opts) - 1
            for k, (on, ov) in enumerate(opts):
                total = part_norm[:, None] + on[None, :]
                keep = total == target if k == last else total + suffix[k + 1] <= target
                i, j = np.nonzero(keep)
                part_vec = np.hstack([part_vec[i], ov[j]])
                part_norm = total[i, j]
                if not len(part_norm):
                    break
            if len(part_norm):
                found.append(part_vec)
        if not found:
            return np.zeros((0, self.dim), dtype=np.int64)
        return np.vstack(found)

    # ----- checks -----
    def validate(self) -> None:
        L = self.lattice
        if L.rank != 24:
            raise InvariantViolation(f"{self.name}: rank {L.rank}")
        if abs(L.det) != 1:
            raise InvariantViolation(f"{self.name}: det {L.det}")
        if self.expected_roots is not None:
            found = len(self.roots())
            if found != self.expected_roots:
                raise InvariantViolation(f"{self.name}: {found} roots, expected {self.expected_roots}")

    def same_lattice(self, other: "NiemeierLattice") -> bool:
        """Equal as sets of vectors, comparing at a common scale."""
        m = math.lcm(self.scale, other.scale)
        a, b = math.isqrt(m // self.scale), math.isqrt(m // other.scale)
        if a * a * self.scale != m or b * b * other.scale != m or self.dim != other.dim:
            return False
        A = linalg.hnf_rows(a * linalg.int_matrix(self.basis.tolist()))
        B = linalg.hnf_rows(b * linalg.int_matrix(other.basis.tolist()))
        return A.shape == B.shape and (A == B).all()

    def to_dict(self) -> dict:
        d = self.lattice.to_dict()
        d.update({
            "name": self.name,
            "scale": self.scale,
            "components": [c.label for c in self.components],
            "basis": self.basis.tolist(),
        })
        return d


def _from_generators(name, rows, scale, **kwargs) -> NiemeierLattice:
    H = linalg.hnf_rows(linalg.int_matrix(rows))
    return NiemeierLattice(name, np.array(H.tolist(), dtype=np.int64), scale, **kwargs)


def _span_code(components, generators) -> tuple[tuple[int, ...], ...]:
    zero = (0,) * len(components)
    words = {zero}
    queue = deque([zero])
    while queue:
        w = queue.popleft()
        for g in generators:
            s = tuple(c.add(a, b) for c, a, b in zip(components, w, g))
            if s not in words:
                words.add(s)
                queue.append(s)
    return tuple(sorted(words))


def _glue_generators(entry: dict, count: int) -> list[tuple[int, ...]]:
    code = entry.get("code")
    if code == "golay":
        return [tuple(int(v) for v in row) for row in np.hstack([np.eye(12, dtype=np.int64), GOLAY_B])]
    if code == "ternary-golay":
        return [tuple(int(v) for v in row) for row in np.hstack([np.eye(6, dtype=np.int64), TERNARY_A])]
    words = [w for text in entry["generators"] for w in parse_glue_word(text)]
    if any(len(w) != count for w in words):
        raise ConicsError(f"glue words of the wrong length for {count} components")
    return words


@lru_cache(maxsize=None)
def build_niemeier(name: str) -> NiemeierLattice:
    if name == LEECH:
        return build_leech()
    glue = glue_catalog()
    if name not in glue:
        raise UnknownCatalogEntryError(name, catalog())
    entry = glue[name]
    components = []
    offset = 0
    for kind, n, mult in entry["components"]:
        for _ in range(mult):
            c = RootSystemComponent(kind, n, index=len(components), offset=offset)
            components.append(c)
            offset += c.dim
    components = tuple(components)
    den = math.lcm(*(c.denominator for c in components))
    generators = _glue_generators(entry, len(components))

    rows = []
    for c in components:
        for r in c.simple_roots:
            row = [0] * offset
            row[c.offset:c.offset + c.dim] = [den * v for v in r]
            rows.append(row)
    for word in generators:
        row = []
        for c, a in zip(components, word):
            row.extend(int(den * v) for v in c.glue_vector(a))
        rows.append(row)

    N = _from_generators(
        name,
        rows,
        den * den,
        components=components,
        code=_span_code(components, generators),
        expected_roots=sum(c.root_count for c in components),
    )
    N.validate()
    logger.info("built N(%s): %d glue words, scale %d", name, len(N.code), N.scale)
    return N


@lru_cache(maxsize=None)
def build_leech() -> NiemeierLattice:
    golay = np.hstack([np.eye(12, dtype=np.int64), GOLAY_B])
    rows = [list(2 * row) for row in golay]
    rows.append([-3] + [1] * 23)
    for j in range(1, 24):
        for s in (1, -1):
            row = [0] * 24
            row[0], row[j] = 4, 4 * s
            rows.append(row)
    N = _from_generators(LEECH, rows, LEECH_SCALE, expected_roots=0)
    N.validate()
    return N


@lru_cache(maxsize=None)
def _leech_norm4() -> np.ndarray:
    """The 196560 minimal vectors, assembled shape by shape."""
    golay = build_golay()
    blocks = []

    pairs = np.array(list(itertools.combinations(range(24), 2)))
    for s0, s1 in itertools.product((4, -4), repeat=2):
        X = np.zeros((len(pairs), 24), dtype=np.int64)
        X[np.arange(len(pairs)), pairs[:, 0]] = s0
        X[np.arange(len(pairs)), pairs[:, 1]] = s1
        blocks.append(X)

    signs = np.array([s for s in itertools.product((1, -1), repeat=8) if s.count(-1) % 2 == 0], dtype=np.int64)
    for octad in golay.octads:
        pos = list(support(octad))
        X = np.zeros((len(signs), 24), dtype=np.int64)
        X[:, pos] = 2 * signs
        blocks.append(X)

    words = golay.as_vectors()
    V = 1 - 2 * words
    for i in range(24):
        X = V.copy()
        X[:, i] -= 4 * V[:, i]
        blocks.append(X)
    return np.vstack(blocks)


# ---------- named polarizations ----------
@dataclass(frozen=True, eq=False)
class HbarRepresentative:
    name: str
    lattice: NiemeierLattice
    vector: tuple[int, ...]
    metadata: dict = field(default_factory=dict)

    @property
    def norm(self) -> Fraction:
        return self.lattice.norm(self.vector)

    @property
    def coords(self) -> tuple[int, ...]:
        return self.lattice.coords_of(self.vector)

    def component_norms(self) -> dict[str, int]:
        counts = Counter(n for n in self.lattice.component_norms(self.vector) if n)
        return {str(k): v for k, v in sorted(counts.items())}

    def validate(self) -> None:
        if self.norm != 12:
            raise InvariantViolation(f"{self.name}: hbar^2 = {self.norm}")
        expected = self.metadata.get("component_norms")
        if expected is not None:
            found = self.component_norms()
            if {str(Fraction(k)): v for k, v in expected.items()} != found:
                raise InvariantViolation(f"{self.name}: component norms {found}, expected {expected}")


def _first(items):
    for x in items:
        return x
    raise ConicsError("no Golay witness")


def golay_alpha(shape: str) -> list[Fraction]:
    """
    Coefficients alpha_k with hbar = sum alpha_k r_k in N(24A1). Every
    auxiliary set is the first one, in sorted order, with the stated
    relation to the Golay code.
    """
    golay = build_golay()
    half = Fraction(1, 2)
    alpha = [Fraction(0)] * 24

    def put(points, value):
        for p in points:
            alpha[p] += value

    omega = set(range(24))
    octad = set(support(golay.octads[0]))
    dodecad = set(support(golay.dodecads[0]))
    if shape == "omega":
        put(omega, half)
    elif shape == "special-hexad":
        put(sorted(octad)[:6], 1)
    elif shape == "octad-pair":
        put(octad, half)
        put(sorted(octad)[:2], 1)
    elif shape == "sixteen-point":
        rest = omega - octad
        put(rest, half)
        put([min(rest)], 1)
    elif shape == "octad-tetrad-special":
        o = _first(set(support(w)) for w in golay.octads if len(set(support(w)) & octad) == 4)
        put(octad, half)
        put(o - octad, 1)
    elif shape == "octad-tetrad-general":
        meeting = [set(support(w)) for w in golay.octads if len(set(support(w)) & octad) == 4]
        tetrad = _first(
            set(R) for R in itertools.combinations(sorted(omega - octad), 4)
            if not any(set(R) <= o for o in meeting)
        )
        put(octad, half)
        put(tetrad, 1)
    elif shape == "sixteen-pair":
        put(omega - octad, half)
        put(sorted(octad)[:2], 1)
    elif shape == "octad-point-pair":
        put(octad, half)
        put([min(octad)], 1)
        put(sorted(omega - octad)[:2], 1)
    elif shape == "dodecad-points":
        put(dodecad, half)
        put([min(dodecad)], 1)
        put([min(omega - dodecad)], 1)
    elif shape == "dodecad-triad":
        put(dodecad, half)
        put(sorted(omega - dodecad)[:3], 1)
    elif shape == "umbral-hexad":
        octads = [set(support(w)) for w in golay.octads]
        hexad = _first(
            set(R) for R in itertools.combinations(range(24), 6)
            if not any(set(R) <= o for o in octads)
        )
        put(hexad, 1)
    else:
        raise ConicsError(f"unknown Golay shape {shape!r}")
    return alpha


def _alpha_to_ambient(N: NiemeierLattice, alpha: Sequence[Fraction]) -> tuple[int, ...]:
    den = math.isqrt(N.scale)
    out = []
    for c, a in zip(N.components, alpha):
        out.extend(int(den * a * v) for v in c.simple_roots[0])
    return tuple(out)


def _components_to_ambient(N: NiemeierLattice, pieces: dict) -> tuple[int, ...]:
    den = math.isqrt(N.scale)
    out = [0] * N.dim
    for k, vec in pieces.items():
        c = N.components[int(k)]
        out[c.offset:c.offset + c.dim] = [int(Fraction(v) * den) for v in vec]
    return tuple(out)


@lru_cache(maxsize=None)
def hbar(name: str) -> HbarRepresentative:
    table = hbar_catalog()
    if name not in table:
        raise UnknownCatalogEntryError(name, table)
    entry = table[name]
    if "replant" in entry:
        source = hbar(entry["replant"])
        N, vector = replant(source.lattice, source.vector, name=name.split("#")[0])
        rep = HbarRepresentative(name, N, tuple(vector), dict(entry))
        rep.validate()
        return rep

    N = build_niemeier(entry["lattice"])
    if "golay" in entry:
        vector = _alpha_to_ambient(N, golay_alpha(entry["golay"]))
    elif "components" in entry:
        vector = _components_to_ambient(N, entry["components"])
    else:
        vector = tuple(int(v) for v in entry["coordinates"])
    if not N.contains(vector):
        raise InvariantViolation(f"{name}: hbar is not in {N.name}")
    rep = HbarRepresentative(name, N, vector, dict(entry))
    rep.validate()
    return rep


# ---------- prospective conics ----------
def candidates(N: NiemeierLattice, hbar_vector: Sequence[int], degree: int | None = None) -> np.ndarray:
    """
    The prospective conics: l in N with l^2 = 4 and l . hbar = 2(d - 1),
    as sorted ambient rows.
    """
    d = degree or get_setting("DEGREE")
    if not N.is_primitive(hbar_vector):
        raise ConicsError("hbar is not primitive")
    if N.components or N.is_leech:
        shell = N.shell(4)
        h = np.array([int(v) for v in hbar_vector], dtype=np.int64)
        return shell[shell.dot(h) == 2 * (d - 1) * N.scale]
    # no cheap shell: enumerate inside the hbar-slice only
    C = enumerate_vectors(N.lattice.gram, 4, [(N.coords_of(hbar_vector), 2 * (d - 1))])
    if not C:
        return np.zeros((0, N.dim), dtype=np.int64)
    rows = N.from_coords(C)
    return rows[np.lexsort(rows.T[::-1])]


# ---------- replanting ----------
def _reduce_scale(rows: np.ndarray, scale: int) -> tuple[np.ndarray, int]:
    g = math.gcd(*(int(v) for v in rows.flat))
    f = max(f for f in range(1, g + 1) if g % f == 0 and scale % (f * f) == 0)
    return rows // f, scale // (f * f)


def replant(
    N: NiemeierLattice, hbar_vector: Sequence[int], *, name: str | None = None
) -> tuple[NiemeierLattice, tuple[int, ...]]:
    """
    The second unimodular extension N' of F = span_Z(conics), defined by
    a + hbar/2 where a . hbar = 1. Requires [N : F] = 4.
    """
    conics = candidates(N, hbar_vector)
    F = linalg.hnf_rows(linalg.int_matrix(N.coords(conics).tolist())) if len(conics) else np.zeros((0, N.rank))
    if len(F) < N.rank:
        raise NotReplantableError(f"rank F = {len(F)} < {N.rank}")
    index = abs(linalg.determinant(F))
    if index != 4:
        raise NotReplantableError(f"[N:F] = {index}, not replantable")

    h = N.coords_of(hbar_vector)
    Gh = linalg.int_matrix(N.lattice.gram).dot(np.array(h, dtype=object))
    solution = linalg.solve_integer(linalg.int_matrix([list(Gh)]), [1])
    if solution is None:
        raise NotReplantableError("hbar is not primitive")
    a = N.from_coords([[int(v) for v in solution[0]]])[0]

    Fa = N.from_coords(F.tolist())
    hv = np.array([int(v) for v in hbar_vector], dtype=np.int64)
    rows = np.vstack([2 * Fa, (2 * a + hv)[None, :]])
    rows, scale = _reduce_scale(rows, 4 * N.scale)
    factor = math.isqrt(4 * N.scale // scale)
    new_hbar = tuple(int(v) for v in (2 * hv) // factor)

    H = linalg.hnf_rows(linalg.int_matrix(rows.tolist()))
    target = name or f"{N.name}'"
    M = NiemeierLattice(target, np.array(H.tolist(), dtype=np.int64), scale)
    if abs(M.lattice.det) != 1:
        raise InvariantViolation(f"replanted lattice has det {M.lattice.det}")
    logger.info("replanted %s to %s (scale %d)", N.name, target, scale)
    return M, new_hbar
