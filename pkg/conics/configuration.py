"""
A configuration is a positive definite lattice with a polarization hbar and
its prospective conics; a ConicSet is a subset of those conics.
"""
from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from conics import linalg
from conics.conf import get_setting
from conics.discriminant import Element, FiniteQuadraticForm
from conics.embedding import EmbeddingVerdict, embeds_in_K3_lattice, hyp_elements
from conics.enumeration import enumerate_vectors
from conics.errors import (
    ConicsError,
    EmptyConicSetError,
    InvariantViolation,
    NotContainedError,
    SaturateFirstError,
)
from conics.lattice import IntegerLattice, Sublattice
from conics.niemeier import HbarRepresentative, NiemeierLattice, candidates, hbar as hbar_representative

logger = logging.getLogger(__name__)


def exact_matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Integer product, in int64 when no overflow is possible."""
    if A.size == 0 or B.size == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    a = max(abs(int(x)) for x in (np.max(A), np.min(A)))
    b = max(abs(int(x)) for x in (np.max(B), np.min(B)))
    if a * b * A.shape[1] < 2 ** 62:
        return np.asarray(A, dtype=np.int64) @ np.asarray(B, dtype=np.int64)
    return np.asarray(A, dtype=object).dot(np.asarray(B, dtype=object))


def _sorted_rows(rows: np.ndarray) -> np.ndarray:
    if not len(rows):
        return rows
    return rows[np.lexsort(rows.T[::-1])]


@dataclass(eq=False)
class Configuration:
    name: str
    ambient: IntegerLattice
    hbar: tuple[int, ...]
    conics: np.ndarray
    roots: np.ndarray
    degree: int = 3
    niemeier: NiemeierLattice | None = field(default=None, repr=False)
    hbar_ambient: tuple[int, ...] | None = field(default=None, repr=False)
    expected: dict = field(default_factory=dict, repr=False)

    # ----- construction -----
    @classmethod
    def from_niemeier(cls, N: NiemeierLattice, hbar_vector: Sequence[int], name: str = "", expected=None) -> "Configuration":
        degree = get_setting("DEGREE")
        rows = candidates(N, hbar_vector, degree)
        C = _sorted_rows(N.coords(rows)) if len(rows) else np.zeros((0, N.rank), dtype=np.int64)
        R = N.roots()
        Rc = N.coords(R) if len(R) else np.zeros((0, N.rank), dtype=np.int64)
        config = cls(
            name or N.name,
            N.lattice,
            N.coords_of(hbar_vector),
            C,
            Rc,
            degree=degree,
            niemeier=N,
            hbar_ambient=tuple(int(v) for v in hbar_vector),
            expected=dict(expected or {}),
        )
        logger.info("%s: |F| = %d, rank F = %d", config.name, config.size, config.rank)
        return config

    @classmethod
    def from_gram(cls, gram, hbar: Sequence[int], name: str = "", degree: int = 3) -> "Configuration":
        L = IntegerLattice(gram, name=name)
        if not L.is_positive_definite:
            raise ConicsError("the ambient lattice of a configuration must be positive definite")
        h = tuple(int(x) for x in hbar)
        if L.norm(h) != 2 * degree * (degree - 1):
            raise ConicsError(f"hbar^2 = {L.norm(h)}, expected {2 * degree * (degree - 1)}")
        C = np.array(enumerate_vectors(L.gram, 4, [(h, 2 * (degree - 1))]), dtype=np.int64).reshape(-1, L.rank)
        R = np.array(enumerate_vectors(L.gram, 2), dtype=np.int64).reshape(-1, L.rank)
        return cls(name, L, h, _sorted_rows(C), R, degree=degree)

    # ----- basic data -----
    @property
    def n(self) -> int:
        return self.ambient.rank

    @property
    def size(self) -> int:
        return len(self.conics)

    @cached_property
    def rank(self) -> int:
        return linalg.matrix_rank(self.conics.tolist()) if self.size else 0

    @cached_property
    def gram(self) -> np.ndarray:
        return np.array(self.ambient.gram, dtype=np.int64)

    @cached_property
    def hbar_vector(self) -> np.ndarray:
        return np.array(self.hbar, dtype=np.int64)

    @cached_property
    def products(self) -> np.ndarray:
        """The matrix of l_i . l_j over all conics."""
        return self.conics @ self.gram @ self.conics.T

    @cached_property
    def perp_roots(self) -> np.ndarray:
        """Roots orthogonal to hbar, one of each pair +-r."""
        R = self.roots
        if not len(R):
            return R
        R = R[(R @ self.gram @ self.hbar_vector) == 0]
        keep = [i for i, r in enumerate(R) if tuple(r) > tuple(-r)]
        return R[keep]

    @cached_property
    def index(self) -> dict[tuple[int, ...], int]:
        return {tuple(int(v) for v in row): i for i, row in enumerate(self.conics)}

    def index_of(self, vector: Sequence[int]) -> int:
        try:
            return self.index[tuple(int(v) for v in vector)]
        except KeyError:
            raise NotContainedError("vector is not a prospective conic") from None

    # ----- spans -----
    def _complement(self, members: Sequence[int]) -> np.ndarray:
        rows = np.vstack([self.conics[list(members)], self.hbar_vector[None, :]])
        K = linalg.integer_kernel(linalg.int_matrix(exact_matmul(rows, self.gram).tolist()))
        return np.array(K.tolist(), dtype=object).reshape(-1, self.n)

    def _annihilated(self, vectors: np.ndarray, W: np.ndarray) -> np.ndarray:
        """Boolean mask of the rows of `vectors` lying in the span cut out by W."""
        if not len(vectors):
            return np.zeros(0, dtype=bool)
        if not len(W):
            return np.ones(len(vectors), dtype=bool)
        GW = np.asarray(self.gram, dtype=object).dot(W.T)
        P = exact_matmul(vectors, GW)
        return ~np.asarray(P != 0).any(axis=1)

    def saturate(self, members: Iterable[int], *, frozen=()) -> "ConicSet":
        members = sorted(set(int(i) for i in members))
        W = self._complement(members)
        sat = np.flatnonzero(self._annihilated(self.conics, W))
        return ConicSet(self, tuple(int(i) for i in sat), tuple(frozen), complement=W)

    def conic_set(self, members: Iterable[int], *, frozen=()) -> "ConicSet":
        return ConicSet(self, tuple(sorted(set(int(i) for i in members))), tuple(frozen))

    def from_vectors(self, vectors: Iterable[Sequence[int]]) -> "ConicSet":
        return self.conic_set(self.index_of(v) for v in vectors)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "degree": self.degree,
            "hbar": list(self.hbar),
            "size": self.size,
            "rank": self.rank,
            "lattice": self.ambient.to_dict(),
        }


@lru_cache(maxsize=None)
def load_configuration(name: str) -> Configuration:
    rep: HbarRepresentative = hbar_representative(name)
    return Configuration.from_niemeier(rep.lattice, rep.vector, name=name, expected=rep.metadata)


@dataclass
class GeometricVerdict:
    geometric: bool
    rank: int
    hyp: list[Element]
    type_i: EmbeddingVerdict
    type_ii: list[tuple[Element, EmbeddingVerdict]]

    @property
    def ambiguous(self) -> bool:
        return self.type_i.ambiguous or any(v.ambiguous for _, v in self.type_ii)

    @property
    def passing_kappas(self) -> list[Element]:
        return [k for k, v in self.type_ii if v.embeds is not False]

    def to_dict(self) -> dict:
        return {
            "geometric": self.geometric,
            "rank": self.rank,
            "hyp": [list(k) for k in self.hyp],
            "type_i": {"embeds": self.type_i.embeds, "reasons": self.type_i.reasons},
            "type_ii": [{"kappa": list(k), "embeds": v.embeds, "reasons": v.reasons} for k, v in self.type_ii],
            "ambiguous": self.ambiguous,
        }


@dataclass(frozen=True, eq=False)
class ConicSet:
    config: Configuration
    members: tuple[int, ...]
    frozen: tuple[tuple[int, int], ...] = ()
    complement: np.ndarray | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if list(self.members) != sorted(set(self.members)):
            raise InvariantViolation("members must be sorted and distinct")

    def __eq__(self, other) -> bool:
        return isinstance(other, ConicSet) and other.config is self.config and other.members == self.members

    def __hash__(self) -> int:
        return hash((id(self.config), self.members))

    def __len__(self) -> int:
        return len(self.members)

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def vectors(self) -> np.ndarray:
        return self.config.conics[list(self.members)]

    @cached_property
    def _W(self) -> np.ndarray:
        if self.complement is not None:
            return self.complement
        return self.config._complement(self.members)

    @cached_property
    def span(self) -> Sublattice:
        """(Q-span of the members and hbar) intersected with the ambient lattice."""
        cfg = self.config
        W = self._W
        if len(W):
            B = linalg.integer_kernel(linalg.int_matrix(exact_matmul(np.array(W.tolist(), dtype=object), cfg.gram).tolist()))
        else:
            B = linalg.identity(cfg.n)
        return Sublattice(cfg.ambient, linalg.to_rows(B), primitive=True)

    @property
    def rank(self) -> int:
        return self.span.rank

    @cached_property
    def is_saturated(self) -> bool:
        return self.config.saturate(self.members).members == self.members

    @cached_property
    def pair_products_ok(self) -> bool:
        P = self.config.products[np.ix_(self.members, self.members)]
        off = P[~np.eye(len(self.members), dtype=bool)]
        return bool(((off >= 0) & (off <= 2)).all())

    @cached_property
    def is_root_free(self) -> bool:
        R = self.config.roots
        return not self.config._annihilated(R, self._W).any() if len(R) else True

    @cached_property
    def hbar_divisible(self) -> bool:
        """hbar in 4 (span)^dual."""
        B = np.array(self.span.basis, dtype=object).reshape(-1, self.config.n)
        values = B.dot(np.asarray(self.config.gram, dtype=object)).dot(np.array(self.config.hbar, dtype=object))
        return all(int(v) % 4 == 0 for v in values)

    @cached_property
    def span_form(self) -> FiniteQuadraticForm:
        return FiniteQuadraticForm.from_gram(self.span.lattice.gram)

    @cached_property
    def hbar_in_span(self) -> tuple[int, ...]:
        return self.span.coords_of(self.config.hbar)

    @cached_property
    def hyp(self) -> list[Element]:
        return hyp_elements(self.span_form, self.span.lattice.gram, self.hbar_in_span)

    def digest(self) -> str:
        payload = json.dumps([list(map(int, v)) for v in self.vectors], separators=(",", ":"))
        return hashlib.sha256(payload.encode()).hexdigest()

    def with_frozen(self, frozen) -> "ConicSet":
        return ConicSet(self.config, self.members, tuple(frozen), complement=self.complement)

    def to_dict(self) -> dict:
        return {
            "config": self.config.name,
            "size": self.size,
            "rank": self.rank,
            "members": [list(map(int, v)) for v in self.vectors],
            "frozen": [list(p) for p in self.frozen],
            "digest": self.digest(),
        }


# ---------- predicates ----------
def is_admissible(L: ConicSet) -> bool:
    if not L.is_saturated:
        raise SaturateFirstError()
    return L.is_root_free and L.hbar_divisible


def is_geometric(L: ConicSet) -> GeometricVerdict:
    """
    Type I: hyp_0 of the span embeds into the K3 lattice; type II: some
    hyp_kappa does, kappa running over Hyp. Ambiguous verdicts count as passing.
    """
    rank = L.rank
    if rank > 20:
        fail = EmbeddingVerdict(False, [f"rank {rank} > 20"])
        return GeometricVerdict(False, rank, [], fail, [])
    form = L.span_form
    hyp = L.hyp
    type_i = embeds_in_K3_lattice(form, rank)
    type_ii = [(k, embeds_in_K3_lattice(form, rank, k, hyp=hyp)) for k in hyp]
    ok = type_i.embeds is not False or any(v.embeds is not False for _, v in type_ii)
    verdict = GeometricVerdict(ok, rank, hyp, type_i, type_ii)
    if verdict.ambiguous:
        logger.warning("%s: geometricity verdict involves an undetermined det_2", L.config.name)
    return verdict


def require_nonempty(L: ConicSet) -> None:
    if not L.members:
        raise EmptyConicSetError()
