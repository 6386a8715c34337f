"""Fano graphs of conic sets: vertices are conics, l and l' joined with multiplicity 2 - l.l'."""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from conics.canon import CanonicalForm, ColoredGraph, automorphism_group, canonical_form, isomorphism
from conics.configuration import ConicSet
from conics.errors import ConicsError, InvariantViolation

logger = logging.getLogger(__name__)

MULTIPLICITIES = (0, 1, 2)


@dataclass(frozen=True, eq=False)
class FanoGraph:
    n: int
    mult: np.ndarray

    def __post_init__(self):
        M = np.asarray(self.mult, dtype=np.int64).reshape(self.n, self.n)
        if (M != M.T).any():
            raise InvariantViolation("multiplicity matrix is not symmetric")
        if np.diag(M).any():
            raise InvariantViolation("loops in a Fano graph")
        if not np.isin(M, MULTIPLICITIES).all():
            raise InvariantViolation(f"edge multiplicities outside {MULTIPLICITIES}")
        object.__setattr__(self, "mult", M)

    @classmethod
    def from_products(cls, products) -> "FanoGraph":
        P = np.asarray(products, dtype=np.int64)
        n = len(P)
        M = 2 - P
        M[np.arange(n), np.arange(n)] = 0
        return cls(n, M)

    @cached_property
    def colored(self) -> ColoredGraph:
        return ColoredGraph.build([0] * self.n, self.mult)

    @property
    def edges(self) -> list[tuple[int, int, int]]:
        ii, jj = np.nonzero(np.triu(self.mult, k=1))
        return [(int(i), int(j), int(self.mult[i, j])) for i, j in zip(ii, jj)]

    def degree_census(self) -> dict[int, list[int]]:
        """For each multiplicity, the sorted list of vertex degrees through it."""
        return {m: sorted(int(x) for x in (self.mult == m).sum(axis=1)) for m in (1, 2)}

    # ----- export -----
    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict) -> "FanoGraph":
        try:
            n = int(data["n"])
            M = np.zeros((n, n), dtype=np.int64)
            for i, j, m in data["edges"]:
                M[i, j] = M[j, i] = m
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise ConicsError(f"malformed graph file: {exc}") from exc
        return cls(n, M)

    def to_text(self) -> str:
        """One line per vertex, the multiplicities as digits."""
        return "\n".join("".join(str(int(x)) for x in row) for row in self.mult) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "FanoGraph":
        rows = [line.strip() for line in text.splitlines() if line.strip()]
        if any(len(r) != len(rows) or not r.isdigit() for r in rows):
            raise ConicsError("malformed adjacency text")
        return cls(len(rows), np.array([[int(c) for c in r] for r in rows], dtype=np.int64).reshape(len(rows), len(rows)))


def build_graph(L: ConicSet) -> FanoGraph:
    P = L.config.products[np.ix_(L.members, L.members)]
    off = P[~np.eye(len(L.members), dtype=bool)]
    if len(off) and not np.isin(off, (0, 1, 2)).all():
        raise InvariantViolation("conic products outside {0, 1, 2}")
    return FanoGraph.from_products(P)


def graph_certificate(G: FanoGraph) -> CanonicalForm:
    return canonical_form(G.colored)


def aut_order(G: FanoGraph) -> int:
    order = automorphism_group(G.colored).order
    logger.info("Fano graph on %d vertices: |Aut| = %d", G.n, order)
    return order


def are_isomorphic(G1: FanoGraph, G2: FanoGraph) -> bool:
    return isomorphism(G1.colored, G2.colored) is not None
