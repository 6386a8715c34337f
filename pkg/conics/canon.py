"""
Individualization-refinement for vertex- and edge-coloured graphs:
automorphism group generators and order, canonical labelling.

Partitions are ordered: cell ids 0..k-1 on the vertices. Refinement splits
cells by the number of neighbours in every cell through every edge colour;
new cells are ordered by (old cell, signature), so the process commutes
with isomorphisms.
"""
from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from conics.groups import PermGroup, inverse

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ColoredGraph:
    colors: np.ndarray       # vertex colours, ints
    adjacency: np.ndarray    # symmetric, 0 = no edge, otherwise the edge colour

    @classmethod
    def build(cls, colors: Sequence[int], adjacency) -> "ColoredGraph":
        A = np.asarray(adjacency, dtype=np.int64)
        if A.shape != (len(colors), len(colors)) or (A != A.T).any():
            raise ValueError("adjacency must be a symmetric square matrix")
        return cls(np.asarray(colors, dtype=np.int64), A)

    @property
    def n(self) -> int:
        return len(self.colors)

    @cached_property
    def layers(self) -> list[np.ndarray]:
        return [(self.adjacency == c).astype(np.float32) for c in np.unique(self.adjacency) if c != 0]

    def relabel(self, order: np.ndarray) -> bytes:
        """Certificate of the graph with vertex order[i] moved to position i."""
        c = self.colors[order]
        A = self.adjacency[np.ix_(order, order)]
        return c.astype(np.int64).tobytes() + A.astype(np.int8).tobytes()

    def is_automorphism(self, p: np.ndarray) -> bool:
        return bool((self.colors[p] == self.colors).all() and (self.adjacency[np.ix_(p, p)] == self.adjacency).all())


Invariant = tuple[int, bytes]


class Refiner:
    def __init__(self, graph: ColoredGraph):
        self.graph = graph

    def initial(self) -> np.ndarray:
        _, cells = np.unique(self.graph.colors, return_inverse=True)
        return cells.reshape(-1).astype(np.int64)

    def refine(self, cells: np.ndarray) -> tuple[np.ndarray, Invariant]:
        n = self.graph.n
        k = int(cells.max()) + 1 if n else 0
        while True:
            P = np.zeros((n, k), dtype=np.float32)
            P[np.arange(n), cells] = 1.0
            if self.graph.layers:
                S = np.hstack([L @ P for L in self.graph.layers]).astype(np.int64)
            else:
                S = np.zeros((n, 0), dtype=np.int64)
            key = np.column_stack([cells, S])
            uniq, inv = np.unique(key, axis=0, return_inverse=True)
            inv = inv.reshape(-1)
            if len(uniq) == k:
                sizes = np.bincount(cells, minlength=k).astype(np.int64)
                digest = hashlib.blake2b(sizes.tobytes() + uniq.tobytes(), digest_size=16).digest()
                return cells, (k, digest)
            cells, k = inv.astype(np.int64), len(uniq)

    def individualize(self, cells: np.ndarray, v: int) -> tuple[np.ndarray, Invariant]:
        t = cells[v]
        new = np.where(cells > t, cells + 1, cells)
        new = np.where((cells == t) & (np.arange(len(cells)) != v), t + 1, new)
        return self.refine(new)

    @staticmethod
    def target(cells: np.ndarray) -> list[int] | None:
        counts = np.bincount(cells)
        big = np.flatnonzero(counts > 1)
        if not len(big):
            return None
        return [int(v) for v in np.flatnonzero(cells == big[0])]


@dataclass
class AutomorphismGroup:
    group: PermGroup
    order: int
    orbit_sizes: list[int]


class SearchTree:
    """The individualization-refinement tree of one graph."""

    def __init__(self, graph: ColoredGraph):
        self.graph = graph
        self.refiner = Refiner(graph)
        self.root, self.root_invariant = self.refiner.refine(self.refiner.initial())

    # ----- first path and automorphisms -----
    def _first_path(self):
        cells, invs, chosen, targets, nodes = self.root, [self.root_invariant], [], [], [self.root]
        while (T := Refiner.target(cells)) is not None:
            v = T[0]
            targets.append(T)
            chosen.append(v)
            cells, inv = self.refiner.individualize(cells, v)
            nodes.append(cells)
            invs.append(inv)
        return nodes, invs, chosen, targets

    def _leaf(self, cells: np.ndarray) -> tuple[np.ndarray, bytes]:
        order = np.argsort(cells, kind="stable")
        return order, self.graph.relabel(order)

    def _match(self, cells: np.ndarray, depth: int, invs, cert0: bytes, order0: np.ndarray):
        """A leaf below `cells` whose invariants follow the first path and whose certificate is cert0."""
        T = Refiner.target(cells)
        if T is None:
            order, cert = self._leaf(cells)
            if cert != cert0:
                return None
            gamma = np.empty(self.graph.n, dtype=np.int64)
            gamma[order0] = order
            return gamma
        for u in T:
            c2, inv = self.refiner.individualize(cells, u)
            if inv != invs[depth + 1]:
                continue
            found = self._match(c2, depth + 1, invs, cert0, order0)
            if found is not None:
                return found
        return None

    @cached_property
    def automorphisms(self) -> AutomorphismGroup:
        nodes, invs, chosen, targets = self._first_path()
        order0, cert0 = self._leaf(nodes[-1])
        n = self.graph.n
        gens: list[np.ndarray] = []
        sizes: list[int] = []
        for i in reversed(range(len(chosen))):
            v, T = chosen[i], targets[i]
            orbit = set(PermGroup(n, gens).orbit(v))
            failed: set[int] = set()
            for w in T:
                if w in orbit or w in failed:
                    continue
                c2, inv = self.refiner.individualize(nodes[i], w)
                gamma = None
                if inv == invs[i + 1]:
                    gamma = self._match(c2, i + 1, invs, cert0, order0)
                if gamma is None:
                    failed.update(PermGroup(n, gens).orbit(w))
                    continue
                gens.append(gamma)
                orbit = set(PermGroup(n, gens).orbit(v))
            sizes.append(len(orbit))
        sizes.reverse()
        order = 1
        for s in sizes:
            order *= s
        logger.debug("automorphism search: %d vertices, %d generators, order %d", n, len(gens), order)
        return AutomorphismGroup(PermGroup(n, gens), order, sizes)

    # ----- canonical labelling -----
    @cached_property
    def canonical(self) -> tuple[tuple[Invariant, ...], bytes, np.ndarray]:
        group = self.automorphisms.group
        best: list = [None]
        stabilizers: dict[tuple[int, ...], PermGroup] = {}

        def stabilizer(prefix: tuple[int, ...]) -> PermGroup:
            if prefix not in stabilizers:
                parent = stabilizer(prefix[:-1]) if prefix else group
                stabilizers[prefix] = parent.pointwise_stabilizer(prefix[-1:]) if prefix else group
            return stabilizers[prefix]

        def dfs(cells: np.ndarray, invs: tuple, prefix: tuple[int, ...]) -> None:
            if best[0] is not None and invs > best[0][0][: len(invs)]:
                return
            T = Refiner.target(cells)
            if T is None:
                order, cert = self._leaf(cells)
                key = (invs, cert)
                if best[0] is None or key < best[0][:2]:
                    best[0] = (invs, cert, order)
                return
            for w in stabilizer(prefix).orbit_representatives(T):
                c2, inv = self.refiner.individualize(cells, w)
                dfs(c2, invs + (inv,), prefix + (w,))

        dfs(self.root, (self.root_invariant,), ())
        return best[0]


@dataclass(frozen=True)
class CanonicalForm:
    certificate: str
    labeling: tuple[int, ...]      # labeling[i] = vertex placed at position i


def canonical_form(graph: ColoredGraph) -> CanonicalForm:
    invs, cert, order = SearchTree(graph).canonical
    h = hashlib.sha256()
    for k, digest in invs:
        h.update(k.to_bytes(4, "big") + digest)
    h.update(cert)
    return CanonicalForm(h.hexdigest(), tuple(int(v) for v in order))


def automorphism_group(graph: ColoredGraph) -> AutomorphismGroup:
    return SearchTree(graph).automorphisms


def isomorphism(g1: ColoredGraph, g2: ColoredGraph) -> np.ndarray | None:
    """A vertex map p with g2 = p(g1), or None."""
    if g1.n != g2.n:
        return None
    c1, c2 = canonical_form(g1), canonical_form(g2)
    if c1.certificate != c2.certificate:
        return None
    p = np.empty(g1.n, dtype=np.int64)
    p[np.array(c1.labeling)] = np.array(c2.labeling)
    return p


__all__ = [
    "AutomorphismGroup",
    "CanonicalForm",
    "ColoredGraph",
    "Refiner",
    "SearchTree",
    "automorphism_group",
    "canonical_form",
    "inverse",
    "isomorphism",
]
