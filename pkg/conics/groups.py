"""Permutation groups given by generators, acting on 0..n-1."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from networkx.utils import UnionFind
from sympy.combinatorics import Permutation, PermutationGroup

from conics.conf import get_setting

logger = logging.getLogger(__name__)


def compose(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """x -> p(q(x))."""
    return p[q]


def inverse(p: np.ndarray) -> np.ndarray:
    out = np.empty_like(p)
    out[p] = np.arange(len(p))
    return out


@dataclass(eq=False)
class PermGroup:
    degree: int
    generators: list[np.ndarray] = field(default_factory=list)

    def __post_init__(self):
        gens = []
        ident = np.arange(self.degree)
        for g in self.generators:
            g = np.asarray(g, dtype=np.int64)
            if len(g) != self.degree:
                raise ValueError("generator of the wrong degree")
            if not (g == ident).all():
                gens.append(g)
        self.generators = gens

    @classmethod
    def trivial(cls, degree: int) -> "PermGroup":
        return cls(degree, [])

    @cached_property
    def sympy(self) -> PermutationGroup:
        if not self.generators:
            return PermutationGroup([Permutation(self.degree - 1)]) if self.degree else PermutationGroup([Permutation(0)])
        return PermutationGroup([Permutation([int(x) for x in g]) for g in self.generators])

    def order(self) -> int:
        if not self.generators:
            return 1
        return int(self.sympy.order())

    def orbit(self, x: int) -> list[int]:
        seen = {x}
        stack = [x]
        while stack:
            y = stack.pop()
            for g in self.generators:
                z = int(g[y])
                if z not in seen:
                    seen.add(z)
                    stack.append(z)
        return sorted(seen)

    @cached_property
    def orbits(self) -> list[list[int]]:
        uf = UnionFind(range(self.degree))
        for g in self.generators:
            for x in range(self.degree):
                uf.union(x, int(g[x]))
        return sorted(sorted(s) for s in uf.to_sets())

    def orbit_representatives(self, points: Iterable[int]) -> list[int]:
        """Smallest point of each orbit meeting `points`."""
        points = set(points)
        if not self.generators:
            return sorted(points)
        reps = []
        for orb in self.orbits:
            hit = [x for x in orb if x in points]
            if hit:
                reps.append(hit[0])
        return sorted(reps)

    def pointwise_stabilizer(self, points: Sequence[int]) -> "PermGroup":
        if not self.generators or not points:
            return self
        fixing = [g for g in self.generators if all(g[p] == p for p in points)]
        if len(fixing) == len(self.generators):
            return PermGroup(self.degree, fixing)
        stab = self.sympy.pointwise_stabilizer([int(p) for p in points])
        return PermGroup(self.degree, [np.array(p.array_form + list(range(p.size, self.degree))) for p in stab.generators])

    def elements(self, limit: int | None = None) -> list[np.ndarray] | None:
        """All elements, or None when the order exceeds the limit."""
        limit = limit if limit is not None else get_setting("GROUP_ENUMERATION_LIMIT")
        if self.order() > limit:
            logger.warning("group of order %d is too large to enumerate", self.order())
            return None
        ident = np.arange(self.degree)
        seen = {ident.tobytes(): ident}
        frontier = [ident]
        while frontier:
            new = []
            for h in frontier:
                for g in self.generators:
                    k = compose(g, h)
                    key = k.tobytes()
                    if key not in seen:
                        seen[key] = k
                        new.append(k)
            frontier = new
        return list(seen.values())

    def set_orbit_representatives(self, subsets: Iterable[frozenset[int]]) -> list[frozenset[int]]:
        """One subset per orbit (the lexicographically least image), keeping input order."""
        elems = self.elements()
        out, seen = [], set()
        for s in subsets:
            if elems is None:
                key = tuple(sorted(s))
            else:
                key = min(tuple(sorted(int(g[x]) for x in s)) for g in elems)
            if key not in seen:
                seen.add(key)
                out.append(frozenset(s))
        return out

    def induced(self, blocks: Sequence[Sequence[int]]) -> "PermGroup":
        """Action on a set of blocks permuted by the group."""
        index = {}
        for i, b in enumerate(blocks):
            for x in b:
                index[x] = i
        gens = []
        for g in self.generators:
            gens.append(np.array([index[int(g[b[0]])] for b in blocks], dtype=np.int64))
        return PermGroup(len(blocks), gens)

    def setwise_stabilizer(self, subset: Iterable[int]) -> "PermGroup":
        """By enumeration; the trivial group when the group is too large to list."""
        s = frozenset(subset)
        elems = self.elements()
        if elems is None:
            return PermGroup.trivial(self.degree)
        return PermGroup(self.degree, [g for g in elems if frozenset(int(g[x]) for x in s) == s])
