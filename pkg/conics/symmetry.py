"""
Symmetries of a configuration: the reflection group R_hbar, the code graph
whose automorphisms give stab hbar for lattices glued from A_n components,
the product graph of the conics for other lattices, and the orbit
decomposition of the prospective conics.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from networkx.utils import UnionFind

from conics import linalg
from conics.canon import ColoredGraph, automorphism_group
from conics.configuration import Configuration
from conics.errors import ConicsError, InvariantViolation
from conics.groups import PermGroup
from conics.niemeier import NiemeierLattice

logger = logging.getLogger(__name__)

MAX_GRAPH_WORDS = 1000


# ---------- reflections ----------
def reflection_permutations(config: Configuration) -> list[np.ndarray]:
    """s_r(l) = l - (l . r) r for every root r orthogonal to hbar, as permutations of the conics."""
    C = config.conics
    G = config.gram
    perms = []
    for r in config.perp_roots:
        prods = C @ G @ r
        if not prods.any():
            continue
        images = C - prods[:, None] * r[None, :]
        perm = np.array([config.index_of(v) for v in images], dtype=np.int64)
        perms.append(perm)
    return perms


def combinatorial_orbits(config: Configuration) -> list[list[int]]:
    """R_hbar-orbits on the conics, each sorted, ordered by least member."""
    uf = UnionFind(range(config.size))
    for perm in reflection_permutations(config):
        for i, j in enumerate(perm):
            uf.union(i, int(j))
    return sorted(sorted(s) for s in uf.to_sets())


# ---------- the code graph ----------
@dataclass
class CodeGraph:
    graph: ColoredGraph
    positions: list[tuple[int, int]]   # (component, sign) for the first vertices
    words: list[tuple[int, ...]]


def _uniform_a_type(N: NiemeierLattice) -> int:
    kinds = {(c.kind, c.n) for c in N.components}
    if len(kinds) != 1 or next(iter(kinds))[0] != "A":
        raise ConicsError(f"stabilizers are computed for lattices glued from A_n only, not {N.name}")
    return next(iter(kinds))[1]


def code_graph(N: NiemeierLattice, hbar_vector) -> CodeGraph:
    """
    Vertices: one per component and sign (one per component for A_1), and
    the glue words; a word meets (k, s) with colour s w_k mod (n+1).
    Position vertices are coloured by the Weyl orbit of s hbar_k.
    """
    n = _uniform_a_type(N)
    m = n + 1
    signs = (1,) if n == 1 else (1, -1)
    pieces = N.split(hbar_vector)
    positions = [(k, s) for k in range(len(N.components)) for s in signs]
    keys = [tuple(sorted(s * v for v in pieces[k])) for k, s in positions]
    palette = {key: i + 1 for i, key in enumerate(sorted(set(keys)))}

    nonzero = [w for w in N.code if any(w)]
    if len(nonzero) > MAX_GRAPH_WORDS:
        weight = min(sum(1 for a in w if a) for w in nonzero)
        nonzero = [w for w in nonzero if sum(1 for a in w if a) == weight]
    words = nonzero

    size = len(positions) + len(words)
    A = np.zeros((size, size), dtype=np.int64)
    where = {p: i for i, p in enumerate(positions)}
    fibre = m
    if n > 1:
        for k in range(len(N.components)):
            a, b = where[(k, 1)], where[(k, -1)]
            A[a, b] = A[b, a] = fibre
    for j, w in enumerate(words):
        v = len(positions) + j
        for k, a in enumerate(w):
            if not a:
                continue
            for s in signs:
                c = (s * a) % m
                A[v, where[(k, s)]] = A[where[(k, s)], v] = c
    colors = [palette[key] for key in keys] + [0] * len(words)
    return CodeGraph(ColoredGraph.build(colors, A), positions, words)


def stabilizer_order(N: NiemeierLattice, hbar_vector) -> int:
    """|stab hbar| = |O_hbar / R_hbar|, the automorphism group order of the code graph."""
    return automorphism_group(code_graph(N, hbar_vector).graph).order


def _lift(N: NiemeierLattice, hbar_vector, cg: CodeGraph, gamma: np.ndarray):
    """The isometry of the ambient space induced by a code graph automorphism, fixing hbar."""
    pieces = N.split(hbar_vector)
    target: dict[int, tuple[int, int]] = {}
    for i, (k, s) in enumerate(cg.positions):
        if s == 1:
            tk, ts = cg.positions[int(gamma[i])]
            target[k] = (tk, ts)
    moves = []
    for k, (tk, eps) in target.items():
        src = np.array(pieces[k]) * eps
        dst = np.array(pieces[tk])
        # a coordinate permutation carrying eps * hbar_k onto hbar_tk
        perm = np.empty(len(src), dtype=np.int64)
        perm[np.argsort(dst, kind="stable")] = np.argsort(src, kind="stable")
        if not (src[perm] == dst).all():
            raise InvariantViolation("code graph automorphism does not preserve the hbar orbit")
        moves.append((N.components[k], N.components[tk], eps, perm))

    def act(X: np.ndarray) -> np.ndarray:
        Y = np.zeros_like(X)
        for c, t, eps, perm in moves:
            Y[:, t.offset:t.offset + t.dim] = eps * X[:, c.offset:c.offset + c.dim][:, perm]
        return Y

    return act


def stabilizer_generators(config: Configuration) -> list[np.ndarray]:
    """Generators of O_hbar acting on the conics (lifted code graph automorphisms)."""
    N = config.niemeier
    if N is None or not N.components:
        return []
    cg = code_graph(N, config.hbar_ambient)
    aut = automorphism_group(cg.graph)
    ambient = N.from_coords(config.conics)
    perms = []
    for gamma in aut.group.generators:
        act = _lift(N, config.hbar_ambient, cg, gamma)
        if not (act(np.array([config.hbar_ambient])) == np.array(config.hbar_ambient)).all():
            raise InvariantViolation("lifted automorphism moves hbar")
        images = N.coords(act(ambient))
        perms.append(np.array([config.index_of(v) for v in images], dtype=np.int64))
    return perms


# ---------- product graph ----------
def product_graph(config: Configuration) -> ColoredGraph:
    """The conics, edges coloured by their products (shifted to be nonzero)."""
    A = config.products - int(config.products.min()) + 1
    np.fill_diagonal(A, 0)
    return ColoredGraph.build([0] * config.size, A)


def _basis_rows(C: np.ndarray) -> list[int]:
    idx: list[int] = []
    for i in range(len(C)):
        if linalg.matrix_rank(C[idx + [i]].tolist()) > len(idx):
            idx.append(i)
            if len(idx) == C.shape[1]:
                break
    return idx


def is_isometry(config: Configuration, perm: np.ndarray, basis: list[int] | None = None) -> bool:
    """Whether the permutation of the conics is induced by an isometry of the lattice fixing hbar."""
    C = config.conics
    basis = basis if basis is not None else _basis_rows(C)
    if len(basis) < config.n:
        return False
    # B A = C[perm][basis], solved as A^T B^T = (C[perm][basis])^T
    At = linalg.rational_solve_left(C[basis].T, C[perm][basis].T)
    if At is None:
        return False
    if any(getattr(x, "denominator", 1) != 1 for x in At.flat):
        return False
    A = np.array([[int(x) for x in row] for row in At.T], dtype=np.int64)
    G = config.gram
    return (
        (C @ A == C[perm]).all()
        and (A @ G @ A.T == G).all()
        and (np.array(config.hbar) @ A == np.array(config.hbar)).all()
    )


def product_stabilizer(config: Configuration) -> tuple[int, list[np.ndarray]] | None:
    """
    |O_hbar / R_hbar| and generators of O_hbar on the conics, from the
    automorphisms of the product graph. Only for conics of full rank, where
    the action is faithful; None otherwise.
    """
    if not config.size or config.rank < config.n:
        logger.warning("%s: conics of rank %d < %d, no stabilizer", config.name, config.rank, config.n)
        return None
    basis = _basis_rows(config.conics)
    aut = automorphism_group(product_graph(config))
    group = aut.group
    if not all(is_isometry(config, g, basis) for g in group.generators):
        elements = group.elements()
        if elements is None:
            logger.warning("%s: %d product graph automorphisms, too many to sort out", config.name, aut.order)
            return None
        group = PermGroup(config.size, [g for g in elements if is_isometry(config, g, basis)])
    weyl = PermGroup(config.size, reflection_permutations(config))
    return group.order() // weyl.order(), list(group.generators)


# ---------- orbit decomposition ----------
@dataclass
class OrbitDecomposition:
    config: Configuration
    combinatorial: list[list[int]]
    orbits: list[list[int]]                  # each a list of combinatorial orbit ids
    stabilizer_order: int | None
    group: PermGroup                         # O_hbar acting on the conics
    bounds: dict[int, tuple[frozenset[int], int]] = field(default_factory=dict)
    intersections: dict[int, list[frozenset[int]]] = field(default_factory=dict)

    @cached_property
    def orbit_of(self) -> np.ndarray:
        """Combinatorial orbit id of every conic."""
        out = np.empty(self.config.size, dtype=np.int64)
        for i, orb in enumerate(self.combinatorial):
            out[orb] = i
        return out

    @cached_property
    def orbit_group(self) -> PermGroup:
        """stab hbar acting on the combinatorial orbits."""
        return self.group.induced(self.combinatorial)

    @property
    def singles(self) -> list[int]:
        return [i for i, orb in enumerate(self.combinatorial) if len(orb) == 1]

    def counts(self, members) -> np.ndarray:
        return np.bincount(self.orbit_of[list(members)], minlength=len(self.combinatorial))

    def bnd(self, i: int) -> int:
        return self.bounds[i][1] if i in self.bounds else len(self.combinatorial[i])

    def bnd_values(self, i: int) -> frozenset[int]:
        return self.bounds[i][0] if i in self.bounds else frozenset(range(len(self.combinatorial[i]) + 1))

    def bnd_total(self, cluster) -> int:
        return sum(self.bnd(i) for i in cluster)

    def to_dict(self) -> dict:
        return {
            "config": self.config.name,
            "conics": self.config.size,
            "combinatorial_orbits": [len(o) for o in self.combinatorial],
            "orbits": [[int(i) for i in o] for o in self.orbits],
            "stabilizer_order": self.stabilizer_order,
            "bounds": {str(i): self.bnd(i) for i in sorted(self.bounds)},
        }


def decompose_orbits(config: Configuration, *, reflection_only: bool = False) -> OrbitDecomposition:
    reflections = reflection_permutations(config)
    comb = combinatorial_orbits(config)
    order = None
    lifted: list[np.ndarray] = []
    if not reflection_only:
        found = None
        if config.niemeier is not None and config.niemeier.components:
            try:
                found = stabilizer_order(config.niemeier, config.hbar_ambient), stabilizer_generators(config)
            except ConicsError as exc:
                logger.info("%s: %s, using the product graph", config.name, exc)
        if found is None:
            found = product_stabilizer(config)
        if found is not None:
            order, lifted = found
    group = PermGroup(config.size, reflections + lifted)
    index = {x: i for i, orb in enumerate(comb) for x in orb}
    uf = UnionFind(range(len(comb)))
    for g in lifted:
        for i, orb in enumerate(comb):
            uf.union(i, index[int(g[orb[0]])])
    orbits = sorted(sorted(s) for s in uf.to_sets())
    logger.info(
        "%s: %d combinatorial orbits in %d orbits, |stab hbar| = %s",
        config.name, len(comb), len(orbits), order,
    )
    return OrbitDecomposition(config, comb, orbits, order, group)
