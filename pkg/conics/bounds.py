"""
Bounds on |L cap o| for combinatorial orbits o: the exhaustive geometric
intersections for small orbits, a clique bound above the cutoff, and the
set-family estimates used as rough a priori bounds.
"""
from __future__ import annotations

import itertools
import logging
from math import comb

import networkx as nx
import numpy as np

from conics.conf import get_setting
from conics.configuration import is_admissible, is_geometric
from conics.symmetry import OrbitDecomposition

logger = logging.getLogger(__name__)

# exact maxima of families of m-subsets of an n-set with |r ^ s| in {0, 4, 6, 8}
A_TABLE = {(6, 3): 4, (7, 3): 7, (8, 3): 8, (9, 3): 12, (8, 4): 14}


def combinatorial_bound(m: int, n: int) -> int:
    if m < 0 or m > n:
        return 0
    if m <= 1:
        return 1
    if m == 2:
        return n // 2
    if (n, m) in A_TABLE:
        return A_TABLE[(n, m)]
    bound = comb(n, m - 1) // m
    if m == 3:
        bound = min(bound, (n * ((n - 1) // 2)) // 3)
    return bound


def combinatorial_bound_D(n: int) -> int:
    """Families of subsets of any size: max over m of A_m + A_{m+2} + ... + A_{m+8}."""
    return max(sum(combinatorial_bound(m + 2 * j, n) for j in range(5)) for m in range(n + 1))


def max_family(n: int, m: int) -> int:
    """Exact A_{m,n} by a maximum clique search; small (n, m) only."""
    subsets = [frozenset(s) for s in itertools.combinations(range(n), m)]
    G = nx.Graph()
    G.add_nodes_from(range(len(subsets)))
    for i, j in itertools.combinations(range(len(subsets)), 2):
        if len(subsets[i] ^ subsets[j]) in (4, 6, 8):
            G.add_edge(i, j)
    return max((len(c) for c in nx.find_cliques(G)), default=0)


# ---------- orbit bounds ----------
def compatibility_graph(decomp: OrbitDecomposition, members) -> nx.Graph:
    """Conics joined when l . l' is in {0, 1, 2}; admissible sets are cliques."""
    members = list(members)
    P = decomp.config.products[np.ix_(members, members)]
    G = nx.Graph()
    G.add_nodes_from(members)
    ii, jj = np.nonzero(np.triu((P >= 0) & (P <= 2), k=1))
    G.add_edges_from((members[i], members[j]) for i, j in zip(ii, jj))
    return G


def geometric_intersections(decomp: OrbitDecomposition, i: int) -> list[frozenset[int]]:
    """
    All L cap o for geometric saturated L generated by subsets of the orbit,
    closing one conic at a time.
    """
    config = decomp.config
    orbit = decomp.combinatorial[i]
    orbit_set = set(orbit)

    def close(members) -> frozenset[int] | None:
        L = config.saturate(members)
        if not L.pair_products_ok or not is_admissible(L) or not is_geometric(L).geometric:
            return None
        return frozenset(x for x in L.members if x in orbit_set)

    base = close([])
    if base is None:
        return []
    seen = {base}
    frontier = [base]
    while frontier:
        nxt = []
        for T in frontier:
            for x in orbit:
                if x in T:
                    continue
                U = close(sorted(T | {x}))
                if U is not None and U not in seen:
                    seen.add(U)
                    nxt.append(U)
        frontier = nxt
    return sorted(seen, key=lambda s: (len(s), sorted(s)))


def intersections_of(decomp: OrbitDecomposition, i: int, *, cutoff: int | None = None) -> list[frozenset[int]] | None:
    """The geometric intersections with orbit i, None above the cutoff."""
    cutoff = cutoff if cutoff is not None else get_setting("ORBIT_CUTOFF")
    if i not in decomp.intersections:
        if len(decomp.combinatorial[i]) > cutoff:
            return None
        decomp.intersections[i] = geometric_intersections(decomp, i)
    return decomp.intersections[i]


def orbit_bound(decomp: OrbitDecomposition, i: int, *, cutoff: int | None = None) -> tuple[frozenset[int], int]:
    """(realizable sizes, bnd) for combinatorial orbit i; cached on the decomposition."""
    if i in decomp.bounds:
        return decomp.bounds[i]
    orbit = decomp.combinatorial[i]
    sets = intersections_of(decomp, i, cutoff=cutoff)
    if sets is not None:
        values = frozenset(len(s) for s in sets)
        bound = max(values, default=0)
    else:
        G = compatibility_graph(decomp, orbit)
        bound = max((len(c) for c in nx.find_cliques(G)), default=0)
        values = frozenset(range(bound + 1))
        logger.warning("orbit %d of size %d above the cutoff: clique bound %d", i, len(orbit), bound)
    decomp.bounds[i] = (values, bound)
    return decomp.bounds[i]


def compute_bounds(decomp: OrbitDecomposition, *, cutoff: int | None = None) -> OrbitDecomposition:
    """Bounds for every combinatorial orbit, computed once per O_hbar-orbit and copied along it."""
    for orbit_ids in decomp.orbits:
        bound = orbit_bound(decomp, orbit_ids[0], cutoff=cutoff)
        for j in orbit_ids[1:]:
            decomp.bounds.setdefault(j, bound)
    logger.info("%s: bnd(Orb) = %d", decomp.config.name, decomp.bnd_total(range(len(decomp.combinatorial))))
    return decomp


def second_bound(decomp: OrbitDecomposition, i: int) -> int:
    """The second largest realizable size, 0 when there is none."""
    values = sorted(decomp.bnd_values(i), reverse=True)
    return values[1] if len(values) > 1 else 0
