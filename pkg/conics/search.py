"""
Searching for large geometric sets of conics in a configuration.

Sets are grown orbit by orbit along patterns (prescribed intersection counts
with the combinatorial orbits); every intermediate set is saturated and
checked again, since subsets of geometric sets are geometric. Sets of rank
18 or more are handed over to `extend_by_conics`, and configurations made
of single-conic orbits are searched backwards from the span of all conics.
"""
from __future__ import annotations

import itertools
import logging
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from conics import linalg
from conics.bounds import compute_bounds, intersections_of, orbit_bound, second_bound
from conics.conf import get_setting
from conics.configuration import ConicSet, Configuration, is_admissible, is_geometric, require_nonempty
from conics.errors import BudgetError, ConicsError, OverlappingClustersError, UsePatternSearchError
from conics.niemeier import candidates
from conics.symmetry import OrbitDecomposition

logger = logging.getLogger(__name__)

EXTENSION_RANK = 18
MAX_RANK = 20
DIRECT_SINGLES = 16

Pattern = dict[int, int]


def canonical_key(decomp: OrbitDecomposition, members: Iterable[int]) -> tuple[int, ...]:
    """The least image of the set under the symmetry group, or the set itself when the group is too large."""
    members = sorted(members)
    elems = decomp.group.elements()
    if not elems or not members:
        return tuple(members)
    images = np.sort(np.stack(elems)[:, members], axis=1)
    best = images[np.lexsort(images.T[::-1])[0]]
    return tuple(int(x) for x in best)


def passes(L: ConicSet) -> bool:
    """Saturated input; pairwise products, admissibility and geometricity."""
    return L.pair_products_ok and is_admissible(L) and is_geometric(L).geometric


@dataclass
class SearchResult:
    found: list[ConicSet] = field(default_factory=list)       # Bnd_d, diverted ones within the budget included
    diverted: list[ConicSet] = field(default_factory=list)    # reached rank >= 18 on the way
    extended: list[ConicSet] = field(default_factory=list)    # produced by extend_by_conics
    recorded: list[ConicSet] = field(default_factory=list)    # geometric, above the recording threshold
    patterns: int = 0

    def merge(self, other: "SearchResult") -> None:
        self.found += other.found
        self.diverted += other.diverted
        self.extended += other.extended
        self.recorded += other.recorded
        self.patterns += other.patterns

    def normalize(self, decomp: OrbitDecomposition | None = None) -> "SearchResult":
        """Deduplicate (modulo symmetry when a decomposition is given) and sort every list."""

        def clean(sets: list[ConicSet]) -> list[ConicSet]:
            seen: dict[tuple, ConicSet] = {}
            for L in sets:
                key = canonical_key(decomp, L.members) if decomp is not None else L.members
                if key not in seen or L.members < seen[key].members:
                    seen[key] = L
            return sorted(seen.values(), key=lambda L: (-L.size, L.members))

        self.found = clean(self.found)
        self.diverted = clean(self.diverted)
        self.extended = clean(self.extended)
        self.recorded = clean(self.recorded)
        return self

    @property
    def sets(self) -> list[ConicSet]:
        return self.found + self.extended

    def to_dict(self) -> dict:
        return {
            "patterns": self.patterns,
            "found": [L.size for L in self.found],
            "diverted": [L.size for L in self.diverted],
            "extended": [L.size for L in self.extended],
            "recorded": [L.digest() for L in self.recorded],
        }


# ---------- one pattern step ----------
class PatternBuilder:
    """Orbit-by-orbit construction of the sets fitting a pattern."""

    def __init__(
        self,
        decomp: OrbitDecomposition,
        *,
        record_threshold: int | None = None,
        extension_threshold: int | None = None,
    ):
        self.decomp = decomp
        self.config = decomp.config
        self.record_threshold = record_threshold if record_threshold is not None else get_setting("RECORD_THRESHOLD")
        self.extension_threshold = (
            extension_threshold if extension_threshold is not None else get_setting("EXTENSION_THRESHOLD")
        )

    def counts(self, L: ConicSet) -> np.ndarray:
        return self.decomp.counts(L.members)

    def complies(self, L: ConicSet, frozen: Pattern) -> bool:
        counts = self.counts(L)
        return all(counts[o] == v for o, v in frozen.items())

    def choices(self, orbit: int, current: frozenset[int], target: int) -> list[frozenset[int]]:
        """Candidates for L cap o: geometric intersections of the given size containing `current`."""
        inter = intersections_of(self.decomp, orbit)
        if inter is not None:
            return [S for S in inter if len(S) == target and current <= S]
        rest = [x for x in self.decomp.combinatorial[orbit] if x not in current]
        P = self.config.products
        out = []
        for extra in itertools.combinations(rest, target - len(current)):
            S = current | frozenset(extra)
            idx = sorted(S)
            sub = P[np.ix_(idx, idx)]
            off = sub[~np.eye(len(idx), dtype=bool)]
            if ((off >= 0) & (off <= 2)).all():
                out.append(S)
        return out

    def _settle(self, L: ConicSet, result: SearchResult) -> bool:
        """Record L; True when the search should continue from it."""
        if L.size > self.record_threshold:
            result.recorded.append(L)
        if L.rank >= EXTENSION_RANK:
            result.diverted.append(L)
            result.extended += extend_by_conics(L, self.extension_threshold, decomp=self.decomp)
            return False
        return True

    def fill(self, start: ConicSet, pattern: Pattern, frozen: Pattern, result: SearchResult) -> list[ConicSet]:
        """All sets fitting `pattern` grown from `start`; rank >= 18 ones are diverted."""
        order = sorted(pattern, key=lambda o: (-pattern[o], o))
        states = [(start, dict(frozen))]
        for orbit in order:
            target = pattern[orbit]
            nxt: dict[tuple[int, ...], tuple[ConicSet, Pattern]] = {}
            for L, fr in states:
                current = frozenset(x for x in L.members if self.decomp.orbit_of[x] == orbit)
                if len(current) > target:
                    continue
                fr2 = {**fr, orbit: target}
                for S in self.choices(orbit, current, target):
                    L2 = self.config.saturate(set(L.members) | S, frozen=tuple(sorted(fr2.items())))
                    if L2.members in nxt or not self.complies(L2, fr2) or not passes(L2):
                        continue
                    nxt[L2.members] = (L2, fr2)
            states = []
            for L2, fr2 in nxt.values():
                if self._settle(L2, result):
                    states.append((L2, fr2))
            if not states:
                return []
        return [L for L, _ in states]


# ---------- patterns ----------
def _check_clusters(decomp: OrbitDecomposition, clusters: Sequence[Sequence[int]]) -> None:
    n = len(decomp.combinatorial)
    for cluster in clusters:
        for o in cluster:
            if not 0 <= o < n:
                raise ConicsError(f"no combinatorial orbit {o}")


def enumerate_patterns(decomp: OrbitDecomposition, orbits: Sequence[int], slack: int, floor: Pattern | None = None) -> list[Pattern]:
    """
    Patterns on `orbits` whose total defect is at most `slack`; values come
    from the realizable sizes and are at least `floor` where given.
    """
    floor = floor or {}
    orbits = list(orbits)
    out: list[Pattern] = []

    def rec(i: int, left: int, acc: Pattern) -> None:
        if i == len(orbits):
            out.append(dict(acc))
            return
        o = orbits[i]
        bnd = decomp.bnd(o)
        for v in sorted(decomp.bnd_values(o), reverse=True):
            if bnd - v > left:
                break
            if v < floor.get(o, 0):
                continue
            acc[o] = v
            rec(i + 1, left - (bnd - v), acc)
            del acc[o]

    rec(0, slack, {})
    return out


def pattern_representatives(decomp: OrbitDecomposition, cluster: Sequence[int], patterns: list[Pattern]) -> list[Pattern]:
    """One pattern per orbit of the setwise stabilizer of the cluster."""
    group = decomp.orbit_group
    if not group.generators or len(patterns) < 2:
        return patterns
    elems = group.setwise_stabilizer(cluster).elements()
    if not elems:
        return patterns
    seen, reps = set(), []
    for pat in patterns:
        key = min(tuple(sorted((int(g[o]), v) for o, v in pat.items())) for g in elems)
        if key not in seen:
            seen.add(key)
            reps.append(pat)
    return reps


def _ensure_bounds(decomp: OrbitDecomposition, orbits: Iterable[int]) -> None:
    for o in orbits:
        orbit_bound(decomp, o)


def defect(decomp: OrbitDecomposition, L: ConicSet, orbits: Iterable[int]) -> int:
    counts = decomp.counts(L.members)
    return sum(decomp.bnd(o) - int(counts[o]) for o in orbits)


def _run_patterns(builder: PatternBuilder, start: ConicSet, patterns: list[Pattern], frozen: Pattern, threads: int) -> SearchResult:
    def one(pat: Pattern) -> SearchResult:
        res = SearchResult(patterns=1)
        res.found += builder.fill(start, pat, frozen, res)
        return res

    total = SearchResult()
    if threads > 1 and len(patterns) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for res in pool.map(one, patterns):
                total.merge(res)
    else:
        for pat in patterns:
            total.merge(one(pat))
    return total


def _cluster_order_key(decomp: OrbitDecomposition, L: ConicSet, cluster: Sequence[int], cid: int):
    counts = decomp.counts(L.members)
    inside = sum(int(counts[o]) for o in cluster)
    defects = [decomp.bnd(o) - int(counts[o]) for o in cluster]
    nu = tuple(defects.count(i) for i in range(max(defects, default=0) + 1))
    return (-inside, tuple(-x for x in nu), cid)


def _promote_diverted(decomp: OrbitDecomposition, result: SearchResult, union: Sequence[int], d: int) -> SearchResult:
    """Diverted sets are geometric; those within the budget belong to Bnd_d."""
    result.found += [L for L in result.diverted if defect(decomp, L, union) <= d]
    return result


def pattern_search(
    decomp: OrbitDecomposition,
    clusters: Sequence[Sequence[int]],
    d: int,
    *,
    record_threshold: int | None = None,
    extension_threshold: int | None = None,
    threads: int = 1,
    seed: int | None = None,
) -> SearchResult:
    """
    Bnd_d of the union of the clusters: geometric sets generated by conics of
    the clusters with defect at most d, modulo symmetry. Several clusters are
    filled one at a time; at step k the next cluster's defect is at most
    (m d - spent) / (N - k), m the largest number of clusters sharing an orbit.
    """
    if d < 0:
        raise BudgetError(f"negative defect budget {d}")
    _check_clusters(decomp, clusters)
    clusters = [sorted(set(c)) for c in clusters if c]
    union = sorted({o for c in clusters for o in c})
    _ensure_bounds(decomp, union)
    builder = PatternBuilder(decomp, record_threshold=record_threshold, extension_threshold=extension_threshold)
    rng = random.Random(seed) if seed is not None else None
    base = decomp.config.saturate([])

    result = SearchResult()
    if not passes(base):
        return result
    if len(clusters) <= 1:
        patterns = pattern_representatives(decomp, union, enumerate_patterns(decomp, union, d))
        if rng is not None:
            rng.shuffle(patterns)
        logger.info("%s: %d patterns on %d orbits, defect <= %d", decomp.config.name, len(patterns), len(union), d)
        result.merge(_run_patterns(builder, base, patterns, {}, threads))
        return _promote_diverted(decomp, result, union, d).normalize(decomp)

    multiplicity = max(sum(1 for c in clusters if o in c) for o in union)
    N = len(clusters)
    states = [(base, {}, ())]
    for k in range(N):
        nxt = []
        for L, frozen, used in states:
            spent = sum(defect(decomp, L, clusters[i]) for i in used)
            budget = (multiplicity * d - spent) // (N - k)
            if budget < 0:
                continue
            remaining = [i for i in range(N) if i not in used]
            remaining.sort(key=lambda i: _cluster_order_key(decomp, L, clusters[i], i))
            for i in remaining:
                cluster = clusters[i]
                fixed = {o: v for o, v in frozen.items() if o in cluster}
                fixed_defect = sum(decomp.bnd(o) - v for o, v in fixed.items())
                open_orbits = [o for o in cluster if o not in frozen]
                counts = decomp.counts(L.members)
                floor = {o: int(counts[o]) for o in open_orbits}
                pats = enumerate_patterns(decomp, open_orbits, budget - fixed_defect, floor) if budget >= fixed_defect else []
                if rng is not None:
                    rng.shuffle(pats)
                step = SearchResult()
                for pat in pats:
                    step.patterns += 1
                    for L2 in builder.fill(L, pat, frozen, step):
                        nxt.append((L2, {**frozen, **pat}, used + (i,)))
                result.diverted += step.diverted
                result.extended += step.extended
                result.recorded += step.recorded
                result.patterns += step.patterns
        dedup: dict[tuple, tuple] = {}
        for L2, fr, used in nxt:
            dedup.setdefault((L2.members, tuple(sorted(used))), (L2, fr, used))
        states = list(dedup.values())
        logger.debug("cluster step %d: %d partial sets", k + 1, len(states))
    for L, _, _ in states:
        if defect(decomp, L, union) <= d:
            result.found.append(L)
    return _promote_diverted(decomp, result, union, d).normalize(decomp)


# ---------- extensions by conics ----------
def _frozen_conics(decomp: OrbitDecomposition | None, L: ConicSet) -> set[int]:
    if decomp is None:
        return set()
    return {x for o, _ in L.frozen for x in decomp.combinatorial[o]}


def _one_step(L: ConicSet, frozen: set[int], members: Iterable[int] | None = None) -> dict[tuple[int, ...], ConicSet]:
    """Saturations sat(L + l) for the conics l outside L, keyed by members; root-free and frozen-disjoint only."""
    config = L.config
    inside = set(L.members)
    out: dict[tuple[int, ...], ConicSet] = {}
    covered: set[int] = set()
    for x in (members if members is not None else range(config.size)):
        if x in inside or x in covered:
            continue
        L2 = config.saturate(inside | {x}, frozen=L.frozen)
        covered.update(L2.members)
        cls = set(L2.members) - inside
        if not L2.is_root_free or cls & frozen:
            continue
        out[L2.members] = L2
    return out


def extend_by_conics(L: ConicSet, m: int | None = None, *, decomp: OrbitDecomposition | None = None) -> list[ConicSet]:
    """
    Geometric extensions of a rank 18 or 19 set by classes of conics with a
    common span; rank 20 sets are maximal and come back unchanged.
    """
    m = m if m is not None else get_setting("EXTENSION_THRESHOLD")
    rank = L.rank
    if rank < EXTENSION_RANK:
        raise UsePatternSearchError()
    if rank >= MAX_RANK:
        return [L]
    frozen = _frozen_conics(decomp, L)
    singles = _one_step(L, frozen)
    out: dict[tuple[int, ...], ConicSet] = {}
    for L2 in singles.values():
        if L2.size >= m and passes(L2):
            out[L2.members] = L2
    if rank == EXTENSION_RANK:
        classes = list(singles.values())
        groups: dict[tuple[int, ...], ConicSet] = {}
        for A, B in itertools.combinations(classes, 2):
            L3 = L.config.saturate(set(A.members) | set(B.members), frozen=L.frozen)
            if L3.members in groups or L3.rank != MAX_RANK:
                continue
            groups[L3.members] = L3
        for L3 in groups.values():
            if set(L3.members) & (frozen - set(L.members)):
                continue
            if L3.size >= m and L3.is_root_free and passes(L3):
                out[L3.members] = L3
    found = sorted(out.values(), key=lambda s: (-s.size, s.members))
    logger.info("extend_by_conics: rank %d set of size %d -> %s", rank, L.size, [s.size for s in found])
    return found


# ---------- extensions by an orbit ----------
def extend_by_orbit(
    L: ConicSet,
    decomp: OrbitDecomposition,
    mode: str = "maximal",
    *,
    target: int | None = None,
    extension_threshold: int | None = None,
) -> SearchResult:
    """
    Grow L by one more frozen orbit among those not yet full: to its bound
    (maximal mode) or to every realizable size above the current count.
    Maximal mode requires |L| + sum(bnd - bnd_2) < target; otherwise it
    falls back to the arbitrary mode.
    """
    if mode not in ("maximal", "arbitrary"):
        raise ConicsError(f"unknown extension mode {mode!r}")
    target = target if target is not None else get_setting("TARGET_SIZE")
    frozen = dict(L.frozen)
    counts = decomp.counts(L.members)
    open_orbits = [o for o in range(len(decomp.combinatorial)) if o not in frozen]
    _ensure_bounds(decomp, open_orbits)
    candidates_ = [o for o in open_orbits if counts[o] < decomp.bnd(o)]
    if mode == "maximal":
        slack = sum(decomp.bnd(o) - second_bound(decomp, o) for o in candidates_)
        if L.size + slack >= target:
            logger.warning("maximal orbit extension does not apply (|L| + slack = %d); using arbitrary mode", L.size + slack)
            mode = "arbitrary"
    builder = PatternBuilder(decomp, extension_threshold=extension_threshold)
    result = SearchResult()
    for o in candidates_:
        if mode == "maximal":
            values = [decomp.bnd(o)]
        else:
            values = sorted(v for v in decomp.bnd_values(o) if v > counts[o])
        for v in values:
            result.patterns += 1
            result.found += builder.fill(L, {o: v}, frozen, result)
    return result.normalize(decomp)


# ---------- single orbits, backwards ----------
def _gf2_express(E: np.ndarray) -> tuple[list[int], np.ndarray]:
    """Pivot rows of E over F_2 and T with E = T E[pivots] mod 2."""
    k = E.shape[1]
    basis: list[tuple[np.ndarray, np.ndarray, int]] = []
    pivots: list[int] = []
    combos = []
    for i, row in enumerate(E):
        v = row.copy()
        c = np.zeros(k, dtype=bool)
        for bv, bc, lead in basis:
            if v[lead]:
                v ^= bv
                c ^= bc
        if v.any():
            c = c.copy()
            c[len(pivots)] = True
            basis.append((v, c, int(np.flatnonzero(v)[0])))
            pivots.append(i)
            combos.append(None)
        else:
            combos.append(c)
    r = len(pivots)
    T = np.zeros((len(E), r), dtype=np.int64)
    for i, c in enumerate(combos):
        if c is None:
            T[i, pivots.index(i)] = 1
        else:
            T[i] = c[:r]
    return pivots, T


def _span_coordinates(B: np.ndarray, V: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Rational coordinates of the rows of V in the row basis B, and the mask of rows in the integral span."""
    cols = linalg.hermite_normal_form(B).pivots
    X = np.asarray(V, dtype=object)[:, cols].dot(linalg.rational_inverse(B[:, cols]))
    inside = (X.dot(B) == np.asarray(V, dtype=object)).all(axis=1)
    integral = np.array([all(Fraction(x).denominator == 1 for x in row) for row in X], dtype=bool)
    return X, inside & integral


def _z_span_members(config: Configuration, generators: Sequence[int]) -> list[int]:
    """Conics in the integral span of the generators."""
    if not generators:
        return []
    B = linalg.hnf_rows(config.conics[list(generators)].tolist())
    _, ok = _span_coordinates(B, config.conics.tolist())
    return [int(i) for i in np.flatnonzero(ok)]


def _subset_coords(config: Configuration, members: Sequence[int]) -> np.ndarray:
    """Integral coordinates of the members in an HNF basis of their integral span."""
    V = config.conics[list(members)].tolist()
    X, _ = _span_coordinates(linalg.hnf_rows(V), V)
    return np.array([[int(x) for x in row] for row in X], dtype=np.int64).reshape(len(members), -1)


def relatively_saturated(config: Configuration, members: Sequence[int], pool: set[int]) -> bool:
    """L = pool cap sat(L)."""
    L = config.saturate(members)
    return set(members) == set(L.members) & pool


def single_orbit_search(
    decomp: OrbitDecomposition,
    singles: Iterable[int],
    d: int,
    *,
    direct_below: int = DIRECT_SINGLES,
) -> list[ConicSet]:
    """
    Saturations of the relatively saturated subsets of the single orbits with
    at least |singles| - d members, found by iterated index 2 sublattices of
    the integral span; fewer than `direct_below` conics are tried exhaustively.
    """
    config = decomp.config
    conics = sorted({x for o in singles for x in decomp.combinatorial[o]})
    if not conics:
        return []
    if d < 0:
        raise BudgetError(f"negative defect budget {d}")
    need = len(conics) - d
    pool_list = _z_span_members(config, conics)
    pool = set(pool_list)

    found: dict[tuple[int, ...], ConicSet] = {}

    def consider(members: Sequence[int]) -> None:
        if len(members) < need or not relatively_saturated(config, members, pool):
            return
        L = config.saturate(members)
        if L.members not in found and passes(L):
            found[L.members] = L

    if len(pool_list) < direct_below:
        for size in range(len(pool_list), max(need, 0) - 1, -1):
            for sub in itertools.combinations(pool_list, size):
                consider(sub)
    else:
        seen: set[tuple[int, ...]] = set()
        frontier = [tuple(pool_list)]
        while frontier:
            nxt = []
            for members in frontier:
                if members in seen:
                    continue
                seen.add(members)
                consider(members)
                slack = len(members) - need
                if slack <= 0:
                    continue
                E = (_subset_coords(config, members) % 2).astype(bool)
                _, T = _gf2_express(E)
                k = T.shape[1]
                for weight in range(1, min(slack, k) + 1):
                    for combo in itertools.combinations(range(k), weight):
                        vals = T[:, list(combo)].sum(axis=1) % 2
                        sub = tuple(x for x, v in zip(members, vals) if v == 0)
                        if len(sub) >= need and sub not in seen:
                            nxt.append(sub)
            frontier = sorted(set(nxt))
            logger.debug("backward search: %d subsets at the next level", len(frontier))
    out = sorted(found.values(), key=lambda L: (-L.size, L.members))
    logger.info("%s: backward search over %d singles found %s", config.name, len(conics), [L.size for L in out])
    return out


# ---------- certificates ----------
@dataclass
class CombineVerdict:
    certified: bool
    case: int | None
    sizes: list[list[int]]

    def to_dict(self) -> dict:
        return {"certified": self.certified, "case": self.case, "sizes": self.sizes}


def _distinct(sets: list[ConicSet]) -> list[ConicSet]:
    return list({L.members: L for L in sets}.values())


def combine_bounds(
    decomp: OrbitDecomposition,
    parts: Sequence[tuple[Sequence[int], int]],
    *,
    target: int | None = None,
) -> CombineVerdict:
    """
    Certify that no geometric set reaches `target` from per-cluster searches:
    either every Bnd_{d_i}(cluster_i) is empty, or only the first is nonempty
    and each of its sets has defect > d_1 + d_2 + 1 on the second cluster.
    """
    target = target if target is not None else get_setting("TARGET_SIZE")
    seen: set[int] = set()
    for cluster, _ in parts:
        if seen & set(cluster):
            raise OverlappingClustersError()
        seen |= set(cluster)
    all_orbits = range(len(decomp.combinatorial))
    _ensure_bounds(decomp, all_orbits)
    total = decomp.bnd_total(all_orbits)
    if sum(b for _, b in parts) + len(parts) <= total - target:
        raise BudgetError(f"budgets {[b for _, b in parts]} do not reach bnd(Orb) - M = {total - target}")
    # diverted sets count whatever their defect
    runs = [pattern_search(decomp, [cluster], budget) for cluster, budget in parts]
    results = [_distinct(r.sets + r.diverted) for r in runs]
    sizes = [[L.size for L in r] for r in results]
    if all(not r for r in results):
        return CombineVerdict(True, 1, sizes)
    if len(parts) >= 2 and all(not r for r in results[1:]):
        (c1, d1), (c2, d2) = parts[0], parts[1]
        if all(defect(decomp, L, c2) > d1 + d2 + 1 for L in results[0]):
            return CombineVerdict(True, 2, sizes)
    return CombineVerdict(False, None, sizes)


# ---------- driver ----------
STRATEGIES = ("auto", "patterns", "clusters", "singles")


def search(
    decomp: OrbitDecomposition,
    *,
    strategy: str = "auto",
    budget: int = 0,
    threads: int = 1,
    seed: int | None = None,
    record_threshold: int | None = None,
) -> SearchResult:
    """One search over a configuration; `budget` is the defect budget d."""
    if strategy not in STRATEGIES:
        raise ConicsError(f"unknown strategy {strategy!r}; choose from {', '.join(STRATEGIES)}")
    compute_bounds(decomp)
    everything = list(range(len(decomp.combinatorial)))
    if strategy == "auto":
        strategy = "singles" if len(decomp.singles) == len(everything) else "patterns"
    if strategy == "singles":
        sets = single_orbit_search(decomp, decomp.singles, budget)
        threshold = record_threshold if record_threshold is not None else get_setting("RECORD_THRESHOLD")
        return SearchResult(found=sets, recorded=[L for L in sets if L.size > threshold]).normalize(decomp)
    clusters = [everything] if strategy == "patterns" else [sorted(o) for o in decomp.orbits]
    return pattern_search(
        decomp, clusters, budget, threads=threads, seed=seed, record_threshold=record_threshold
    )


__all__ = [
    "CombineVerdict",
    "PatternBuilder",
    "SearchResult",
    "candidates",
    "canonical_key",
    "combine_bounds",
    "enumerate_patterns",
    "extend_by_conics",
    "extend_by_orbit",
    "is_admissible",
    "is_geometric",
    "pattern_search",
    "require_nonempty",
    "search",
    "single_orbit_search",
]
