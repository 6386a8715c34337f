import pytest

from conics.bounds import compute_bounds
from conics.errors import BudgetError, ConicsError, OverlappingClustersError, UsePatternSearchError
from conics.search import (
    canonical_key,
    combine_bounds,
    defect,
    enumerate_patterns,
    extend_by_conics,
    passes,
    pattern_search,
    search,
    single_orbit_search,
)
from conics import search as search_module
from conics.symmetry import decompose_orbits


@pytest.fixture
def decomp_b(config_b):
    return decompose_orbits(config_b)


def test_unknown_strategy(decomp_b):
    with pytest.raises(ConicsError):
        search(decomp_b, strategy="everything")


def test_negative_budget(decomp_b):
    with pytest.raises(BudgetError):
        pattern_search(decomp_b, [[0]], -1)


def test_unknown_orbit(decomp_b):
    with pytest.raises(ConicsError):
        pattern_search(decomp_b, [[17]], 0)


def test_patterns_descend(decomp_b):
    decomp_b.bounds[0] = (frozenset({0, 1, 2}), 2)
    decomp_b.bounds[1] = (frozenset({0, 1, 2}), 2)
    assert enumerate_patterns(decomp_b, [0, 1], 1) == [{0: 2, 1: 2}, {0: 2, 1: 1}, {0: 1, 1: 2}]
    assert enumerate_patterns(decomp_b, [0, 1], 0) == [{0: 2, 1: 2}]
    assert enumerate_patterns(decomp_b, [0, 1], 1, floor={1: 2}) == [{0: 2, 1: 2}, {0: 1, 1: 2}]


def test_low_rank_sets_are_not_extended(config_a):
    with pytest.raises(UsePatternSearchError):
        extend_by_conics(config_a.saturate([]))


def test_overlapping_clusters(decomp_b):
    with pytest.raises(OverlappingClustersError):
        combine_bounds(decomp_b, [([0, 1], 0), ([1, 2], 0)])


@pytest.mark.parametrize("strategy", ["patterns", "clusters"])
def test_found_sets_pass(decomp_b, strategy):
    result = search(decomp_b, strategy=strategy, budget=1)
    everything = range(len(decomp_b.combinatorial))
    for L in result.sets:
        assert L.is_saturated
        assert passes(L)
        assert defect(decomp_b, L, everything) <= 1


def test_singles_search(config_a):
    decomp = decompose_orbits(config_a)
    result = search(decomp, budget=1)
    for L in result.found:
        assert passes(L)
        assert defect(decomp, L, range(15)) <= 1


@pytest.fixture
def low_extension_rank(monkeypatch):
    """Sets of rank 3 in configuration B already count as high rank."""
    monkeypatch.setattr(search_module, "EXTENSION_RANK", 3)
    monkeypatch.setattr(search_module, "MAX_RANK", 4)
    monkeypatch.setenv("CONICS_EXTENSION_THRESHOLD", "100")


def test_high_rank_sets_are_found(decomp_b, low_extension_rank):
    everything = range(len(decomp_b.combinatorial))
    compute_bounds(decomp_b)
    budget = decomp_b.bnd_total(everything) - 2
    result = search(decomp_b, strategy="patterns", budget=budget)
    assert result.diverted
    assert {L.size for L in result.found} == {2}
    for L in result.found:
        assert passes(L)
        assert defect(decomp_b, L, everything) <= budget


def test_high_rank_sets_block_the_certificate(decomp_b, low_extension_rank):
    everything = list(range(len(decomp_b.combinatorial)))
    compute_bounds(decomp_b)
    budget = decomp_b.bnd_total(everything) - 2
    verdict = combine_bounds(decomp_b, [(everything, budget)], target=2)
    assert not verdict.certified
    assert 2 in verdict.sizes[0]


def geometric_closures(config):
    """Every saturated geometric set, grown one conic at a time."""
    start = config.saturate([])
    verdicts = {start.members: passes(start)}
    sets = {start.members: start}
    frontier = [start] if verdicts[start.members] else []
    while frontier:
        nxt = []
        for L in frontier:
            for x in range(config.size):
                if x in L.members:
                    continue
                L2 = config.saturate(L.members + (x,))
                if L2.members in verdicts:
                    continue
                sets[L2.members] = L2
                verdicts[L2.members] = passes(L2)
                if verdicts[L2.members]:
                    nxt.append(L2)
        frontier = nxt
    return [sets[m] for m, ok in verdicts.items() if ok]


@pytest.mark.parametrize("name", [pytest.param("config_a", marks=pytest.mark.slow), "config_b"])
@pytest.mark.parametrize("budget", [0, 1, 2, 3])
def test_patterns_agree_with_exhaustive_search(request, name, budget):
    config = request.getfixturevalue(name)
    decomp = decompose_orbits(config)
    everything = list(range(len(decomp.combinatorial)))
    result = pattern_search(decomp, [everything], budget)
    expected = {
        canonical_key(decomp, L.members)
        for L in geometric_closures(config)
        if defect(decomp, L, everything) <= budget
    }
    assert {canonical_key(decomp, L.members) for L in result.found} == expected


@pytest.mark.slow
@pytest.mark.parametrize("budget", [3, 5])
def test_backward_search_agrees_with_exhaustive_search(config_a, budget):
    decomp = decompose_orbits(config_a)
    singles = decomp.singles
    backward = single_orbit_search(decomp, singles, budget, direct_below=0)
    direct = single_orbit_search(decomp, singles, budget, direct_below=config_a.size + 1)
    assert [L.members for L in backward] == [L.members for L in direct]
    for L in direct:
        assert passes(L)
