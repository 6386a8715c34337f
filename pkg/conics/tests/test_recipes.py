import random

import pytest

from conics.errors import UnavailableSetError, UnknownCatalogEntryError
from conics.recipes import (
    build_named,
    class_mismatches,
    class_of,
    expectation_for,
    leech_slice,
    named_sets,
    unavailable_sets,
    verify_named,
)
from conics.search import extend_by_conics, passes


def test_named_sets():
    names = named_sets()
    assert len(names) == 11
    assert "Lmisc2" not in names
    assert set(unavailable_sets()) == {"Lmisc2"}
    assert class_of("Lmisc2") == "249"
    assert {class_of(n) for n in names} == {"285", "261", "249"}


def test_expectations():
    entry = expectation_for("Lmisc1")
    assert entry["class"] == "249"
    assert entry["aut"] == 144
    assert entry["discr_span"] == 312
    kappa = entry["models"]["kappa"]
    assert (kappa["lines"], kappa["irreducible"], kappa["reducible"]) == (42, 60, 189)
    assert "members" not in entry


def test_unknown_names():
    with pytest.raises(UnknownCatalogEntryError):
        class_of("Lmisc4")
    with pytest.raises(UnknownCatalogEntryError):
        build_named("L0")


def test_unshipped_set_is_not_built():
    with pytest.raises(UnavailableSetError) as exc:
        build_named("Lmisc2")
    assert "12A2#5" in str(exc.value)


@pytest.mark.slow
def test_largest_class():
    reports = [verify_named(n, with_aut=False) for n in ("Lmax1", "Lmax2")]
    for r in reports:
        assert r.passed, r.mismatches
    assert class_mismatches(reports) == []


@pytest.mark.slow
def test_second_class_sizes():
    L = build_named("Lsub1")
    assert L.size == 261
    assert L.rank == 20
    report = verify_named("Lsub1")
    assert report.passed, report.mismatches


@pytest.mark.slow
@pytest.mark.parametrize("name, aut", [("Lmax1", 2880), ("Lsub1", 288), ("Lmisc1", 144)])
def test_automorphism_orders(name, aut):
    report = verify_named(name)
    assert report.aut == aut
    assert report.passed, report.mismatches


@pytest.mark.slow
def test_lines_on_the_type_two_model():
    report = verify_named("Lmisc1", with_aut=False)
    assert report.size == 249
    kappa = report.models["kappa"]
    assert (kappa.type, kappa.lines, kappa.irreducible, kappa.reducible) == ("II", 42, 60, 189)
    assert report.models["0"].lines == 0
    assert report.models["0"].irreducible == 249


@pytest.mark.slow
@pytest.mark.parametrize(
    "products, size, geometric",
    [((0, 0, 0, 2), 285, True), ((0, 0, 1, 1), 261, True), ((1, -2, 1, -2), 297, False)],
)
def test_leech_slices(products, size, geometric):
    L = leech_slice("Leech#1", *products)
    assert L.size == size
    assert L.rank <= 20
    assert L.config.saturate(L.members) == L
    assert passes(L) == geometric


@pytest.mark.slow
def test_saturated_subsets_stay_geometric():
    L = build_named("Lmisc1")
    rng = random.Random(3)
    for size in (10, 40, 120):
        sub = L.config.saturate(rng.sample(L.members, size))
        assert set(sub.members) <= set(L.members)
        assert passes(sub)


@pytest.mark.slow
def test_rank_eighteen_subset_extends_back():
    big = build_named("Lmax1")
    config = big.config
    chosen: list[int] = []
    for x in big.members:
        if config.conic_set(chosen + [x]).rank > len(chosen):
            chosen.append(x)
        if len(chosen) == 18:
            break
    L = config.saturate(chosen)
    assert L.rank == 18
    found = extend_by_conics(L, big.size)
    assert big.members in {X.members for X in found}
