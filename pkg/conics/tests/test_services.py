import json

import pandas as pd
import pytest

from conics.configuration import is_geometric
from conics.errors import ConicsError
from conics.models import JournalEntry, SearchRun
from conics.selectors import entry_by_digest, journal_entries, journal_summary, last_run
from conics.services import export_journal, record_sets, run_search
from conics.symmetry import decompose_orbits

pytestmark = pytest.mark.django_db


@pytest.fixture
def some_sets(config_a):
    return [config_a.saturate([i]) for i in range(3)] + [config_a.saturate([0, 14])]


def test_record_sets_is_idempotent(config_a, some_sets):
    decomp = decompose_orbits(config_a)
    assert record_sets(run=None, journal="t", config_id="A", sets=some_sets, decomp=decomp) == len(some_sets)
    assert record_sets(run=None, journal="t", config_id="A", sets=some_sets, decomp=decomp) == 0
    assert JournalEntry.objects.filter(journal="t").count() == len(some_sets)
    # the same sets in another journal are new
    assert record_sets(run=None, journal="u", config_id="A", sets=some_sets[:1]) == 1


def test_entries_store_the_geometric_verdict(config_a, some_sets):
    record_sets(run=None, journal="t", config_id="A", sets=some_sets)
    for L in some_sets:
        entry = JournalEntry.objects.get(journal="t", digest=L.digest())
        assert entry.geometric == is_geometric(L).geometric


def test_selectors(some_sets):
    record_sets(run=None, journal="t", config_id="A", sets=some_sets)
    largest = journal_entries(journal="t").first()
    assert largest.size == max(L.size for L in some_sets)
    assert len(journal_entries(journal="t", min_size=largest.size)) >= 1
    digest = some_sets[0].digest()
    assert entry_by_digest(journal="t", digest=digest[:16]).digest == digest
    with pytest.raises(ConicsError):
        entry_by_digest(journal="t", digest="")
    assert journal_summary(journal="t") == [{"config_id": "A", "entries": len(some_sets), "largest": largest.size}]


def test_failed_run_is_marked(config_b):
    with pytest.raises(ConicsError):
        run_search(config_id="B", budget=0, strategy="nonsense", journal="t", decomp=decompose_orbits(config_b))
    run = last_run(journal="t", config_id="B")
    assert run.status == SearchRun.Status.FAILED
    assert run.finished_at is not None


def test_rerun_adds_nothing(config_b):
    decomp = decompose_orbits(config_b)
    run, created = run_search(config_id="B", budget=1, strategy="patterns", journal="t", record_threshold=0, decomp=decomp)
    assert run.status == SearchRun.Status.FINISHED
    again, created_again = run_search(
        config_id="B", budget=1, strategy="patterns", journal="t", record_threshold=0, decomp=decomp,
    )
    assert created_again == 0
    assert JournalEntry.objects.filter(journal="t").count() == created
    assert SearchRun.objects.filter(journal="t").count() == 2


def test_export(tmp_path, some_sets):
    record_sets(run=None, journal="t", config_id="A", sets=some_sets)
    path = tmp_path / "journal.json"
    assert export_journal(journal="t", path=path) == len(some_sets)
    rows = json.loads(path.read_text())
    assert [r["size"] for r in rows] == sorted((L.size for L in some_sets), reverse=True)

    xlsx = tmp_path / "journal.xlsx"
    export_journal(journal="t", path=xlsx)
    df = pd.read_excel(xlsx, sheet_name="journal")
    assert len(df) == len(some_sets)
    assert json.loads(df.loc[0, "members"]) == rows[0]["members"]
