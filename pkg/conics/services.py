from __future__ import annotations

import json
import logging
from pathlib import Path

import pandas as pd
from django.db import transaction
from django.utils import timezone

from conics.configuration import ConicSet, is_geometric, load_configuration
from conics.models import JournalEntry, SearchRun
from conics.search import defect, search
from conics.selectors import journal_rows
from conics.symmetry import OrbitDecomposition, decompose_orbits

logger = logging.getLogger(__name__)


# ---------- journal ----------
def _entry_kwargs(L: ConicSet, decomp: OrbitDecomposition | None) -> dict:
    data = L.to_dict()
    return {
        "size": L.size,
        "rank": L.rank,
        "members": data["members"],
        "pattern": data["frozen"],
        "defect": defect(decomp, L, range(len(decomp.combinatorial))) if decomp is not None else None,
        "geometric": is_geometric(L).geometric,
    }


@transaction.atomic
def record_sets(*, run: SearchRun | None, journal: str, config_id: str, sets, decomp: OrbitDecomposition | None = None) -> int:
    """
    Journals the sets; an entry already present for (journal, config, digest)
    is left alone. Returns the number of new entries.
    """
    created = 0
    for L in sets:
        _, new = JournalEntry.objects.get_or_create(
            journal=journal,
            config_id=config_id,
            digest=L.digest(),
            defaults={"run": run, **_entry_kwargs(L, decomp)},
        )
        if new:
            created += 1
            logger.info("journaled %s |L| = %d in %s", config_id, L.size, journal)
    return created


@transaction.atomic
def start_run(*, journal: str, config_id: str, strategy: str, budget: int, seed: int | None = None, threads: int = 1) -> SearchRun:
    return SearchRun.objects.create(
        journal=journal, config_id=config_id, strategy=strategy, budget=budget, seed=seed, threads=threads,
    )


def finish_run(*, run: SearchRun, status: str = SearchRun.Status.FINISHED) -> SearchRun:
    run.status = status
    run.finished_at = timezone.now()
    run.save(update_fields=["status", "finished_at"])
    return run


def run_search(
    *,
    config_id: str,
    budget: int,
    strategy: str = "auto",
    journal: str = "default",
    threads: int = 1,
    seed: int | None = None,
    record_threshold: int | None = None,
    decomp: OrbitDecomposition | None = None,
) -> tuple[SearchRun, int]:
    """
    Runs one search and journals what it records. Re-running with the same
    arguments adds nothing, so an interrupted journal can be resumed.
    """
    if decomp is None:
        decomp = decompose_orbits(load_configuration(config_id))
    run = start_run(journal=journal, config_id=config_id, strategy=strategy, budget=budget, seed=seed, threads=threads)
    try:
        result = search(
            decomp, strategy=strategy, budget=budget, threads=threads, seed=seed, record_threshold=record_threshold,
        )
    except Exception:
        logger.exception("search on %s failed", config_id)
        finish_run(run=run, status=SearchRun.Status.FAILED)
        raise
    created = record_sets(run=run, journal=journal, config_id=config_id, sets=result.recorded, decomp=decomp)
    finish_run(run=run)
    logger.info(
        "%s: %d patterns, %d sets recorded, %d new in journal %s",
        config_id, result.patterns, len(result.recorded), created, journal,
    )
    return run, created


# ---------- export ----------
def export_journal(*, journal: str, path) -> int:
    """Writes the journal as JSON, or as a spreadsheet when the path ends in .xlsx."""
    rows = journal_rows(journal=journal)
    path = Path(path)
    if path.suffix.lower() == ".xlsx":
        df = pd.DataFrame(rows)
        if not df.empty:
            df["members"] = df["members"].map(lambda m: json.dumps(m, separators=(",", ":")))
            df["pattern"] = df["pattern"].map(lambda m: json.dumps(m, separators=(",", ":")))
        df.to_excel(path, index=False, sheet_name="journal")
    else:
        path.write_text(json.dumps(rows, sort_keys=True, separators=(",", ":")), encoding="utf-8")
    logger.info("exported %d entries of %s to %s", len(rows), journal, path)
    return len(rows)
