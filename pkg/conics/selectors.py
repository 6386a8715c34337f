# conics/selectors.py
from __future__ import annotations

from django.db.models import Count, Max

from conics.configuration import ConicSet, load_configuration
from conics.errors import ConicsError
from conics.models import JournalEntry, SearchRun


def journal_entries(*, journal: str, config_id: str | None = None, min_size: int | None = None):
    qs = JournalEntry.objects.filter(journal=journal)
    if config_id is not None:
        qs = qs.filter(config_id=config_id)
    if min_size is not None:
        qs = qs.filter(size__gte=min_size)
    return qs.order_by("-size", "config_id", "digest")


def journal_rows(*, journal: str) -> list[dict]:
    """Plain rows for export, largest sets first."""
    return [
        {
            "config_id": e.config_id,
            "digest": e.digest,
            "size": e.size,
            "rank": e.rank,
            "defect": e.defect,
            "geometric": e.geometric,
            "members": e.members,
            "pattern": e.pattern,
        }
        for e in journal_entries(journal=journal)
    ]


def journal_summary(*, journal: str) -> list[dict]:
    """Per configuration: number of entries and the largest size."""
    qs = (
        JournalEntry.objects
        .filter(journal=journal)
        .values("config_id")
        .annotate(entries=Count("id"), largest=Max("size"))
        .order_by("config_id")
    )
    return list(qs)


def last_run(*, journal: str, config_id: str) -> SearchRun | None:
    return SearchRun.objects.filter(journal=journal, config_id=config_id).order_by("-created_at", "-id").first()


def conic_set_of(entry: JournalEntry) -> ConicSet:
    """Rebuilds the ConicSet of a journal entry inside its configuration."""
    config = load_configuration(entry.config_id)
    try:
        return config.from_vectors(entry.members)
    except ConicsError as exc:
        raise ConicsError(f"journal entry {entry.digest[:12]} does not belong to {entry.config_id}: {exc}") from exc


def entry_by_digest(*, journal: str, digest: str) -> JournalEntry:
    """Accepts any unique prefix of the digest."""
    matches = list(JournalEntry.objects.filter(journal=journal, digest__startswith=digest)[:2])
    if len(matches) != 1:
        raise ConicsError(f"{len(matches) or 'no'} journal entries match {digest!r} in {journal}")
    return matches[0]
