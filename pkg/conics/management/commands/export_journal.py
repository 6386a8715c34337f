from conics.selectors import journal_summary
from conics.services import export_journal

from ._common import ConicsCommand


class Command(ConicsCommand):
    help = "Writes a journal to a JSON file, or to a spreadsheet for .xlsx paths."

    def add_command_arguments(self, parser):
        parser.add_argument('path')

    def run(self, *args, **opts):
        count = export_journal(journal=opts['journal'], path=opts['path'])
        summary = journal_summary(journal=opts['journal'])
        lines = [f"wrote {count} entries to {opts['path']}"]
        lines.extend(f"  {s['config_id']}: {s['entries']} entries, largest {s['largest']}" for s in summary)
        self.emit(opts, {"path": str(opts['path']), "entries": count, "summary": summary}, lines)
