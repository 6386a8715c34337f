from conics.api.serializers import JournalEntrySerializer, SearchRunSerializer
from conics.search import STRATEGIES
from conics.selectors import journal_entries
from conics.services import run_search

from ._common import ConicsCommand


class Command(ConicsCommand):
    help = "Searches a configuration for large geometric conic sets and journals what it finds."

    def add_command_arguments(self, parser):
        parser.add_argument('config', help='configuration id')
        parser.add_argument('--budget', type=int, default=0, help='defect budget d')
        parser.add_argument('--strategy', choices=STRATEGIES, default='auto')
        parser.add_argument('--record-threshold', type=int, default=None, help='journal sets above this size')

    def run(self, *args, **opts):
        run, created = run_search(
            config_id=opts['config'],
            budget=opts['budget'],
            strategy=opts['strategy'],
            journal=opts['journal'],
            threads=opts['threads'],
            seed=opts['seed'],
            record_threshold=opts['record_threshold'],
        )
        entries = list(journal_entries(journal=run.journal, config_id=run.config_id))
        data = {
            "run": SearchRunSerializer(run).data,
            "new": created,
            "entries": JournalEntrySerializer(entries, many=True).data,
        }
        lines = [f"{run.config_id} (d = {run.budget}, {run.strategy}): {created} new entries in {run.journal}"]
        lines.extend(f"  |L| = {e.size}, rank {e.rank}, defect {e.defect}  {e.digest[:12]}" for e in entries)
        self.emit(opts, data, lines)
