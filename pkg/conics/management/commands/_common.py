import logging

from django.core.management.base import BaseCommand, CommandError

from conics.api.serializers import canonical_json
from conics.errors import ConicsError

logger = logging.getLogger("conics.commands")

INPUT_ERROR = 2
MISMATCH = 1


class ConicsCommand(BaseCommand):
    """Shared flags; ConicsError becomes an input error (exit 2)."""

    def add_arguments(self, parser):
        parser.add_argument('--json', action='store_true', dest='as_json', help='machine-readable output')
        parser.add_argument('--journal', default='default', help='journal name')
        parser.add_argument('--threads', type=int, default=1)
        parser.add_argument('--seed', type=int, default=None, help='exploration order only')
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def handle(self, *args, **opts):
        if opts['threads'] < 1:
            raise CommandError("--threads must be positive", returncode=INPUT_ERROR)
        try:
            return self.run(*args, **opts)
        except CommandError:
            raise
        except ConicsError as exc:
            raise CommandError(str(exc), returncode=INPUT_ERROR) from exc
        except Exception as exc:
            logger.exception("%s failed", self.__class__.__module__)
            raise CommandError(f"unexpected error: {exc}", returncode=INPUT_ERROR) from exc

    def run(self, *args, **opts):
        raise NotImplementedError

    def emit(self, opts, data, lines=()):
        if opts['as_json']:
            self.stdout.write(canonical_json(data))
        else:
            for line in lines:
                self.stdout.write(line)

    def mismatch(self, problems):
        for p in problems:
            self.stderr.write(p)
        raise CommandError(f"{len(problems)} expectation(s) failed", returncode=MISMATCH)
