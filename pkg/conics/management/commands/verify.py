from conics.api.serializers import VerificationSerializer
from conics.errors import ConicsError
from conics.recipes import class_mismatches, named_sets, unavailable_sets, verify_named

from ._common import ConicsCommand


class Command(ConicsCommand):
    help = "Builds named conic sets and checks them against the shipped expectations."

    def add_command_arguments(self, parser):
        parser.add_argument('names', nargs='*', help='named sets, e.g. Lmax1 Lsub3')
        parser.add_argument('--all', action='store_true', help='every named set')
        parser.add_argument('--skip-aut', action='store_true', help='skip the automorphism group order')

    def run(self, *args, **opts):
        names = named_sets() if opts['all'] else opts['names']
        if not names:
            raise ConicsError("nothing to verify: give set names or --all")
        skipped = unavailable_sets() if opts['all'] else {}
        reports = [verify_named(name, with_aut=not opts['skip_aut']) for name in names]

        rows = [r.to_dict() for r in reports]
        lines = []
        for r in reports:
            aut = f", |Aut| = {r.aut}" if r.aut is not None else ""
            lines.append(
                f"{r.name} ({r.config}): |L| = {r.size}, rank {r.rank}, hyp {r.hyp}, "
                f"discr {r.discr_span}{aut}  {'ok' if r.passed else 'FAILED'}"
            )
            for key, m in sorted(r.models.items()):
                lines.append(
                    f"  {key}: type {m.type}, discr {m.discr}, {m.lines} lines, "
                    f"{m.irreducible} + {m.reducible} conics"
                )
        for name, reason in skipped.items():
            lines.append(f"{name}: skipped, {reason}")
        problems = [f"{r.name}: {p}" for r in reports for p in r.mismatches] + class_mismatches(reports)
        self.emit(
            opts,
            {"sets": VerificationSerializer(rows, many=True).data, "skipped": skipped, "mismatches": problems},
            lines,
        )
        if problems:
            self.mismatch(problems)
