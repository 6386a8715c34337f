from conics.api.serializers import ConfigurationSerializer
from conics.bounds import compute_bounds
from conics.configuration import load_configuration
from conics.recipes import expectations
from conics.symmetry import decompose_orbits

from ._common import ConicsCommand


def _compare(row: dict, expected: dict) -> list[str]:
    keys = {"conics": "conics", "rank": "rank", "stabilizer": "stabilizer_order", "roots": "roots"}
    out = []
    for key, field in keys.items():
        if key in expected and row[field] is not None and row[field] != expected[key]:
            out.append(f"{row['name']} {key}: expected {expected[key]}, found {row[field]}")
    return out


class Command(ConicsCommand):
    help = "Enumerates the prospective conics of a configuration and splits them into orbits."

    def add_command_arguments(self, parser):
        parser.add_argument('config', help='configuration id, e.g. 24A1#4')
        parser.add_argument('--reflection-only', action='store_true', help='skip the lifted stabilizer')
        parser.add_argument('--bounds', action='store_true', help='also compute the orbit bounds')

    def run(self, *args, **opts):
        config = load_configuration(opts['config'])
        decomp = decompose_orbits(config, reflection_only=opts['reflection_only'])
        total = None
        if opts['bounds']:
            compute_bounds(decomp)
            total = decomp.bnd_total(range(len(decomp.combinatorial)))
        row = {
            "name": config.name,
            "lattice": config.niemeier.name if config.niemeier is not None else "",
            "conics": config.size,
            "rank": config.rank,
            "roots": len(config.roots),
            "combinatorial_orbits": [len(o) for o in decomp.combinatorial],
            "orbits": len(decomp.orbits),
            "stabilizer_order": decomp.stabilizer_order,
            "bnd_total": total,
        }
        data = ConfigurationSerializer(row).data
        lines = [
            f"{row['name']} in N({row['lattice']})",
            f"  |F| = {row['conics']}, rank {row['rank']}, {row['roots']} roots",
            f"  {len(row['combinatorial_orbits'])} combinatorial orbits: {row['combinatorial_orbits']}",
            f"  {row['orbits']} orbits, |stab hbar| = {row['stabilizer_order']}",
        ]
        if total is not None:
            lines.append(f"  bnd = {total}")
        self.emit(opts, data, lines)
        problems = _compare(row, expectations()["configurations"].get(config.name, {}))
        if problems:
            self.mismatch(problems)
