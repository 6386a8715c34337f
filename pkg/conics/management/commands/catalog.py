from conics.api.serializers import CatalogEntrySerializer
from conics.niemeier import catalog, hbar_catalog
from conics.recipes import class_of, named_sets, recipe_catalog, unavailable_sets

from ._common import ConicsCommand


class Command(ConicsCommand):
    help = "Lists the Niemeier lattices, the named polarizations and the named conic sets."

    def add_command_arguments(self, parser):
        parser.add_argument('--kind', choices=['lattices', 'configs', 'sets', 'all'], default='all')

    def run(self, *args, **opts):
        kind = opts['kind']
        table = hbar_catalog()
        data = {}
        lines = []
        if kind in ('lattices', 'all'):
            data['lattices'] = catalog()
            lines.append("lattices: " + ", ".join(data['lattices']))
        if kind in ('configs', 'all'):
            rows = [
                {
                    "name": name,
                    "lattice": table[name].get("lattice", name.split("#")[0]),
                    "component_norms": table[name].get("component_norms", {}),
                    "replanted_from": table[name].get("replant"),
                }
                for name in sorted(table)
            ]
            data['configs'] = CatalogEntrySerializer(rows, many=True).data
            for r in rows:
                origin = f" (replanted from {r['replanted_from']})" if r['replanted_from'] else ""
                lines.append(f"{r['name']}: N({r['lattice']}){origin}")
        if kind in ('sets', 'all'):
            recipes = recipe_catalog()
            data['sets'] = [
                {"name": n, "config": recipes[n]["config"], "class": class_of(n)} for n in named_sets()
            ]
            lines.extend(f"{s['name']}: {s['class']} conics in {s['config']}" for s in data['sets'])
            data['unavailable'] = unavailable_sets()
            lines.extend(f"{name}: not shipped ({reason})" for name, reason in data['unavailable'].items())
        self.emit(opts, data, lines)
