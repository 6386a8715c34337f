import json
from pathlib import Path

from conics.api.serializers import GraphSerializer
from conics.errors import ConicsError
from conics.fano import FanoGraph, are_isomorphic, aut_order, build_graph, graph_certificate
from conics.recipes import build_named, named_sets
from conics.selectors import conic_set_of, entry_by_digest

from ._common import ConicsCommand

JOURNAL_PREFIX = "journal:"


def load_graph(source: str, *, journal: str) -> FanoGraph:
    """A named set, journal:<digest>, or a .json/.txt graph file."""
    if source.startswith(JOURNAL_PREFIX):
        entry = entry_by_digest(journal=journal, digest=source[len(JOURNAL_PREFIX):])
        return build_graph(conic_set_of(entry))
    if source in named_sets():
        return build_graph(build_named(source))
    path = Path(source)
    if not path.is_file():
        raise ConicsError(f"{source!r} is neither a named set, a journal digest nor a file")
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".json":
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConicsError(f"{source}: {exc}") from exc
        serializer = GraphSerializer(data=payload)
        if not serializer.is_valid():
            raise ConicsError(f"{source}: {serializer.errors}")
        return FanoGraph.from_dict(serializer.validated_data)
    return FanoGraph.from_text(text)


class Command(ConicsCommand):
    help = "Fano graph operations: isomorphism test, automorphism order, export and import."

    def add_command_arguments(self, parser):
        parser.add_argument('op', choices=['iso', 'aut', 'export', 'import'])
        parser.add_argument('inputs', nargs='+')
        parser.add_argument('--output', default=None, help='export target')
        parser.add_argument('--format', choices=['json', 'text'], default='json')

    def run(self, *args, **opts):
        op = opts['op']
        graphs = [load_graph(s, journal=opts['journal']) for s in opts['inputs']]
        if op == 'iso':
            if len(graphs) != 2:
                raise ConicsError("iso takes exactly two graphs")
            same = are_isomorphic(*graphs)
            self.emit(opts, {"isomorphic": same}, ["isomorphic" if same else "not isomorphic"])
        elif op == 'aut':
            orders = [aut_order(G) for G in graphs]
            self.emit(
                opts,
                {"aut": dict(zip(opts['inputs'], orders))},
                [f"{s}: |Aut| = {o}" for s, o in zip(opts['inputs'], orders)],
            )
        elif op == 'export':
            if len(graphs) != 1 or not opts['output']:
                raise ConicsError("export takes one graph and --output")
            G = graphs[0]
            body = G.to_json() if opts['format'] == 'json' else G.to_text()
            Path(opts['output']).write_text(body, encoding="utf-8")
            self.emit(opts, {"n": G.n, "output": opts['output']}, [f"wrote {G.n} vertices to {opts['output']}"])
        else:
            rows = [
                {"input": s, "n": G.n, "edges": len(G.edges), "certificate": graph_certificate(G).certificate}
                for s, G in zip(opts['inputs'], graphs)
            ]
            self.emit(opts, {"graphs": rows}, [f"{r['input']}: {r['n']} vertices, {r['edges']} edges" for r in rows])
