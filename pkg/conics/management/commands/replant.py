import math

import numpy as np

from conics.niemeier import candidates, hbar, hbar_catalog, replant

from ._common import ConicsCommand


def _at_scale(rows: np.ndarray, factor: int) -> set[tuple[int, ...]]:
    return {tuple(int(v) for v in factor * r) for r in rows}


class Command(ConicsCommand):
    help = "Replants a configuration to the other unimodular extension of span(F)."

    def add_command_arguments(self, parser):
        parser.add_argument('config', help='configuration id, e.g. 6D4#1')

    def run(self, *args, **opts):
        rep = hbar(opts['config'])
        N, h = rep.lattice, rep.vector
        M, h2 = replant(N, h, name=f"{N.name}'")
        # rows of N at scale s and of M at scale s' agree when 2X = factor Y
        factor = math.isqrt(4 * N.scale // M.scale)
        before = candidates(N, h)
        after = candidates(M, h2)
        preserved = _at_scale(before, 2) == _at_scale(after, factor)
        back, h3 = replant(M, h2, name=N.name)
        m = math.lcm(N.scale, back.scale)
        involutive = N.same_lattice(back) and (
            _at_scale(np.array([h]), math.isqrt(m // N.scale)) == _at_scale(np.array([h3]), math.isqrt(m // back.scale))
        )
        table = hbar_catalog()
        links = sorted(k for k, v in table.items() if v.get("replant") == rep.name)
        data = {
            "config": rep.name,
            "lattice": N.name,
            "roots": len(M.roots()),
            "conics_before": len(before),
            "conics_after": len(after),
            "preserved": preserved,
            "involutive": involutive,
            "catalog": links,
        }
        lines = [
            f"{rep.name}: N({N.name}) replanted, {data['roots']} roots",
            f"  |F| = {len(before)} -> {len(after)}, preserved setwise: {preserved}",
            f"  replanting twice returns N: {involutive}",
        ]
        if links:
            lines.append(f"  catalog: {', '.join(links)}")
        self.emit(opts, data, lines)
        problems = [
            f"{k}: expected {table[k]['roots']} roots, found {data['roots']}"
            for k in links
            if "roots" in table[k] and table[k]["roots"] != data["roots"]
        ]
        if not preserved:
            problems.append(f"{rep.name}: F is not preserved by replanting")
        if not involutive:
            problems.append(f"{rep.name}: replanting twice does not return N")
        if problems:
            self.mismatch(problems)
