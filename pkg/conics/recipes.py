"""
Named extremal conic sets, built from the constructions shipped in
data/recipes.json, and their verification against data/expectations.json.
"""
from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

import numpy as np

from conics.codes import build_golay, support
from conics.conf import get_setting
from conics.configuration import ConicSet, Configuration, is_admissible, is_geometric, load_configuration
from conics.embedding import transcendental_lattices
from conics.errors import ConicsError, InvariantViolation, UnavailableSetError, UnknownCatalogEntryError
from conics.fano import aut_order, build_graph, graph_certificate
from conics.niemeier import HbarRepresentative, NiemeierLattice, hbar as hbar_representative
from conics.reduction import MAX_REDUCIBLE, PolarizedDefinite, classify_irreducible, enumerate_fn, hyp

logger = logging.getLogger(__name__)


def _load(filename: str) -> dict:
    path = Path(get_setting("DATA_DIR")) / filename
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


@lru_cache(maxsize=None)
def recipe_catalog() -> dict:
    return _load("recipes.json")


@lru_cache(maxsize=None)
def expectations() -> dict:
    return _load("expectations.json")


def named_sets() -> list[str]:
    """The sets that can be built from the shipped data."""
    return sorted(name for name, recipe in recipe_catalog().items() if "unavailable" not in recipe)


def unavailable_sets() -> dict[str, str]:
    """Catalogued sets that cannot be built, with the reason."""
    return {name: recipe["unavailable"] for name, recipe in sorted(recipe_catalog().items()) if "unavailable" in recipe}


def class_of(name: str) -> str:
    for label, entry in expectations()["classes"].items():
        if name in entry["members"]:
            return label
    raise UnknownCatalogEntryError(name, recipe_catalog())


def expectation_for(name: str) -> dict:
    label = class_of(name)
    entry = dict(expectations()["classes"][label])
    entry.pop("members")
    entry["class"] = label
    return entry


# ---------- frames: the auxiliary points and sets a construction refers to ----------
@dataclass
class Frame:
    points: dict[str, int] = field(default_factory=dict)
    sets: dict[str, frozenset[int]] = field(default_factory=dict)


def _alpha(rep: HbarRepresentative) -> list[Fraction]:
    """hbar = sum alpha_k r_k over the A1 components."""
    N = rep.lattice
    den = math.isqrt(N.scale)
    return [Fraction(piece[0], den) for piece in N.split(rep.vector)]


def golay_frame(rep: HbarRepresentative) -> Frame:
    alpha = _alpha(rep)
    omega = frozenset(range(len(alpha)))
    supp = frozenset(k for k, a in enumerate(alpha) if a)
    heavy = sorted(k for k, a in enumerate(alpha) if a > 1)
    shape = rep.metadata.get("golay")
    points: dict[str, int] = {}
    if shape == "special-hexad":
        octads = [frozenset(support(w)) for w in build_golay().octads]
        O = next(o for o in octads if supp <= o)
        points["r1"], points["r2"] = sorted(O - supp)
    elif shape == "octad-pair":
        O = supp
        points["r1"], points["r2"] = heavy
        points["s"] = min(omega - O)
    elif shape == "sixteen-point":
        O = supp
        (points["r"],) = heavy
        points["s"], points["t"] = sorted(omega - O)[:2]
    else:
        raise ConicsError(f"{rep.name}: no named construction uses Golay shape {shape!r}")
    return Frame(points, {"O": O, "rest": omega - O})


def choose_word(frame: Frame, weight: int, meets: int, contains=(), avoids=()) -> frozenset[int]:
    """The first codeword, in code order, meeting O in `meets` points with the given incidences."""
    O = frame.sets["O"]
    inside = {frame.points[p] for p in contains}
    outside = {frame.points[p] for p in avoids}
    for w in build_golay().of_weight(weight):
        o = frozenset(support(w))
        if len(o & O) == meets and inside <= o and not (outside & o):
            return o
    raise InvariantViolation(f"no codeword of weight {weight} meeting O in {meets} points")


def _validate_word(frame: Frame, o: frozenset[int], constraints: dict) -> None:
    checks = [
        len(o) == constraints["weight"],
        len(o & frame.sets["O"]) == constraints["meets"],
        all(frame.points[p] in o for p in constraints.get("contains", ())),
        not any(frame.points[p] in o for p in constraints.get("avoids", ())),
    ]
    if not all(checks):
        raise InvariantViolation(f"codeword {sorted(o)} violates {constraints}")


# ---------- vectors in scaled ambient coordinates ----------
def _root(N: NiemeierLattice, k: int) -> np.ndarray:
    c = N.components[k]
    den = math.isqrt(N.scale)
    v = np.zeros(N.dim, dtype=np.int64)
    v[c.offset:c.offset + c.dim] = [den * x for x in c.simple_roots[0]]
    return v


def _perp_root(N: NiemeierLattice, hbar_vector, k: int) -> np.ndarray:
    """The first root e_i - e_j (i < j) of an A_n component orthogonal to hbar_k."""
    c = N.components[k]
    if c.kind != "A":
        raise ConicsError(f"component {c.label} is not of type A")
    den = math.isqrt(N.scale)
    piece = np.array(N.split(hbar_vector)[k], dtype=np.int64)
    for i in range(c.dim):
        for j in range(i + 1, c.dim):
            if piece[i] == piece[j]:
                v = np.zeros(N.dim, dtype=np.int64)
                v[c.offset + i], v[c.offset + j] = den, -den
                return v
    raise InvariantViolation(f"no root of {c.label} orthogonal to hbar")


def _codeword(N: NiemeierLattice, points) -> np.ndarray:
    v = sum((_root(N, k) for k in points), np.zeros(N.dim, dtype=np.int64))
    if (v % 2).any():
        raise InvariantViolation("half a root sum is not integral in these coordinates")
    return v // 2


def _term(rep: HbarRepresentative, frame: Frame, word: frozenset[int] | None, term: str) -> np.ndarray:
    N = rep.lattice
    kind, _, arg = term.partition(":")
    if kind == "hbar":
        return np.array(rep.vector, dtype=np.int64)
    if kind == "root":
        return _root(N, frame.points[arg])
    if kind == "perp_root":
        return _perp_root(N, rep.vector, frame.points[arg])
    if kind == "perp_root_sum":
        return sum((_perp_root(N, rep.vector, k) for k in range(len(N.components))), np.zeros(N.dim, dtype=np.int64))
    if kind == "cw":
        if arg == "o":
            if word is None:
                raise ConicsError("construction refers to a codeword it does not define")
            return _codeword(N, word)
        return _codeword(N, frame.sets[arg])
    raise ConicsError(f"unknown term {term!r}")


def component_frame(rep: HbarRepresentative) -> Frame:
    pieces = rep.lattice.split(rep.vector)
    free = [k for k, p in enumerate(pieces) if not any(p)]
    return Frame({"free": min(free)} if free else {})


# ---------- the Leech slice ----------
def leech_frame(rep: HbarRepresentative, vc: int, vd: int, va: int = 0, vb: int = 0) -> list[np.ndarray]:
    """
    Norm 4 vectors a, b, c, d, v with a + 2b = hbar, the Gram matrix of
    <a, b, c, d> as below and the given products of v with a, b, c, d:
        4 -2  1  1
       -2  4 -2  1
        1 -2  4 -2
        1  1 -2  4
    """
    N = rep.lattice
    s = N.scale
    S = N.shell(4)
    H = np.array(rep.vector, dtype=np.int64)
    even = ~((H[None, :] - S) % 2).any(axis=1)
    for ai in np.flatnonzero(even):
        a = S[ai]
        b = (H - a) // 2
        if b @ b != 4 * s or a @ b != -2 * s or not N.contains(b):
            continue
        Sa, Sb = S @ a, S @ b
        for c in S[(Sa == s) & (Sb == -2 * s)]:
            Sc = S @ c
            for d in S[(Sa == s) & (Sb == s) & (Sc == -2 * s)]:
                Sd = S @ d
                vs = S[(Sa == va * s) & (Sb == vb * s) & (Sc == vc * s) & (Sd == vd * s)]
                if len(vs):
                    return [a, b, c, d, vs[0]]
    raise InvariantViolation(f"{rep.name}: no embedding of V with v.(a, b, c, d) = ({va}, {vb}, {vc}, {vd})")


# ---------- building ----------
def _ambient_conics(config: Configuration) -> np.ndarray:
    return config.niemeier.from_coords(config.conics)


def leech_slice(config_name: str, va: int, vb: int, vc: int, vd: int, *, name: str = "") -> ConicSet:
    """F cap (Q hbar + V^perp), V = <a, b, c, d, v> embedded by leech_frame."""
    config = load_configuration(config_name)
    rep = hbar_representative(config_name)
    X = _ambient_conics(config)
    W = np.array(leech_frame(rep, vc, vd, va, vb))
    H = np.array(rep.vector, dtype=np.int64)
    lhs = int(H @ H) * (X @ W.T)
    rhs = np.outer(X @ H, W @ H)
    L = config.conic_set(np.flatnonzero((lhs == rhs).all(axis=1)))
    logger.info("%s: %d conics of %s", name or "slice", L.size, config.name)
    return L


def build_named(name: str) -> ConicSet:
    catalog = recipe_catalog()
    if name not in catalog:
        raise UnknownCatalogEntryError(name, catalog)
    recipe = catalog[name]
    if "unavailable" in recipe:
        raise UnavailableSetError(name, recipe["unavailable"])
    if "slice" in recipe:
        v = recipe["slice"]
        return leech_slice(recipe["config"], v.get("v.a", 0), v.get("v.b", 0), v["v.c"], v["v.d"], name=name)

    config = load_configuration(recipe["config"])
    rep = hbar_representative(recipe["config"])
    X = _ambient_conics(config)
    frame = golay_frame(rep) if "golay" in rep.metadata else component_frame(rep)
    word = None
    if "word" in recipe:
        constraints = recipe["word"]
        word = choose_word(frame, constraints["weight"], constraints["meets"], constraints.get("contains", ()), constraints.get("avoids", ()))
        _validate_word(frame, word, constraints)
    rows = [sum(coef * _term(rep, frame, word, t) for coef, t in combo) for combo in recipe["orthogonal"]]
    W = np.array(rows, dtype=np.int64)
    mask = ~(X @ W.T).any(axis=1)

    L = config.conic_set(np.flatnonzero(mask))
    logger.info("%s: %d conics of %s", name, L.size, config.name)
    return L


# ---------- verification ----------
@dataclass
class ModelReport:
    key: str
    type: str
    discr: int
    lines: int
    conics: int
    irreducible: int
    reducible: int
    transcendental: list[list[int]]

    def to_dict(self) -> dict:
        return {
            "type": self.type,
            "discr": self.discr,
            "lines": self.lines,
            "conics": self.conics,
            "irreducible": self.irreducible,
            "reducible": self.reducible,
            "transcendental": self.transcendental,
        }


@dataclass
class VerificationReport:
    name: str
    config: str
    size: int
    rank: int
    saturated: bool
    root_free: bool
    admissible: bool
    geometric: bool
    hyp: int
    discr_span: int
    certificate: str
    aut: int | None
    models: dict[str, ModelReport]
    expected: dict = field(default_factory=dict)

    @property
    def mismatches(self) -> list[str]:
        exp = self.expected
        out = []
        for key in ("size", "rank", "hyp", "discr_span", "aut"):
            if key in exp and getattr(self, key) is not None and getattr(self, key) != exp[key]:
                out.append(f"{key}: expected {exp[key]}, found {getattr(self, key)}")
        for flag in ("saturated", "root_free", "admissible", "geometric"):
            if not getattr(self, flag):
                out.append(f"{flag}: expected True, found False")
        for key, model in exp.get("models", {}).items():
            found = self.models.get(key)
            if found is None:
                out.append(f"model {key}: missing")
                continue
            for field_name, value in model.items():
                got = found.to_dict()[field_name]
                if got != value:
                    out.append(f"model {key} {field_name}: expected {value}, found {got}")
        for key, model in self.models.items():
            if model.reducible > MAX_REDUCIBLE:
                out.append(f"model {key}: {model.reducible} reducible conics")
        return out

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "config": self.config,
            "size": self.size,
            "rank": self.rank,
            "saturated": self.saturated,
            "root_free": self.root_free,
            "admissible": self.admissible,
            "geometric": self.geometric,
            "hyp": self.hyp,
            "discr_span": self.discr_span,
            "certificate": self.certificate,
            "aut": self.aut,
            "models": {k: m.to_dict() for k, m in sorted(self.models.items())},
            "mismatches": self.mismatches,
        }


def definite_model(L: ConicSet) -> PolarizedDefinite:
    """The span of L as a polarized definite lattice."""
    return PolarizedDefinite(L.span.lattice, L.hbar_in_span, L.config.degree)


def model_report(key: str, S: PolarizedDefinite, kappa=None) -> ModelReport:
    NS = hyp(S, kappa)
    lines = enumerate_fn(NS, 1)
    irreducible, reducible = classify_irreducible(NS)
    T = [list(t) for t in transcendental_lattices(NS.form)] if NS.rank == 20 else []
    return ModelReport(
        key, NS.type, NS.form.size, len(lines), len(irreducible) + len(reducible), len(irreducible), len(reducible), T,
    )


def verify_set(L: ConicSet, *, name: str = "", expected: dict | None = None, with_aut: bool = True) -> VerificationReport:
    saturated = L.is_saturated
    admissible = saturated and is_admissible(L)
    verdict = is_geometric(L)
    S = definite_model(L)
    models: dict[str, ModelReport] = {}
    if verdict.type_i.embeds is not False:
        models["0"] = model_report("0", S)
    passing = verdict.passing_kappas
    for i, kappa in enumerate(passing):
        key = "kappa" if len(passing) == 1 else f"kappa{i}"
        models[key] = model_report(key, S, kappa)
    graph = build_graph(L)
    report = VerificationReport(
        name=name or L.config.name,
        config=L.config.name,
        size=L.size,
        rank=L.rank,
        saturated=saturated,
        root_free=L.is_root_free,
        admissible=admissible,
        geometric=verdict.geometric,
        hyp=len(verdict.hyp),
        discr_span=L.span_form.size,
        certificate=graph_certificate(graph).certificate,
        aut=aut_order(graph) if with_aut else None,
        models=models,
        expected=dict(expected or {}),
    )
    logger.info("verified %s: %s", report.name, "ok" if report.passed else "; ".join(report.mismatches))
    return report


def verify_named(name: str, *, with_aut: bool = True) -> VerificationReport:
    return verify_set(build_named(name), name=name, expected=expectation_for(name), with_aut=with_aut)


def class_mismatches(reports: list[VerificationReport]) -> list[str]:
    """Sets of one class must have isomorphic Fano graphs."""
    out = []
    by_class: dict[str, list[VerificationReport]] = {}
    for r in reports:
        by_class.setdefault(r.expected.get("class", r.name), []).append(r)
    for label, group in sorted(by_class.items()):
        certificates = {r.certificate for r in group}
        if len(certificates) > 1:
            out.append(f"class {label}: {len(certificates)} distinct graphs among {[r.name for r in group]}")
    return out
