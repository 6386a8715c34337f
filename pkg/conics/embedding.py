"""
Existence tests for primitive embeddings, in terms of discriminant forms:
definite spans into the K3 lattice (through hyp), S(NS, h) into Niemeier
lattices, and the genus of the transcendental lattice.
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from conics import linalg
from conics.discriminant import (
    Element,
    FiniteQuadraticForm,
    is_characteristic,
    is_isomorphic,
    is_odd,
    is_unit_square,
    reduce_extension,
    scaled_determinant,
    two_torsion,
    unit_class,
    unit_of,
)
from conics.errors import NotInHypError

logger = logging.getLogger(__name__)

K3_RANK = 22
NIEMEIER_RANK = 24


# ---------- Hyp ----------
def hyp_elements(form: FiniteQuadraticForm, gram, hbar: Sequence[int]) -> list[Element]:
    """
    Elements kappa of the 2-part with 2 kappa = 0, q(kappa) = 3/2 and
    kappa . hbar = 0 mod 4, in lexicographic order.
    """
    G = linalg.int_matrix(gram)
    Gh = G.dot(np.array([int(x) for x in hbar], dtype=object))
    gens = two_torsion(form)
    out = []
    for coeffs in itertools.product((0, 1), repeat=len(gens)):
        x = form.zero()
        for c, t in zip(coeffs, gens):
            if c:
                x = form.add(x, t)
        if not any(x) or form.q(x) != Fraction(3, 2):
            continue
        if Fraction(sum(a * b for a, b in zip(form.lift(x), Gh))) % 4 != 0:
            continue
        out.append(x)
    return sorted(out)


@dataclass
class EmbeddingVerdict:
    embeds: bool | None
    reasons: list[str] = field(default_factory=list)

    @property
    def ambiguous(self) -> bool:
        return self.embeds is None


def _odd_prime_conditions(form: FiniteQuadraticForm, r: int, reasons: list[str]) -> bool:
    ok = True
    for p in form.primes:
        if p == 2:
            continue
        ell = form.p_part(p).rank
        if ell > K3_RANK - r:
            reasons.append(f"l_{p} = {ell} > {K3_RANK - r}")
            ok = False
        elif ell == K3_RANK - r:
            u = scaled_determinant(form, p, negate=True)
            if not is_unit_square(u / 2, p):
                reasons.append(f"|S| det_{p}(-S) is not 2 mod squares")
                ok = False
    return ok


def _kappa_perp_verdict(form: FiniteQuadraticForm, kappa: Element) -> bool | None:
    """
    1/2 |S| det_2(kappa^perp) = +-3 mod squares. When kappa^perp is odd the
    determinant depends on the lift; all lifts are tried and None is returned
    if they disagree.
    """
    F2 = form.p_part(2)
    idx = form.p_indices(2)
    k2 = tuple(kappa[i] for i in idx)
    perp, _ = F2.subquotient(F2.orthogonal([k2]))
    factor = Fraction(form.size, perp.size) / 2
    if not is_odd(perp):
        return unit_class(factor * unit_of(perp), 2) in (3, 5)
    k = perp.rank
    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    verdicts = set()
    for qs in itertools.product((0, 2), repeat=k):
        for bs in itertools.product((0, 1), repeat=len(pairs)):
            u = factor * unit_of(perp, q_shift=qs, b_shift=dict(zip(pairs, bs)))
            verdicts.add(unit_class(u, 2) in (3, 5))
            if len(verdicts) > 1:
                logger.warning("det_2 of an odd kappa-perp depends on the lift; verdict ambiguous")
                return None
    return verdicts.pop()


def embeds_in_K3_lattice(
    form: FiniteQuadraticForm,
    rank: int,
    kappa: Element | None = None,
    *,
    hyp: Sequence[Element] | None = None,
) -> EmbeddingVerdict:
    """
    Whether hyp_kappa of a definite span with discriminant form `form` and
    rank `rank` embeds primitively into the K3 lattice.
    """
    if kappa is not None and hyp is not None and tuple(kappa) not in {tuple(x) for x in hyp}:
        raise NotInHypError()
    reasons: list[str] = []
    r = rank
    if r > 20:
        return EmbeddingVerdict(False, [f"rank {r} > 20"])
    ok = _odd_prime_conditions(form, r, reasons)
    ell2 = form.p_part(2).rank
    if kappa is None:
        if ell2 > K3_RANK - r:
            reasons.append(f"l_2 = {ell2} > {K3_RANK - r}")
            ok = False
        return EmbeddingVerdict(ok, reasons)

    if not ok:
        return EmbeddingVerdict(False, reasons)
    if ell2 <= K3_RANK - r:
        return EmbeddingVerdict(True, reasons)
    if ell2 != K3_RANK + 2 - r:
        return EmbeddingVerdict(False, reasons + [f"l_2 = {ell2}: neither <= {K3_RANK - r} nor = {K3_RANK + 2 - r}"])
    idx = form.p_indices(2)
    F2 = form.p_part(2)
    if not is_characteristic(F2, tuple(kappa[i] for i in idx)):
        return EmbeddingVerdict(True, reasons + ["kappa is not characteristic"])
    verdict = _kappa_perp_verdict(form, kappa)
    if verdict is None:
        return EmbeddingVerdict(None, reasons + ["det_2(kappa-perp) undetermined"])
    if not verdict:
        reasons.append("1/2 |S| det_2(kappa-perp) is not +-3")
    return EmbeddingVerdict(verdict, reasons)


# ---------- Niemeier ----------
def _niemeier_obstructions(form: FiniteQuadraticForm, rank: int) -> list[int]:
    """Primes at which the genus test for an embedding into a Niemeier lattice fails."""
    bad = []
    for p in form.primes:
        ell = form.p_part(p).rank
        room = NIEMEIER_RANK - rank
        if ell < room:
            continue
        if ell > room:
            bad.append(p)
            continue
        u = scaled_determinant(form, p, negate=True)
        if p == 2:
            if u is None:
                continue
            if unit_class(u, 2) not in (1, 7):
                bad.append(p)
        elif not is_unit_square(u, p):
            bad.append(p)
    return bad


def embeds_in_niemeier(form: FiniteQuadraticForm, rank: int, *, variant: str = "S") -> bool:
    """
    variant "S" tests S itself; "S+A1" tests S + A_1, passing to a finite index
    extension when a prime obstructs.
    """
    if variant == "S+A1":
        a1 = FiniteQuadraticForm((2,), (Fraction(1, 2),), ((Fraction(0),),))
        form, rank = form.direct_sum(a1), rank + 1
    elif variant != "S":
        raise ValueError(f"unknown variant {variant!r}")
    if rank > NIEMEIER_RANK:
        return False
    bad = _niemeier_obstructions(form, rank)
    if not bad:
        return True
    if variant == "S":
        return False
    reduced = reduce_extension(form).form
    return not _niemeier_obstructions(reduced, rank)


# ---------- transcendental lattices ----------
def reduced_binary_forms(det: int) -> list[tuple[int, int, int]]:
    """Reduced even positive forms [a, b, c] with ac - b^2 = det, |2b| <= a <= c, b >= 0."""
    out = []
    a = 2
    while 3 * a * a <= 4 * det:
        for b in range(0, a // 2 + 1):
            num = det + b * b
            if num % a:
                continue
            c = num // a
            if c % 2 or c < a:
                continue
            out.append((a, b, c))
        a += 2
    return out


def transcendental_lattices(ns_form: FiniteQuadraticForm) -> list[tuple[int, int, int]]:
    """Rank-2 positive even lattices T with discr T = -discr NS (the genus of T)."""
    target = ns_form.negated()
    return [
        (a, b, c)
        for a, b, c in reduced_binary_forms(ns_form.size)
        if is_isomorphic(FiniteQuadraticForm.from_gram([[a, b], [b, c]]), target)
    ]
