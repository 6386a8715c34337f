"""Glue codes: the extended binary Golay code and the ternary Golay code."""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

# [I_12 | B] generates the extended binary Golay code
GOLAY_B = np.array([
    [1, 1, 0, 1, 1, 1, 0, 0, 0, 1, 0, 1],
    [1, 0, 1, 1, 1, 0, 0, 0, 1, 0, 1, 1],
    [0, 1, 1, 1, 0, 0, 0, 1, 0, 1, 1, 1],
    [1, 1, 1, 0, 0, 0, 1, 0, 1, 1, 0, 1],
    [1, 1, 0, 0, 0, 1, 0, 1, 1, 0, 1, 1],
    [1, 0, 0, 0, 1, 0, 1, 1, 0, 1, 1, 1],
    [0, 0, 0, 1, 0, 1, 1, 0, 1, 1, 1, 1],
    [0, 0, 1, 0, 1, 1, 0, 1, 1, 1, 0, 1],
    [0, 1, 0, 1, 1, 0, 1, 1, 1, 0, 0, 1],
    [1, 0, 1, 1, 0, 1, 1, 1, 0, 0, 0, 1],
    [0, 1, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1],
    [1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0],
], dtype=np.int64)

# [I_6 | A] generates the ternary Golay code
TERNARY_A = np.array([
    [0, 1, 1, 1, 1, 1],
    [1, 0, 1, 2, 2, 1],
    [1, 1, 0, 1, 2, 2],
    [1, 2, 1, 0, 1, 2],
    [1, 2, 2, 1, 0, 1],
    [1, 1, 2, 2, 1, 0],
], dtype=np.int64)


def span_mod(generators, q: int) -> np.ndarray:
    """All F_q-combinations of the generator rows, deduplicated and sorted."""
    G = np.array(generators, dtype=np.int64) % q
    if G.size == 0:
        return np.zeros((1, 0), dtype=np.int64)
    msgs = np.array(list(itertools.product(range(q), repeat=len(G))), dtype=np.int64)
    words = msgs.dot(G) % q
    return np.unique(words, axis=0)


def mask(word) -> int:
    return sum(1 << i for i, a in enumerate(word) if a)


def support(m: int) -> tuple[int, ...]:
    return tuple(i for i in range(m.bit_length()) if m >> i & 1)


@dataclass(frozen=True)
class GolayCode:
    """The extended binary Golay code C24, codewords as 24-bit masks."""

    words: tuple[int, ...]
    length: int = 24

    @cached_property
    def word_set(self) -> frozenset[int]:
        return frozenset(self.words)

    @cached_property
    def weight_distribution(self) -> dict[int, int]:
        return dict(sorted(Counter(bin(w).count("1") for w in self.words).items()))

    def of_weight(self, weight: int) -> list[int]:
        return [w for w in self.words if bin(w).count("1") == weight]

    @cached_property
    def octads(self) -> list[int]:
        return self.of_weight(8)

    @cached_property
    def dodecads(self) -> list[int]:
        return self.of_weight(12)

    @property
    def universe(self) -> int:
        return (1 << self.length) - 1

    def __contains__(self, m: int) -> bool:
        return m in self.word_set

    def as_vectors(self) -> np.ndarray:
        return np.array([[w >> i & 1 for i in range(self.length)] for w in self.words], dtype=np.int64)


@dataclass(frozen=True)
class TernaryCode:
    words: tuple[tuple[int, ...], ...]

    @cached_property
    def weight_distribution(self) -> dict[int, int]:
        return dict(sorted(Counter(sum(1 for a in w if a) for w in self.words).items()))


@lru_cache(maxsize=None)
def build_golay() -> GolayCode:
    G = np.hstack([np.eye(12, dtype=np.int64), GOLAY_B])
    words = span_mod(G, 2)
    return GolayCode(tuple(sorted(mask(w) for w in words)))


@lru_cache(maxsize=None)
def build_ternary_golay() -> TernaryCode:
    G = np.hstack([np.eye(6, dtype=np.int64), TERNARY_A])
    return TernaryCode(tuple(tuple(int(a) for a in w) for w in span_mod(G, 3)))
