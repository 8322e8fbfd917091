"""Exact polychromatic colorability and the hereditary thresholds m_k."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional

import numpy as np

from . import kernels
from .hypergraph import Hypergraph, UnsupportedSize, heavy_restriction, members

BRUTE_FORCE_LIMIT = 10**8
MAX_SCAN_VERTICES = 20


@dataclass(frozen=True)
class Coloring:
    colors: tuple[int, ...]
    k: int

    def __post_init__(self):
        if any(not 0 <= c < self.k for c in self.colors):
            raise ValueError("color out of range")

    @property
    def n(self):
        return len(self.colors)

    def class_mask(self, c: int) -> int:
        return sum(1 << v for v, col in enumerate(self.colors) if col == c)

    def classes(self) -> list[list[int]]:
        return [members(self.class_mask(c)) for c in range(self.k)]

    def is_polychromatic(self, h: Hypergraph) -> bool:
        if h.n != self.n:
            return False
        masks = [self.class_mask(c) for c in range(self.k)]
        return all(e & cm for e in h.edges for cm in masks)


@dataclass(frozen=True)
class ColorabilityResult:
    colorable: bool
    witness: Optional[Coloring] = None

    def __bool__(self):
        return self.colorable


@dataclass(frozen=True)
class HeavyThreshold:
    """Least m such that every m-heavy restriction is k-colorable.

    ``value`` is None only when no m up to ``upper`` passes, which cannot
    happen for a finite generator. ``witness_set``/``witness`` describe the
    least failing X at ``value - 1`` when that level fails.
    """

    k: int
    value: Optional[int]
    upper: int
    witness_set: Optional[int] = None
    witness: Optional[Hypergraph] = None

    @property
    def finite(self):
        return self.value is not None


def _check_k(k):
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")


def is_poly_colorable(h: Hypergraph, k: int) -> ColorabilityResult:
    """Decide whether some k-coloring puts every color in every edge."""
    _check_k(k)
    colors = np.empty(max(h.n, 1), np.int64)
    ok = kernels.poly_colorable(h.n, k, h.edge_array(), colors)
    if not ok:
        return ColorabilityResult(False)
    return ColorabilityResult(True, Coloring(tuple(int(c) for c in colors[: h.n]), k))


def is_property_b(h: Hypergraph) -> ColorabilityResult:
    return is_poly_colorable(h, 2)


def _class_mask_table(vertices: list[int], k: int) -> list[np.ndarray]:
    """Per color, the class masks of every coloring of ``vertices`` in lex order."""
    cms = [np.zeros(1, np.int64) for _ in range(k)]
    for v in reversed(vertices):
        bit = np.int64(1 << v)
        cms = [np.concatenate([cm | bit if a == c else cm for a in range(k)]) for c, cm in enumerate(cms)]
    return cms


def brute_force_poly(h: Hypergraph, k: int) -> ColorabilityResult:
    """Scan all k**n colorings in lexicographic order (vertex 0 most significant).

    Independent of the backtracking kernel; used to cross-check it.
    """
    _check_k(k)
    n = h.n
    if k**n > BRUTE_FORCE_LIMIT:
        raise UnsupportedSize(f"{k}**{n} colorings exceeds {BRUTE_FORCE_LIMIT}")
    edges = [int(e) for e in h.edges]
    if any(e == 0 for e in edges):
        return ColorabilityResult(False)
    split = n
    while split > 0 and k ** (n - split + 1) <= 1 << 18:
        split -= 1
    suffix = _class_mask_table(list(range(split, n)), k)
    for prefix in product(range(k), repeat=split):
        pre = [sum(1 << v for v in range(split) if prefix[v] == c) for c in range(k)]
        cms = [cm | np.int64(pm) for cm, pm in zip(suffix, pre)]
        ok = np.ones(cms[0].shape[0], dtype=bool)
        for e in edges:
            for cm in cms:
                ok &= (cm & e) != 0
        hits = np.flatnonzero(ok)
        if hits.size:
            i = int(hits[0])
            colors = [0] * n
            for v in range(split):
                colors[v] = prefix[v]
            for v in range(split, n):
                colors[v] = next(c for c in range(k) if (int(cms[c][i]) >> v) & 1)
            return ColorabilityResult(True, Coloring(tuple(colors), k))
    return ColorabilityResult(False)


def first_failing_restriction(h: Hypergraph, k: int, m: int) -> Optional[int]:
    """Least X (as a mask) whose m-heavy restriction has no polychromatic k-coloring."""
    _check_k(k)
    if m < 1:
        raise ValueError("m must be positive")
    if h.n > MAX_SCAN_VERTICES:
        raise UnsupportedSize(f"restriction scan supports n <= {MAX_SCAN_VERTICES}")
    x = kernels.first_failing_restriction(h.n, k, m, h.edge_array(), 0)
    return None if x < 0 else int(x)


def all_heavy_restrictions_colorable(h: Hypergraph, m: int, k: int) -> bool:
    return first_failing_restriction(h, k, m) is None


def min_heavy_poly(h: Hypergraph, k: int) -> HeavyThreshold:
    """m_k of the hereditary family generated by ``h``.

    Polychromatic colorability survives edge deletion, so checking the
    maximal m-heavy restriction on each X covers every restricted
    subhypergraph. The level ``max edge size + 1`` passes vacuously.
    """
    _check_k(k)
    top = h.max_edge_size() + 1
    prev = None
    for m in range(1, top + 1):
        x = first_failing_restriction(h, k, m)
        if x is None:
            if prev is None:
                return HeavyThreshold(k, m, top)
            return HeavyThreshold(k, m, top, prev, heavy_restriction(h, prev, m - 1))
        prev = x
    return HeavyThreshold(k, None, top)


def check_threshold(h: Hypergraph, t: HeavyThreshold) -> bool:
    """Re-verify a threshold from scratch: witness fails at value-1, level value passes."""
    if not t.finite:
        return False
    if not all_heavy_restrictions_colorable(h, t.value, t.k):
        return False
    if t.witness_set is None:
        return t.value == 1
    r = heavy_restriction(h, t.witness_set, t.value - 1)
    return r == t.witness and not brute_or_solver(r, t.k)


def brute_or_solver(h: Hypergraph, k: int) -> bool:
    if k ** h.n <= BRUTE_FORCE_LIMIT // 100:
        return brute_force_poly(h, k).colorable
    return is_poly_colorable(h, k).colorable
