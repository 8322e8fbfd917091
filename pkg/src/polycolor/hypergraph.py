"""Hypergraphs over at most 64 vertices, with edges stored as integer bitmasks.

Vertex ``v`` (0-indexed) of a vertex set corresponds to bit ``v`` of its mask.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import kernels

MAX_VERTICES = 64
MAX_CANONICAL_VERTICES = 12


class UnsupportedSize(ValueError):
    """Input is outside the size range an exact routine is designed for."""


def vset(vertices: Iterable[int]) -> int:
    """Bitmask of an iterable of 0-indexed vertices."""
    mask = 0
    for v in vertices:
        if v < 0:
            raise ValueError(f"negative vertex {v}")
        mask |= 1 << v
    return mask


def members(mask: int) -> list[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


def size(mask: int) -> int:
    return mask.bit_count()


def full(n: int) -> int:
    return (1 << n) - 1


def compress(mask: int, x: int) -> int:
    """Re-index ``mask & x`` onto ``0..|x|-1`` in increasing vertex order."""
    out = 0
    i = 0
    for v in members(x):
        if (mask >> v) & 1:
            out |= 1 << i
        i += 1
    return out


@dataclass(frozen=True)
class Hypergraph:
    """``n`` vertices and a set of edges, kept as a sorted tuple of masks."""

    n: int
    edges: tuple[int, ...] = ()

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise UnsupportedSize(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        edges = tuple(sorted(set(int(e) for e in self.edges)))
        bound = full(self.n)
        for e in edges:
            if e < 0 or e & ~bound:
                raise ValueError(f"edge {members(e)} not within {self.n} vertices")
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]]) -> "Hypergraph":
        return cls(n, tuple(vset(s) for s in sets))

    @property
    def vertex_mask(self) -> int:
        return full(self.n)

    def edge_sets(self) -> list[list[int]]:
        return [members(e) for e in self.edges]

    def edge_sizes(self) -> list[int]:
        return [size(e) for e in self.edges]

    def max_edge_size(self) -> int:
        return max(self.edge_sizes(), default=0)

    def degree(self, v: int) -> int:
        return sum((e >> v) & 1 for e in self.edges)

    def relabel(self, perm) -> "Hypergraph":
        """Image under the vertex map ``v -> perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("perm must be a permutation of range(n)")
        return Hypergraph(self.n, tuple(vset(perm[v] for v in members(e)) for e in self.edges))

    def without_edge(self, e: int) -> "Hypergraph":
        return Hypergraph(self.n, tuple(f for f in self.edges if f != e))

    def with_edges(self, extra: Iterable[int]) -> "Hypergraph":
        return Hypergraph(self.n, self.edges + tuple(extra))

    def edge_array(self) -> np.ndarray:
        return masks_to_array(self.edges)

    def __len__(self):
        return len(self.edges)


def masks_to_array(masks) -> np.ndarray:
    # masks using bit 63 go through uint64 so they keep their bit pattern
    return np.array([int(e) for e in masks], dtype=np.uint64).view(np.int64)


def _check_subset(h: Hypergraph, x: int):
    if x < 0 or x & ~h.vertex_mask:
        raise ValueError(f"vertex set {members(x)} not within {h.n} vertices")


def trace(h: Hypergraph, x: int) -> Hypergraph:
    """The trace ``{e & x}`` re-indexed onto ``|x|`` vertices; the empty edge is kept."""
    _check_subset(h, x)
    return Hypergraph(size(x), tuple(compress(e, x) for e in h.edges))


def heavy_restriction(h: Hypergraph, x: int, m: int) -> Hypergraph:
    """The largest m-heavy restricted subhypergraph on ``x``."""
    if m < 1:
        raise ValueError("m must be positive")
    _check_subset(h, x)
    return Hypergraph(size(x), tuple(compress(e, x) for e in h.edges if size(e & x) >= m))


def is_m_heavy(h: Hypergraph, m: int) -> bool:
    return all(size(e) >= m for e in h.edges)


def is_m_uniform(h: Hypergraph, m: int) -> bool:
    return all(size(e) == m for e in h.edges)


CanonicalForm = tuple  # (n, sorted relabeled edge masks)


def canonical_form(h: Hypergraph) -> CanonicalForm:
    """Least sorted edge-mask tuple over all vertex relabelings, prefixed by ``n``."""
    if h.n > MAX_CANONICAL_VERTICES:
        raise UnsupportedSize(f"canonical form supports n <= {MAX_CANONICAL_VERTICES}")
    if not h.edges or h.n == 0:
        return (h.n, h.edges)
    best = kernels.canonical_edges(h.n, h.edge_array())
    return (h.n, tuple(int(e) for e in best))


def complete_uniform(n: int, t: int) -> Hypergraph:
    """``K_n^{(t)}``: all t-subsets of n vertices."""
    from itertools import combinations

    return Hypergraph.from_sets(n, combinations(range(n), t))


def powerset_hypergraph(n: int) -> Hypergraph:
    return Hypergraph(n, tuple(range(1 << n)))
