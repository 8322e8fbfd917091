"""Constructions and exhaustive searches around the 8-vertex counterexample."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, partial
from itertools import combinations
from math import comb
from typing import Optional

import numpy as np

from . import kernels
from .certificate import SearchCertificate, SearchSpec, run_chunks
from .colorability import (
    all_heavy_restrictions_colorable,
    is_poly_colorable,
    min_heavy_poly,
)
from .hypergraph import Hypergraph, UnsupportedSize, canonical_form, masks_to_array, vset
from .structure import misses_all_sets

# 1-indexed, in the published order
PAPER_EDGES = (
    (4, 5, 6, 7, 8),
    (2, 3, 5, 6, 8),
    (2, 3, 4, 7, 8),
    (1, 3, 5, 7, 8),
    (1, 3, 4, 6, 8),
    (1, 2, 6, 7, 8),
    (1, 2, 4, 5, 8),
    (3, 4, 5, 6, 7),
    (1, 2, 4, 5, 7),
    (1, 2, 3, 5, 6),
    (2, 3, 4, 6, 7),
)
PAPER_EXTRA_EDGES = PAPER_EDGES[7:]

# lines of the Fano plane on 1..7, ordered to match the first seven edges
FANO_LINES = (
    (1, 2, 3),
    (1, 4, 7),
    (1, 5, 6),
    (2, 4, 6),
    (2, 5, 7),
    (3, 6, 7),
    (3, 4, 5),
)


def _labels_mask(labels) -> int:
    return vset(v - 1 for v in labels)


def fano_plane() -> Hypergraph:
    return Hypergraph(7, tuple(_labels_mask(line) for line in FANO_LINES))


def fano_base() -> Hypergraph:
    """Complements in {1..8} of the seven Fano lines."""
    full8 = (1 << 8) - 1
    return Hypergraph(8, tuple(full8 & ~_labels_mask(line) for line in FANO_LINES))


def fano_base_edges() -> list[int]:
    """Base edges in published order (the hypergraph itself sorts them)."""
    full8 = (1 << 8) - 1
    return [full8 & ~_labels_mask(line) for line in FANO_LINES]


def paper_hypergraph() -> Hypergraph:
    return Hypergraph(8, tuple(_labels_mask(e) for e in PAPER_EDGES))


def _sorted_survivors(hs: list[Hypergraph]):
    keyed = sorted(((canonical_form(h), h.edges, h) for h in hs), key=lambda t: (t[0], t[1]))
    return [t[2] for t in keyed], [t[0] for t in keyed]


# -- Fano extension ---------------------------------------------------------

EXTENSION_CHUNK = 1 << 14


@lru_cache(maxsize=None)
def _extension_space():
    base = fano_base_edges()
    pool = sorted(vset(c) for c in combinations(range(8), 5) if vset(c) not in base)
    combos = np.array(list(combinations(range(len(pool)), 4)), dtype=np.int64)
    return masks_to_array(base), masks_to_array(pool), combos


def _extension_chunk(chunk_size: int, i: int) -> dict:
    base, pool, combos = _extension_space()
    lo = i * chunk_size
    hi = min(len(combos), lo + chunk_size)
    out = np.empty(max(hi - lo, 1), np.int64)
    nsurv, npairs, nopoly = kernels.extension_sweep_chunk(
        8, base, pool, combos, lo, hi, 3, 3, 2, out
    )
    return {
        "examined": hi - lo,
        "pair_missing": int(npairs),
        "no_poly": int(nopoly),
        "survivors": [int(r) for r in out[:nsurv]],
    }


def extension_predicate(h: Hypergraph) -> bool:
    """Every pair missed, no polychromatic 3-coloring, 3-heavy restrictions 2-colorable."""
    return (
        misses_all_sets(h, 2).holds
        and not is_poly_colorable(h, 3).colorable
        and all_heavy_restrictions_colorable(h, 3, 2)
    )


def fano_extension_search(jobs=1, checkpoint=None, resume=False) -> SearchCertificate:
    """All 4-sets of extra 5-edges that turn the Fano base into a counterexample."""
    base, pool, combos = _extension_space()
    total = len(combos)
    spec = SearchSpec(
        name="fano-extension",
        n=8,
        uniformity=5,
        max_edges=11,
        k=3,
        heavy_m=3,
        heavy_k=2,
        predicates=("misses-all-pairs", "no-poly-3", "heavy-3-restrictions-2-colorable"),
    )
    n_chunks = -(-total // EXTENSION_CHUNK)
    chunks, elapsed = run_chunks(
        spec, partial(_extension_chunk, EXTENSION_CHUNK), n_chunks, jobs, checkpoint, resume
    )
    rows = [r for c in chunks for r in c["survivors"]]
    base_masks = [int(b) for b in base]
    survivors = [
        Hypergraph(8, tuple(base_masks + [int(pool[j]) for j in combos[r]])) for r in rows
    ]
    survivors, canon = _sorted_survivors(survivors)
    paper = paper_hypergraph()
    cert = SearchCertificate(
        spec=spec,
        candidates=sum(c["examined"] for c in chunks),
        counts={
            "pair-missing": sum(c["pair_missing"] for c in chunks),
            "no-poly-3": sum(c["no_poly"] for c in chunks),
            "isomorphism-classes": len(set(canon)),
        },
        survivors=survivors,
        canonical=canon,
        result=f"{len(survivors)} of {total} extensions work",
        notes=[
            f"pool: {len(pool)} five-edges outside the base, C({len(pool)},4) = {total}",
            "published extension present: " + ("yes" if paper in survivors else "no"),
        ],
        elapsed=elapsed,
    )
    return cert


# -- seven vertices -----------------------------------------------------------

SEVEN_CHUNK = 1 << 16


@lru_cache(maxsize=None)
def _seven_pool():
    return masks_to_array(sorted(vset(c) for c in combinations(range(7), 5)))


def _seven_chunk(chunk_size: int, i: int) -> dict:
    pool = _seven_pool()
    lo = i * chunk_size
    hi = min(1 << len(pool), lo + chunk_size)
    out = np.empty(hi - lo, np.int64)
    nsurv, nopoly, disjoint = kernels.subset_sweep_chunk(7, pool, lo, hi, 3, 3, 2, out)
    return {
        "examined": hi - lo,
        "no_poly": int(nopoly),
        "disjoint_unmissed": int(disjoint),
        "survivors": [int(c) for c in out[:nsurv]],
    }


def seven_vertex_sweep(jobs=1, checkpoint=None, resume=False) -> SearchCertificate:
    """Every set of 5-edges on 7 vertices: none is a counterexample."""
    pool = _seven_pool()
    total = 1 << len(pool)
    spec = SearchSpec(
        name="seven-vertex",
        n=7,
        uniformity=5,
        max_edges=len(pool),
        k=3,
        heavy_m=3,
        heavy_k=2,
        predicates=("no-poly-3", "heavy-3-restrictions-2-colorable"),
    )
    n_chunks = -(-total // SEVEN_CHUNK)
    chunks, elapsed = run_chunks(
        spec, partial(_seven_chunk, SEVEN_CHUNK), n_chunks, jobs, checkpoint, resume
    )
    cands = [c for ch in chunks for c in ch["survivors"]]
    survivors = [
        Hypergraph(7, tuple(int(pool[i]) for i in range(len(pool)) if (c >> i) & 1))
        for c in cands
    ]
    survivors, canon = _sorted_survivors(survivors)
    disjoint = sum(c["disjoint_unmissed"] for c in chunks)
    nopoly = sum(c["no_poly"] for c in chunks)
    return SearchCertificate(
        spec=spec,
        candidates=sum(c["examined"] for c in chunks),
        counts={"no-poly-3": nopoly, "no-poly-3-with-disjoint-unmissed-pairs": disjoint},
        survivors=survivors,
        canonical=canon,
        result="no counterexample on 7 vertices" if not survivors else f"{len(survivors)} found",
        notes=[
            f"unmissed-pair graph is a star or triangle in all {nopoly} no-poly-3 candidates"
            if disjoint == 0
            else f"{disjoint} no-poly-3 candidates have two disjoint unmissed pairs"
        ],
        elapsed=elapsed,
    )


# -- triangle covers ----------------------------------------------------------


def triangle_cover_bound(n: int) -> int:
    """Each vertex lies in at least ceil((n-1)/2) triangles; each triangle has 3 vertices."""
    return -(-n * (-(-(n - 1) // 2)) // 3)


def min_triangle_cover(n: int) -> tuple[int, list[tuple[int, ...]]]:
    """Fewest 3-subsets of n points whose pairs cover all pairs, with a cover.

    Branch and bound: branch on the least uncovered pair, bound by the
    per-vertex count of uncovered pairs (a triangle covers at most two
    pairs at each of its vertices). Failed (uncovered set, budget) states
    are memoized. Returned triangles are 0-indexed.
    """
    if not 3 <= n <= 10:
        raise UnsupportedSize("min_triangle_cover supports 3 <= n <= 10")
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    index = {p: i for i, p in enumerate(pairs)}
    tri_mask = {}
    for t in combinations(range(n), 3):
        a, b, c = t
        tri_mask[t] = (1 << index[(a, b)]) | (1 << index[(a, c)]) | (1 << index[(b, c)])
    at_vertex = [sum(1 << index[p] for p in pairs if v in p) for v in range(n)]

    def bound(u: int) -> int:
        half = sum(-(-(u & at_vertex[v]).bit_count() // 2) for v in range(n))
        return max(-(-half // 3), -(-u.bit_count() // 3))

    failed: dict[int, int] = {}
    chosen: list[tuple[int, ...]] = []

    def dfs(u: int, budget: int) -> bool:
        if u == 0:
            return True
        if bound(u) > budget or failed.get(u, -1) >= budget:
            return False
        low = (u & -u).bit_length() - 1
        a, b = pairs[low]
        for c in range(n):
            if c in (a, b):
                continue
            t = tuple(sorted((a, b, c)))
            chosen.append(t)
            if dfs(u & ~tri_mask[t], budget - 1):
                return True
            chosen.pop()
        failed[u] = budget
        return False

    everything = (1 << len(pairs)) - 1
    budget = bound(everything)
    while not dfs(everything, budget):
        budget += 1
    return budget, list(chosen)


def triangle_cover_certificate(n: int) -> SearchCertificate:
    value, cover = min_triangle_cover(n)
    spec = SearchSpec(name="triangle-cover", n=n, uniformity=3)
    h = Hypergraph.from_sets(n, cover)
    return SearchCertificate(
        spec=spec,
        candidates=comb(n, 3),
        counts={"pairs": comb(n, 2), "lower-bound": triangle_cover_bound(n), "minimum": value},
        survivors=[h],
        result=f"minimum triangle cover of K_{n} has {value} triangles",
    )


def verify_minimality_pair_missing() -> SearchCertificate:
    """No 10 five-edges on 8 vertices can miss every pair."""
    pairs = comb(8, 2)
    per_edge = comb(3, 2)
    excess = 8 // 2
    bound = -(-(pairs + excess) // per_edge)
    value, cover = min_triangle_cover(8)
    spec = SearchSpec(name="pair-missing-minimality", n=8, uniformity=5)
    full8 = (1 << 8) - 1
    complement = Hypergraph(8, tuple(full8 & ~vset(t) for t in cover))
    return SearchCertificate(
        spec=spec,
        candidates=comb(8, 3),
        counts={
            "pairs": pairs,
            "pairs-missed-per-edge": per_edge,
            "parity-excess": excess,
            "lower-bound": bound,
            "min-triangle-cover": value,
        },
        survivors=[complement],
        result=(
            f"at least {value} edges needed; 10 edges cannot miss every pair"
            if value > 10
            else "bound not certified"
        ),
        notes=[f"ceil(({pairs} + {excess}) / {per_edge}) = {bound}"],
    )


# -- panchromatic numbers -------------------------------------------------------

MAX_P_EDGES = 8


def type_order(num_edges: int) -> list[int]:
    """Nonzero incidence masks, by decreasing size then decreasing lex (edge 0 first)."""

    def lex(t):
        return tuple((t >> j) & 1 for j in range(num_edges))

    return sorted(range(1, 1 << num_edges), key=lambda t: (t.bit_count(), lex(t)), reverse=True)


@dataclass(frozen=True)
class TypeReducedInstance:
    """Vertices grouped by which edges contain them."""

    num_edges: int
    m: int
    types: tuple[int, ...]
    mult: tuple[int, ...]

    def __post_init__(self):
        if len(self.types) != len(self.mult):
            raise ValueError("types and multiplicities differ in length")
        if any(t <= 0 or t >> self.num_edges for t in self.types):
            raise ValueError("types must be nonzero masks over the edges")
        if any(mu < 0 for mu in self.mult):
            raise ValueError("negative multiplicity")
        for j in range(self.num_edges):
            s = sum(mu for t, mu in zip(self.types, self.mult) if (t >> j) & 1)
            if s != self.m:
                raise ValueError(f"edge {j} has {s} vertices, expected {self.m}")

    def max_multiplicity(self) -> int:
        return max(self.mult, default=0)

    def expand(self) -> Hypergraph:
        edges = [0] * self.num_edges
        v = 0
        for t, mu in zip(self.types, self.mult):
            for _ in range(mu):
                for j in range(self.num_edges):
                    if (t >> j) & 1:
                        edges[j] |= 1 << v
                v += 1
        return Hypergraph(v, tuple(edges))

    def describe(self) -> str:
        parts = []
        for t, mu in zip(self.types, self.mult):
            if mu:
                inc = "".join(str((t >> j) & 1) for j in range(self.num_edges))
                parts.append(f"{inc}x{mu}")
        return " ".join(parts)


def type_reduce(h: Hypergraph) -> TypeReducedInstance:
    """Group the non-isolated vertices of a uniform hypergraph by incidence."""
    sizes = set(h.edge_sizes())
    if len(sizes) != 1:
        raise ValueError("type reduction needs a nonempty uniform hypergraph")
    counts: dict[int, int] = {}
    for v in range(h.n):
        t = sum(1 << j for j, e in enumerate(h.edges) if (e >> v) & 1)
        if t:
            counts[t] = counts.get(t, 0) + 1
    types = tuple(sorted(counts))
    return TypeReducedInstance(len(h.edges), sizes.pop(), types, tuple(counts[t] for t in types))


def _p_chunk(m: int, k: int, i: int) -> dict:
    num_edges = i + 1
    types = type_order(num_edges)
    mult = np.zeros(len(types), np.int64)
    found, nodes = kernels.type_search(
        num_edges, m, k, np.array(types, np.int64), True, mult
    )
    out = {"edges": num_edges, "found": bool(found), "nodes": int(nodes)}
    if found:
        out["types"] = [t for t, mu in zip(types, mult) if mu]
        out["mult"] = [int(mu) for mu in mult if mu]
    return out


def p_search(m: int, k: int, max_edges: int, jobs=1, checkpoint=None, resume=False):
    """Least E <= max_edges with an m-uniform E-edge hypergraph lacking a polychromatic k-coloring.

    Vertices with identical incidence are merged into types; an edge-minimal
    witness never repeats a type k times (k such vertices could be colored
    with all k colors), so multiplicities stop at k-1. Each E is a chunk.
    """
    if m < 2 or k < 2:
        raise ValueError("p_search needs m >= 2 and k >= 2")
    if not 1 <= max_edges <= MAX_P_EDGES:
        raise UnsupportedSize(f"max_edges must lie in 1..{MAX_P_EDGES}")
    if m * max_edges > 64:
        raise UnsupportedSize("m * max_edges must not exceed 64 vertices")
    spec = SearchSpec(
        name="panchromatic",
        uniformity=m,
        max_edges=max_edges,
        k=k,
        predicates=(f"no-poly-{k}",),
        isomorphism_rejection=True,
    )
    chunks, elapsed = run_chunks(
        spec,
        partial(_p_chunk, m, k),
        max_edges,
        jobs,
        checkpoint,
        resume,
        stop=lambda r: r["found"],
    )
    counts = {f"nodes.E{c['edges']}": c["nodes"] for c in chunks}
    hit = next((c for c in chunks if c["found"]), None)
    survivors = []
    notes = ["multiplicities capped at k-1; edge columns kept in lex order"]
    value: Optional[int] = None
    if hit is not None:
        value = hit["edges"]
        inst = TypeReducedInstance(value, m, tuple(hit["types"]), tuple(hit["mult"]))
        survivors.append(inst.expand())
        notes.append(f"witness types: {inst.describe()}")
        result = f"p({m},{k}) = {value}"
    else:
        result = f"none <= {max_edges}; p({m},{k}) >= {max_edges + 1}"
    cert = SearchCertificate(
        spec=spec,
        candidates=sum(c["nodes"] for c in chunks),
        counts=counts,
        survivors=survivors,
        result=result,
        notes=notes,
        elapsed=elapsed,
    )
    return value, cert


def verify_survivor(cert_name: str, h: Hypergraph) -> bool:
    """Re-check a certificate survivor through the colorability module."""
    if cert_name == "fano-extension":
        return extension_predicate(h) and min_heavy_poly(h, 2).value == 3
    if cert_name == "seven-vertex":
        return not is_poly_colorable(h, 3).colorable and all_heavy_restrictions_colorable(h, 3, 2)
    raise ValueError(f"no predicate for {cert_name!r}")
