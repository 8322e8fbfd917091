"""Structural obstructions: independence number, missed sets, cliques, VC dimension.

All subset scans run in increasing mask order inside each size level, so a
reported witness is the least qualifying mask.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple, Optional

from .hypergraph import Hypergraph, members, size, vset


class Verdict(NamedTuple):
    holds: bool
    witness: Optional[int]


class Measure(NamedTuple):
    value: int
    witness: Optional[int]


@dataclass(frozen=True)
class ObstructionReport:
    kind: str  # alpha-bound | small-class-missed | clique | vc-bound
    params: dict = field(default_factory=dict)
    witness: Optional[int] = None


def _masks_of_size(n: int, s: int) -> list[int]:
    return sorted(vset(c) for c in combinations(range(n), s))


def is_independent(h: Hypergraph, s: int) -> bool:
    return not any(e & ~s == 0 for e in h.edges)


def alpha(h: Hypergraph) -> Measure:
    """Independence number: largest vertex set containing no edge.

    If the empty edge is present no set qualifies; that case reports
    ``Measure(0, None)``.
    """
    if 0 in h.edges:
        return Measure(0, None)
    for s in range(h.n, -1, -1):
        for x in _masks_of_size(h.n, s):
            if is_independent(h, x):
                return Measure(s, x)
    return Measure(0, None)  # pragma: no cover


def alpha_obstruction(h: Hypergraph, k: int) -> Optional[ObstructionReport]:
    """Pigeonhole obstruction: alpha/n < (k-1)/k rules out a polychromatic k-coloring."""
    if k < 2:
        raise ValueError("k must be at least 2")
    a = alpha(h)
    if a.value * k < (k - 1) * h.n:
        params = {
            "k": k,
            "n": h.n,
            "alpha": a.value,
            "ratio": Fraction(a.value, h.n),
            "bound": Fraction(k - 1, k),
        }
        return ObstructionReport("alpha-bound", params, a.witness)
    return None


def misses_all_sets(h: Hypergraph, s: int) -> Verdict:
    """Every s-subset of V is disjoint from some edge; the witness is the least unmissed set."""
    if not 0 <= s <= h.n:
        raise ValueError(f"s must lie in 0..{h.n}")
    for x in _masks_of_size(h.n, s):
        if not any(e & x == 0 for e in h.edges):
            return Verdict(False, x)
    return Verdict(True, None)


def small_class_obstruction(h: Hypergraph, k: int) -> Optional[ObstructionReport]:
    """Every set of size floor(n/k) is missed, so the smallest color class is missed."""
    if k < 2:
        raise ValueError("k must be at least 2")
    s = h.n // k
    if misses_all_sets(h, s).holds:
        return ObstructionReport("small-class-missed", {"k": k, "s": s}, None)
    return None


def contains_clique(h: Hypergraph, s: int, t: int) -> Verdict:
    """Some s-set X has every t-subset of X among the traces ``e & X``."""
    if not 0 <= t <= s <= h.n:
        raise ValueError("need t <= s <= n")
    for x in _masks_of_size(h.n, s):
        traces = {e & x for e in h.edges}
        if all(vset(c) in traces for c in combinations(members(x), t)):
            return Verdict(True, x)
    return Verdict(False, None)


def clique_obstruction(h: Hypergraph, k: int, d: int) -> Optional[ObstructionReport]:
    """A restricted ``K_{kd-1}^{((k-1)d)}`` forces m_k > (k-1)d."""
    s, t = k * d - 1, (k - 1) * d
    if s > h.n or t < 0:
        return None
    v = contains_clique(h, s, t)
    if v.holds:
        return ObstructionReport("clique", {"k": k, "d": d, "s": s, "t": t}, v.witness)
    return None


def is_shattered(h: Hypergraph, x: int) -> bool:
    return len({e & x for e in h.edges}) == 1 << size(x)


def vc_dimension(h: Hypergraph) -> Measure:
    """Size of the largest shattered set; 0 (with witness 0) when nothing larger is."""
    for d in range(h.n, 0, -1):
        if len(h.edges) < 1 << d:
            continue
        for x in _masks_of_size(h.n, d):
            if is_shattered(h, x):
                return Measure(d, x)
    return Measure(0, 0)


def vc_mk_lower_bound(h: Hypergraph, k: int) -> int:
    """(k-1) * floor((VC + 1) / k); m_k of the generated family exceeds this."""
    if k < 2:
        raise ValueError("k must be at least 2")
    return (k - 1) * ((vc_dimension(h).value + 1) // k)


def vc_obstruction(h: Hypergraph, k: int) -> Optional[ObstructionReport]:
    vc = vc_dimension(h)
    d = (vc.value + 1) // k
    if d == 0:
        return None
    return ObstructionReport(
        "vc-bound", {"k": k, "d": d, "vc": vc.value, "bound": (k - 1) * d}, vc.witness
    )


def recheck(h: Hypergraph, report: ObstructionReport) -> bool:
    """Re-derive an obstruction from its parameters and witness alone."""
    p = report.params
    if report.kind == "alpha-bound":
        # no independent set of the size a coloring would need
        need = -(-(p["k"] - 1) * h.n // p["k"])
        if report.witness is not None and (
            size(report.witness) != p["alpha"] or not is_independent(h, report.witness)
        ):
            return False
        return all(not is_independent(h, x) for x in _masks_of_size(h.n, need))
    if report.kind == "small-class-missed":
        return misses_all_sets(h, p["s"]).holds
    if report.kind == "clique":
        x = report.witness
        traces = {e & x for e in h.edges}
        return size(x) == p["s"] and all(
            vset(c) in traces for c in combinations(members(x), p["t"])
        )
    if report.kind == "vc-bound":
        x = report.witness
        return size(x) == p["vc"] and is_shattered(h, x) and p["d"] == (p["vc"] + 1) // p["k"]
    raise ValueError(f"unknown obstruction kind {report.kind!r}")
