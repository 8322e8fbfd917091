"""Text formats: the hypergraph document and DIMACS CNF export.

External formats use 1-indexed vertex labels; conversion happens only here.

Hypergraph document::

    # optional comments
    vertices: 8
    edge: 4 5 6 7 8
    edge: 2 3 5 6 8

Printed edges are ordered by characteristic vector, vertex 1 first, so an
edge avoiding vertex 1 precedes one containing it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from .colorability import Coloring
from .hypergraph import MAX_VERTICES, Hypergraph, members


class ParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def edge_sort_key(n: int, e: int) -> tuple:
    return tuple((e >> v) & 1 for v in range(n))


def format_hypergraph(h: Hypergraph, comments: Iterable[str] = ()) -> str:
    lines = [f"# {c}" if c else "#" for c in comments]
    lines.append(f"vertices: {h.n}")
    for e in sorted(h.edges, key=lambda e: edge_sort_key(h.n, e)):
        labels = " ".join(str(v + 1) for v in members(e))
        lines.append(f"edge: {labels}" if labels else "edge:")
    return "\n".join(lines) + "\n"


print_hypergraph = format_hypergraph


def _parse_int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(lineno, f"not an integer: {tok!r}") from None


def _parse_blocks(text: str) -> list[tuple[int, int, list[int]]]:
    """Split into (lineno, n, edges) blocks, one per ``vertices:`` line."""
    blocks = []
    cur = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise ParseError(lineno, f"expected 'directive: ...', got {line!r}")
        key = key.strip()
        toks = rest.split()
        if key == "vertices":
            if len(toks) != 1:
                raise ParseError(lineno, "vertices takes exactly one integer")
            n = _parse_int(toks[0], lineno)
            if not 0 <= n <= MAX_VERTICES:
                raise ParseError(lineno, f"vertex count {n} outside 0..{MAX_VERTICES}")
            cur = (lineno, n, [])
            blocks.append(cur)
        elif key == "edge":
            if cur is None:
                raise ParseError(lineno, "edge before vertices header")
            n = cur[1]
            labels = [_parse_int(t, lineno) for t in toks]
            mask = 0
            prev = 0
            for lab in labels:
                if not 1 <= lab <= n:
                    raise ParseError(lineno, f"label {lab} outside 1..{n}")
                if lab <= prev:
                    raise ParseError(lineno, "labels must be strictly increasing")
                prev = lab
                mask |= 1 << (lab - 1)
            cur[2].append(mask)
        else:
            raise ParseError(lineno, f"unknown directive {key!r}")
    return blocks


def parse_hypergraph(text: str) -> Hypergraph:
    blocks = _parse_blocks(text)
    if not blocks:
        raise ParseError(0, "missing 'vertices:' header")
    if len(blocks) > 1:
        raise ParseError(blocks[1][0], "second 'vertices:' header in a single document")
    _, n, edges = blocks[0]
    return Hypergraph(n, tuple(edges))


def parse_hypergraphs(text: str) -> list[Hypergraph]:
    """All hypergraphs in a text holding several documents back to back."""
    return [Hypergraph(n, tuple(edges)) for _, n, edges in _parse_blocks(text)]


def read_hypergraph(path) -> Hypergraph:
    with open(path, encoding="utf-8") as fh:
        return parse_hypergraph(fh.read())


@dataclass
class CnfDocument:
    num_vars: int
    clauses: list[tuple[int, ...]]
    comments: list[str] = field(default_factory=list)

    def to_dimacs(self) -> str:
        lines = [f"c {c}" for c in self.comments]
        lines.append(f"p cnf {self.num_vars} {len(self.clauses)}")
        for cl in self.clauses:
            lines.append(" ".join([str(x) for x in cl] + ["0"]))
        return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> CnfDocument:
    comments = []
    clauses = []
    header = None
    pending: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c"):
            comments.append(line[1:].strip())
            continue
        if line.startswith("p"):
            toks = line.split()
            if len(toks) != 4 or toks[1] != "cnf":
                raise ParseError(lineno, "malformed problem line")
            header = (_parse_int(toks[2], lineno), _parse_int(toks[3], lineno))
            continue
        if header is None:
            raise ParseError(lineno, "clause before problem line")
        for tok in line.split():
            lit = _parse_int(tok, lineno)
            if lit == 0:
                clauses.append(tuple(pending))
                pending = []
            else:
                if abs(lit) > header[0]:
                    raise ParseError(lineno, f"literal {lit} exceeds variable count")
                pending.append(lit)
    if header is None:
        raise ParseError(0, "missing problem line")
    if pending:
        raise ParseError(0, "unterminated final clause")
    if len(clauses) != header[1]:
        raise ParseError(0, f"header declares {header[1]} clauses, body has {len(clauses)}")
    return CnfDocument(header[0], clauses, comments)


def export_cnf_property_b(h: Hypergraph) -> CnfDocument:
    """One variable per vertex (true = red, false = blue); each edge needs both."""
    comments = ["property B encoding: true = red, false = blue"]
    comments += [f"var {v + 1} vertex {v + 1} red" for v in range(h.n)]
    clauses = []
    for e in h.edges:
        vs = [v + 1 for v in members(e)]
        clauses.append(tuple(vs))
        clauses.append(tuple(-x for x in vs))
    return CnfDocument(h.n, clauses, comments)


def poly_var(v: int, c: int, k: int) -> int:
    """Variable for 0-indexed vertex v having 0-indexed color c."""
    return v * k + c + 1


def export_cnf_poly(h: Hypergraph, k: int) -> CnfDocument:
    """Exactly one color per vertex; every color present in every edge."""
    if k < 2:
        raise ValueError("polychromatic CNF export needs k >= 2")
    comments = [f"polychromatic {k}-coloring encoding"]
    comments += [
        f"var {poly_var(v, c, k)} vertex {v + 1} color {c + 1}"
        for v in range(h.n)
        for c in range(k)
    ]
    clauses = []
    for v in range(h.n):
        clauses.append(tuple(poly_var(v, c, k) for c in range(k)))
        for a in range(k):
            for b in range(a + 1, k):
                clauses.append((-poly_var(v, a, k), -poly_var(v, b, k)))
    for e in h.edges:
        vs = members(e)
        for c in range(k):
            clauses.append(tuple(poly_var(v, c, k) for v in vs))
    return CnfDocument(h.n * k, clauses, comments)


def export_cnf(h: Hypergraph, k: int) -> CnfDocument:
    if k == 2:
        return export_cnf_property_b(h)
    return export_cnf_poly(h, k)


def decode_property_b(assignment: Mapping[int, bool], n: int) -> Coloring:
    return Coloring(tuple(0 if assignment.get(v + 1, False) else 1 for v in range(n)), 2)


def decode_poly(assignment: Mapping[int, bool], n: int, k: int) -> Coloring:
    colors = []
    for v in range(n):
        chosen: Optional[int] = None
        for c in range(k):
            if assignment.get(poly_var(v, c, k), False):
                chosen = c
                break
        if chosen is None:
            raise ValueError(f"assignment gives vertex {v + 1} no color")
        colors.append(chosen)
    return Coloring(tuple(colors), k)


def decode(assignment: Mapping[int, bool], n: int, k: int) -> Coloring:
    if k == 2:
        return decode_property_b(assignment, n)
    return decode_poly(assignment, n, k)
