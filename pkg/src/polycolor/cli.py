"""Command line interface.

Exit codes: 0 success / property holds, 1 property fails, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import sys
from importlib import resources
from itertools import combinations

from . import __version__
from ._jit import backend_name
from .certificate import CheckpointMismatch, atomic_write
from .colorability import (
    brute_force_poly,
    check_threshold,
    first_failing_restriction,
    is_poly_colorable,
    min_heavy_poly,
)
from .hypergraph import UnsupportedSize, heavy_restriction, is_m_uniform, members
from .io import ParseError, export_cnf, format_hypergraph, parse_hypergraph, read_hypergraph
from .search import (
    fano_base,
    fano_extension_search,
    min_triangle_cover,
    p_search,
    paper_hypergraph,
    seven_vertex_sweep,
    triangle_cover_certificate,
)
from .structure import alpha, alpha_obstruction, contains_clique, misses_all_sets, vc_dimension


def labels(mask: int) -> str:
    return "{" + ",".join(str(v + 1) for v in members(mask)) + "}"


def bundled_paper_text() -> str:
    return resources.files("polycolor").joinpath("data/paper.hg").read_text(encoding="utf-8")


def verify_paper(out=None, text=None) -> bool:
    """Run every claimed property of the bundled hypergraph, printing a checklist."""
    out = out or sys.stdout
    results = []

    def check(name, ok):
        results.append(ok)
        print(f"[{'PASS' if ok else 'FAIL'}] {name}", file=out)

    h = parse_hypergraph(text if text is not None else bundled_paper_text())
    check("bundled edge list matches the published 11 edges", h == paper_hypergraph())
    check("8 vertices, 11 edges, 5-uniform", h.n == 8 and len(h) == 11 and is_m_uniform(h, 5))

    base = fano_base()
    lines = [0b1111111 & ~e for e in base.edges]
    fano = all(
        sum(1 for ln in lines if (ln >> a) & 1 and (ln >> b) & 1) == 1
        for a, b in combinations(range(7), 2)
    )
    check(
        "complements of the first 7 edges form the Fano plane on 1..7",
        set(base.edges) <= set(h.edges) and all(len(members(ln)) == 3 for ln in lines) and fano,
    )
    check("every pair of vertices is missed by some edge", misses_all_sets(h, 2).holds)

    a = alpha(h)
    check(f"alpha = {a.value} (witness {labels(a.witness)})", a.value == 5)
    check("alpha obstruction fires for k=3: 5/8 < 2/3", alpha_obstruction(h, 3) is not None)
    check("alpha obstruction silent for k=2: 5/8 >= 1/2", alpha_obstruction(h, 2) is None)

    check("no polychromatic 3-coloring (backtracking)", not is_poly_colorable(h, 3).colorable)
    check("no polychromatic 3-coloring (all 3^8 = 6561 colorings)", not brute_force_poly(h, 3))

    total = 0
    bad = 0
    for x in range(1 << h.n):
        r = heavy_restriction(h, x, 3)
        total += 1
        if not brute_force_poly(r, 2).colorable:
            bad += 1
    check(f"all {total} restrictions heavy_restriction(H, X, 3) are 2-colorable", total == 256 and bad == 0)
    check("kernel scan agrees: no failing X at m=3, k=2", first_failing_restriction(h, 2, 3) is None)

    for k, want in ((2, 3), (3, 6)):
        t = min_heavy_poly(h, k)
        ok = t.value == want and check_threshold(h, t)
        detail = f" (failure at m={t.value - 1} on X={labels(t.witness_set)})" if t.witness_set is not None else ""
        check(f"m_{k} = {t.value}{detail}", ok)

    check("no K_5^(3) restricted subhypergraph", not contains_clique(h, 5, 3).holds)
    vc = vc_dimension(h)
    check(f"VC dimension {vc.value} <= 4 (shattered {labels(vc.witness)})", vc.value <= 4)

    passed = all(results)
    print(f"{sum(results)}/{len(results)} checks passed", file=out)
    return passed


def _load(path):
    if path == "-":
        return parse_hypergraph(sys.stdin.read())
    return read_hypergraph(path)


def cmd_verify_paper(args):
    text = None
    if args.file:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    return 0 if verify_paper(text=text) else 1


def cmd_poly(args):
    h = _load(args.file)
    res = is_poly_colorable(h, args.k)
    print("colorable" if res.colorable else "not colorable")
    if res.colorable and args.witness:
        for c, cls in enumerate(res.witness.classes()):
            print(f"color {c + 1}: " + " ".join(str(v + 1) for v in cls))
    return 0 if res.colorable else 1


def cmd_mk(args):
    h = _load(args.file)
    t = min_heavy_poly(h, args.k)
    print(f"m_{args.k} = {t.value}")
    if t.witness_set is not None:
        print(f"failure at m = {t.value - 1}: X = {labels(t.witness_set)}")
        sys.stdout.write(
            format_hypergraph(t.witness, [f"{t.value - 1}-heavy restriction to X, not {args.k}-colorable"])
        )
    return 0


def cmd_alpha(args):
    h = _load(args.file)
    a = alpha(h)
    print(f"alpha = {a.value}")
    if a.witness is not None:
        print(f"independent set: {labels(a.witness)}")
    return 0


def cmd_vcdim(args):
    h = _load(args.file)
    vc = vc_dimension(h)
    print(f"vc = {vc.value}")
    print(f"shattered set: {labels(vc.witness)}")
    return 0


def cmd_clique(args):
    h = _load(args.file)
    v = contains_clique(h, args.s, args.t)
    print(f"K_{args.s}^({args.t}): " + (f"found on X = {labels(v.witness)}" if v.holds else "absent"))
    return 0 if v.holds else 1


def cmd_misses(args):
    h = _load(args.file)
    v = misses_all_sets(h, args.s)
    if v.holds:
        print(f"every {args.s}-set is missed by some edge")
    else:
        print(f"not missed: {labels(v.witness)}")
    return 0 if v.holds else 1


def _emit(text, output):
    if output in (None, "-"):
        sys.stdout.write(text)
    else:
        atomic_write(output, text)


def cmd_export_cnf(args):
    h = _load(args.file)
    if args.k < 2:
        print("error: export-cnf needs --k >= 2", file=sys.stderr)
        return 2
    _emit(export_cnf(h, args.k).to_dimacs(), args.output)
    return 0


def _checkpoint_path(args):
    if args.checkpoint:
        return args.checkpoint
    if args.output and args.output != "-":
        return args.output + ".ckpt"
    return None


def cmd_search(args):
    ckpt = _checkpoint_path(args)
    if args.resume and ckpt is None:
        print("error: --resume needs --checkpoint or -o", file=sys.stderr)
        return 2
    common = dict(jobs=args.jobs, checkpoint=ckpt, resume=args.resume)
    if args.kind == "fano-ext":
        cert = fano_extension_search(**common)
    elif args.kind == "seven":
        cert = seven_vertex_sweep(**common)
    else:
        if args.m is None or args.k is None or args.max_edges is None:
            print("error: search pmk needs --m, --k and --max-edges", file=sys.stderr)
            return 2
        _, cert = p_search(args.m, args.k, args.max_edges, **common)
    _emit(cert.render(), args.output)
    if args.output not in (None, "-"):
        print(cert.result)
    print(f"elapsed {cert.elapsed:.2f}s ({backend_name()} kernels)", file=sys.stderr)
    return 0


def cmd_cover(args):
    value, _ = min_triangle_cover(args.n)
    print(value)
    if args.output:
        _emit(triangle_cover_certificate(args.n).render(), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polycolor", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"polycolor {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify-paper", help="check every claim about the bundled 8-vertex hypergraph")
    s.add_argument("--file", help="check this document instead of the bundled one")
    s.set_defaults(func=cmd_verify_paper)

    s = sub.add_parser("poly", help="polychromatic k-colorability (exit 0 yes, 1 no)")
    s.add_argument("file")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--witness", action="store_true", help="print the coloring")
    s.set_defaults(func=cmd_poly)

    s = sub.add_parser("mk", help="least m with every m-heavy restriction k-colorable")
    s.add_argument("file")
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_mk)

    for name, func, help_ in (
        ("alpha", cmd_alpha, "independence number"),
        ("vcdim", cmd_vcdim, "VC dimension"),
    ):
        s = sub.add_parser(name, help=help_)
        s.add_argument("file")
        s.set_defaults(func=func)

    s = sub.add_parser("clique", help="restricted K_s^(t) (exit 0 found, 1 absent)")
    s.add_argument("file")
    s.add_argument("--s", type=int, required=True)
    s.add_argument("--t", type=int, required=True)
    s.set_defaults(func=cmd_clique)

    s = sub.add_parser("misses", help="every s-set missed by an edge (exit 0 yes, 1 no)")
    s.add_argument("file")
    s.add_argument("--s", type=int, required=True)
    s.set_defaults(func=cmd_misses)

    s = sub.add_parser("export-cnf", help="DIMACS CNF; k=2 gives the Property B encoding")
    s.add_argument("file")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("-o", "--output", default="-")
    s.set_defaults(func=cmd_export_cnf)

    s = sub.add_parser("search", help="exhaustive sweeps emitting certificates")
    s.add_argument("kind", choices=["fano-ext", "seven", "pmk"])
    s.add_argument("--m", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--max-edges", type=int)
    s.add_argument("-o", "--output")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--checkpoint", help="checkpoint file (default: OUTPUT.ckpt)")
    s.add_argument("--resume", action="store_true")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("cover", help="minimum triangle cover of K_n")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_cover)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UnsupportedSize, CheckpointMismatch, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
