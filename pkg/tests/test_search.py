import json
import random
from itertools import combinations, permutations, product

import numpy as np
import pytest

from polycolor import kernels
from polycolor.certificate import CheckpointMismatch, parse_certificate, save_checkpoint, SearchSpec
from polycolor.colorability import brute_force_poly, is_poly_colorable
from polycolor.hypergraph import Hypergraph, UnsupportedSize, is_m_uniform, vset
from polycolor.search import (
    FANO_LINES,
    MAX_P_EDGES,
    TypeReducedInstance,
    _extension_space,
    _seven_pool,
    extension_predicate,
    fano_base,
    fano_extension_search,
    fano_plane,
    min_triangle_cover,
    p_search,
    paper_hypergraph,
    triangle_cover_bound,
    triangle_cover_certificate,
    type_order,
    type_reduce,
    verify_minimality_pair_missing,
    verify_survivor,
)
from polycolor.structure import misses_all_sets


@pytest.fixture(scope="module")
def fano_cert():
    return fano_extension_search()


def fano_automorphisms():
    lines = {frozenset(ln) for ln in FANO_LINES}
    out = []
    for p in permutations(range(1, 8)):
        img = dict(zip(range(1, 8), p))
        if {frozenset(img[v] for v in ln) for ln in lines} == lines:
            out.append([img[v + 1] - 1 for v in range(7)] + [7])
    return out


def test_fano_plane_is_a_projective_plane():
    f = fano_plane()
    for a, b in combinations(range(7), 2):
        assert sum(1 for e in f.edges if (e >> a) & 1 and (e >> b) & 1) == 1
    assert len(fano_automorphisms()) == 168


def test_fano_base_properties():
    base = fano_base()
    assert len(base) == 7 and is_m_uniform(base, 5)
    assert all((e >> 7) & 1 for e in base.edges)
    assert set(base.edges) <= set(paper_hypergraph().edges)
    # pairs within 1..7 are missed, pairs with vertex 8 are not
    v = misses_all_sets(base, 2)
    assert not v.holds and (v.witness >> 7) & 1


def test_fano_extension_survivors(fano_cert):
    assert len(fano_cert.survivors) == 105
    assert fano_cert.counts["isomorphism-classes"] == 2
    assert paper_hypergraph() in fano_cert.survivors
    for h in fano_cert.survivors:
        assert verify_survivor("fano-extension", h)


def test_fano_survivors_closed_under_automorphisms(fano_cert):
    surv = set(fano_cert.survivors)
    for perm in fano_automorphisms():
        for h in list(surv)[:5]:
            assert h.relabel(perm) in surv


def test_extension_kernel_matches_python_predicate():
    base, pool, combos = _extension_space()
    rng = random.Random(5)
    rows = rng.sample(range(len(combos)), 150)
    out = np.empty(1, np.int64)
    for r in rows:
        h = Hypergraph(8, tuple(int(x) for x in base) + tuple(int(pool[j]) for j in combos[r]))
        nsurv, _, _ = kernels.extension_sweep_chunk(8, base, pool, combos, r, r + 1, 3, 3, 2, out)
        assert bool(nsurv) == extension_predicate(h)


def test_seven_kernel_matches_python():
    pool = _seven_pool()
    rng = random.Random(6)
    out = np.empty(1, np.int64)
    for c in rng.sample(range(1 << len(pool)), 300):
        h = Hypergraph(7, tuple(int(pool[i]) for i in range(len(pool)) if (c >> i) & 1))
        nsurv, nopoly, _ = kernels.subset_sweep_chunk(7, pool, c, c + 1, 3, 3, 2, out)
        assert bool(nopoly) == (not is_poly_colorable(h, 3).colorable)
        assert nsurv == 0


def test_certificate_round_trip(fano_cert):
    text = fano_cert.render()
    header, survivors = parse_certificate(text)
    assert header["search"] == "fano-extension"
    assert header["survivors"] == "105"
    assert int(header["candidates"]) == 211876
    assert survivors == fano_cert.survivors
    assert all(verify_survivor(header["search"], h) for h in survivors)
    assert "elapsed" not in text


def test_jobs_do_not_change_output(fano_cert):
    assert fano_extension_search(jobs=2).render() == fano_cert.render()


def test_checkpoint_resume(tmp_path, fano_cert):
    ckpt = tmp_path / "fe.ckpt"
    full = fano_extension_search(checkpoint=str(ckpt))
    data = json.loads(ckpt.read_text())
    assert data["watermark"] == len(data["chunks"])
    # pretend the run died after the first chunk
    spec = fano_cert.spec
    save_checkpoint(str(ckpt), spec, data["chunks"][:1])
    resumed = fano_extension_search(checkpoint=str(ckpt), resume=True)
    assert resumed.render() == full.render() == fano_cert.render()


def test_checkpoint_mismatch(tmp_path):
    ckpt = tmp_path / "x.ckpt"
    save_checkpoint(str(ckpt), SearchSpec(name="other"), [])
    with pytest.raises(CheckpointMismatch):
        fano_extension_search(checkpoint=str(ckpt), resume=True)
    ckpt.write_text('{"format": "nope"}')
    with pytest.raises(CheckpointMismatch):
        fano_extension_search(checkpoint=str(ckpt), resume=True)


# -- triangle covers


def brute_cover(n):
    tris = [vset(t) for t in combinations(range(n), 3)]
    pairs = [vset(p) for p in combinations(range(n), 2)]
    for size in range(len(tris) + 1):
        for pick in combinations(tris, size):
            if all(any(p & ~t == 0 for t in pick) for p in pairs):
                return size
    return None


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_cover_matches_brute_force(n):
    assert min_triangle_cover(n)[0] == brute_cover(n)


def test_cover_values():
    got = [min_triangle_cover(n)[0] for n in range(3, 11)]
    assert got == [1, 3, 4, 6, 7, 11, 12, 17]


@pytest.mark.parametrize("n", range(3, 11))
def test_cover_is_valid_and_above_bound(n):
    value, tris = min_triangle_cover(n)
    assert len(tris) == value >= triangle_cover_bound(n)
    parity = n // 2 if (n - 1) % 2 else 0
    assert value >= -(-(n * (n - 1) // 2 + parity) // 3)
    covered = {frozenset(p) for t in tris for p in combinations(t, 2)}
    assert len(covered) == n * (n - 1) // 2


def test_cover_guards_and_certificate():
    with pytest.raises(UnsupportedSize):
        min_triangle_cover(11)
    cert = triangle_cover_certificate(8)
    assert cert.counts["minimum"] == 11
    assert len(cert.survivors[0]) == 11


def test_pair_missing_minimality():
    cert = verify_minimality_pair_missing()
    assert cert.counts["lower-bound"] == 11
    assert cert.counts["min-triangle-cover"] == 11
    comp = cert.survivors[0]
    assert is_m_uniform(comp, 5) and misses_all_sets(comp, 2).holds


# -- panchromatic numbers


def run_kernel(m, k, e, lex):
    types = type_order(e) if lex else list(range(1, 1 << e))
    mult = np.zeros(len(types), np.int64)
    found, _ = kernels.type_search(e, m, k, np.array(types, np.int64), lex, mult)
    if not found:
        return False, None
    return True, TypeReducedInstance(e, m, tuple(types), tuple(int(x) for x in mult))


@pytest.mark.parametrize(
    "m, k, e",
    [(m, 2, e) for m in (2, 3) for e in range(1, 6)] + [(m, 3, e) for m in (2, 3, 4) for e in range(1, 5)],
)
def test_lex_and_plain_kernels_agree(m, k, e):
    a, inst_a = run_kernel(m, k, e, True)
    b, inst_b = run_kernel(m, k, e, False)
    assert a == b
    for found, inst in ((a, inst_a), (b, inst_b)):
        if found:
            h = inst.expand()
            # repeated edge columns collapse, so above the minimum E fewer may remain
            assert len(h) <= e and is_m_uniform(h, m)
            assert inst.max_multiplicity() <= k - 1
            assert not brute_force_poly(h, k).colorable


def uncapped_instances(e, m):
    types = list(range(1, 1 << e))
    for mult in product(range(m + 1), repeat=len(types)):
        try:
            yield TypeReducedInstance(e, m, tuple(types), mult)
        except ValueError:
            continue


@pytest.mark.parametrize("m, k", [(2, 2), (3, 2), (2, 3), (3, 3)])
def test_minimal_witness_lemma(m, k):
    # a type used k or more times can be dropped with its edges
    for e in range(1, 4):
        for inst in uncapped_instances(e, m):
            h = inst.expand()
            if len(h) < e or is_poly_colorable(h, k):
                continue
            for t, mu in zip(inst.types, inst.mult):
                if mu >= k:
                    rest = Hypergraph(h.n, tuple(h.edges[j] for j in range(e) if not (t >> j) & 1))
                    assert not is_poly_colorable(rest, k)


def test_type_reduce_round_trip():
    h = fano_plane()
    inst = type_reduce(h)
    assert inst.m == 3 and inst.num_edges == 7 and inst.max_multiplicity() == 1
    assert type_reduce(inst.expand()) == inst
    with pytest.raises(ValueError):
        type_reduce(Hypergraph(3, (1, 3)))
    with pytest.raises(ValueError):
        TypeReducedInstance(1, 2, (1,), (1,))


@pytest.mark.parametrize("m, k, want", [(2, 2, 3), (3, 2, 7), (2, 3, 1), (3, 3, 3), (4, 3, 5)])
def test_small_p_values(m, k, want):
    value, cert = p_search(m, k, want)
    assert value == want
    h = cert.survivors[0]
    assert len(h) == want and is_m_uniform(h, m)
    assert not is_poly_colorable(h, k)


def test_p_fano_witness():
    _, cert = p_search(3, 2, 7)
    from polycolor.hypergraph import canonical_form

    assert canonical_form(cert.survivors[0]) == canonical_form(fano_plane())


def test_p_reports_lower_bound():
    value, cert = p_search(3, 2, 5)
    assert value is None and cert.result == "none <= 5; p(3,2) >= 6"


def test_p_monotone_in_k():
    for m in (2, 3, 4):
        p2, _ = p_search(m, 2, 7) if m < 4 else (None, None)
        p3, _ = p_search(m, 3, 5)
        if p2 is not None and p3 is not None:
            assert p3 <= p2


def test_p_checkpoint_resume(tmp_path):
    ckpt = str(tmp_path / "p.ckpt")
    v1, c1 = p_search(4, 3, 6, checkpoint=ckpt)
    v2, c2 = p_search(4, 3, 6, checkpoint=ckpt, resume=True)
    assert v1 == v2 == 5 and c1.render() == c2.render()
    assert p_search(4, 3, 6, jobs=2)[1].render() == c1.render()


def test_p_guards():
    with pytest.raises(ValueError):
        p_search(1, 2, 3)
    with pytest.raises(UnsupportedSize):
        p_search(3, 2, MAX_P_EDGES + 1)
    with pytest.raises(UnsupportedSize):
        p_search(9, 2, 8)
