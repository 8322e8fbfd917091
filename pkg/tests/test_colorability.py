from itertools import combinations

import pytest
from conftest import hypergraphs
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import naive_poly

from polycolor.colorability import (
    Coloring,
    brute_force_poly,
    check_threshold,
    is_poly_colorable,
    is_property_b,
    min_heavy_poly,
)
from polycolor.hypergraph import Hypergraph, UnsupportedSize, complete_uniform, heavy_restriction, vset
from polycolor.search import fano_plane
from polycolor.structure import alpha


def test_paper_not_3_colorable(paper):
    assert not is_poly_colorable(paper, 3)
    assert not brute_force_poly(paper, 3)


def test_paper_2_colorable_by_any_even_split(paper):
    assert brute_force_poly(paper, 2).colorable
    for blue in combinations(range(8), 4):
        col = Coloring(tuple(1 if v in blue else 0 for v in range(8)), 2)
        assert col.is_polychromatic(paper)


def test_single_edge_three_colors():
    h = Hypergraph.from_sets(5, [range(5)])
    res = is_poly_colorable(h, 3)
    assert res.colorable and res.witness.is_polychromatic(h)
    assert Coloring((0, 1, 2, 2, 2), 3).is_polychromatic(h)


def test_fano_not_2_colorable():
    f = fano_plane()
    assert not is_property_b(f)
    assert not brute_force_poly(f, 2)


def test_triangle_and_k5_3():
    tri = Hypergraph.from_sets(3, [[0, 1], [1, 2], [0, 2]])
    assert not is_property_b(tri)
    k53 = complete_uniform(5, 3)
    assert not is_property_b(k53) and not brute_force_poly(k53, 2)


def test_degenerate_inputs():
    with pytest.raises(ValueError):
        is_poly_colorable(Hypergraph(2, (3,)), 0)
    assert is_poly_colorable(Hypergraph(2, (3, 1)), 1)
    assert not is_poly_colorable(Hypergraph(2, (0,)), 1)
    assert not is_poly_colorable(Hypergraph(3, (0b011,)), 3)
    assert is_poly_colorable(Hypergraph(0, ()), 4)
    res = is_poly_colorable(Hypergraph(3, ()), 2)
    assert res.witness.colors == (0, 0, 0)


def test_brute_force_guard():
    with pytest.raises(UnsupportedSize):
        brute_force_poly(Hypergraph(17, (1,)), 3)


def test_all_256_heavy_restrictions_two_colorable(paper):
    for x in range(256):
        assert is_property_b(heavy_restriction(paper, x, 3))


def test_witness_is_lex_first_under_degree_order():
    h = Hypergraph.from_sets(4, [[0, 1, 2], [1, 2, 3]])
    # degrees 1,2,2,1 -> order 1,2,0,3; lex-first in that order is 0,0,1,1
    assert is_poly_colorable(h, 2).witness.colors == (1, 0, 0, 1)


def test_min_heavy_poly_paper(paper):
    t2 = min_heavy_poly(paper, 2)
    t3 = min_heavy_poly(paper, 3)
    assert (t2.value, t3.value) == (3, 6)
    assert t2.witness_set == vset([0, 1, 2])
    assert t3.witness_set == 0xFF
    assert check_threshold(paper, t2) and check_threshold(paper, t3)


def test_min_heavy_poly_single_edge():
    h = Hypergraph.from_sets(5, [range(5)])
    t = min_heavy_poly(h, 3)
    assert t.value == 3
    assert not is_poly_colorable(t.witness, 3)


def test_min_heavy_poly_degenerate():
    assert min_heavy_poly(Hypergraph(3, ()), 2).value == 1
    assert min_heavy_poly(Hypergraph(3, (1,)), 3).value == 2
    assert min_heavy_poly(Hypergraph(3, (7,)), 1).value == 1


@settings(max_examples=300, deadline=None)
@given(hypergraphs(max_n=5), st.integers(1, 4))
def test_solver_matches_oracles(h, k):
    want = naive_poly(h, k)
    got = is_poly_colorable(h, k)
    assert got.colorable == want == brute_force_poly(h, k).colorable
    if got.colorable:
        assert got.witness.is_polychromatic(h)
        assert brute_force_poly(h, k).witness.is_polychromatic(h)


@settings(max_examples=200, deadline=None)
@given(hypergraphs(max_n=6), st.integers(2, 4))
def test_color_monotonicity(h, k):
    if is_poly_colorable(h, k):
        assert is_poly_colorable(h, k - 1)


@settings(max_examples=200, deadline=None)
@given(hypergraphs(max_n=6), st.integers(1, 3), st.data())
def test_edge_monotonicity(h, k, data):
    if h.edges and is_poly_colorable(h, k):
        e = data.draw(st.sampled_from(h.edges))
        assert is_poly_colorable(h.without_edge(e), k)


@settings(max_examples=60, deadline=None)
@given(hypergraphs(max_n=5, max_edges=6))
def test_threshold_ordering(h):
    values = [min_heavy_poly(h, k).value for k in (1, 2, 3, 4)]
    assert values == sorted(values)


@settings(max_examples=60, deadline=None)
@given(hypergraphs(max_n=5, max_edges=6), st.integers(1, 3))
def test_threshold_rechecks(h, k):
    assert check_threshold(h, min_heavy_poly(h, k))


@settings(max_examples=200, deadline=None)
@given(hypergraphs(max_n=6, allow_empty_edge=False), st.integers(2, 4))
def test_alpha_consistency(h, k):
    if is_poly_colorable(h, k):
        assert alpha(h).value * k >= (k - 1) * h.n
