"""Exact polychromatic colorings of small hypergraphs and their hereditary families."""
__version__ = "0.1.0"

from .colorability import (
    Coloring,
    ColorabilityResult,
    HeavyThreshold,
    brute_force_poly,
    is_poly_colorable,
    is_property_b,
    min_heavy_poly,
)
from .hypergraph import (
    Hypergraph,
    UnsupportedSize,
    canonical_form,
    heavy_restriction,
    is_m_heavy,
    is_m_uniform,
    members,
    trace,
    vset,
)
from .io import export_cnf_poly, export_cnf_property_b, format_hypergraph, parse_hypergraph
from .search import (
    fano_base,
    fano_extension_search,
    min_triangle_cover,
    p_search,
    paper_hypergraph,
    seven_vertex_sweep,
    verify_minimality_pair_missing,
)
from .structure import (
    alpha,
    alpha_obstruction,
    contains_clique,
    misses_all_sets,
    vc_dimension,
    vc_mk_lower_bound,
)
