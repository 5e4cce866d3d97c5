"""Exact lattice simplices: triangulation refinement, Lawson partitions,
unimodular normal forms, Pick-type formulas and classification sweeps."""

from .core import (
    LatticePointCensus,
    LatticePolytope,
    LatticeSimplex,
    PointKind,
    affine_hull_dim,
    barycentric,
    classify_point,
    enumerate_lattice_points,
    facet_inequalities,
    interior_collinearity_report,
    is_clean,
    normalized_volume,
)
from .lawson import (
    affine_dependence,
    bipyramid_type,
    find_bipyramid,
    lawson_partition,
    lawson_triangulations,
    quad_checks,
    radon_point,
)
from .picktype import (
    kk_volume,
    macdonald_volume,
    pick_inequality_check,
    pick_volume,
    reeve_volume,
    sublattice_counts,
)
from .search import (
    SearchSpace,
    delta_identity_check,
    enumerate_clean_k_point,
    max_volume_search,
    verify_minimal_classification,
    ziegler_bound_check,
)
from .triangulation import (
    Triangulation,
    basic_triangulation,
    canonical_minimal_triangulation,
    incident_cells,
    locate,
    refine,
    refinement_sequence,
    validate_triangulation,
)
from .unimodular import (
    UnimodularMap,
    apply,
    are_equivalent,
    canonical_form,
    compose,
    explicit_gf_map,
    inverse,
    make_S_d_k,
    make_T,
    make_T_abn,
    make_delta_pq,
    make_reeve,
    reduce_to_normal_form,
    to_unit_form,
)

__version__ = "0.1.0"
