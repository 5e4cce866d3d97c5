from itertools import permutations, product

import pytest

from latsimplex.core import LatticePolytope, LatticeSimplex, random_corpus
from latsimplex.errors import (
    AlreadyVertex,
    FaceNotFound,
    HypothesisFailed,
    InvariantViolation,
    NotClean,
    NotInterior,
    OutsideCarrier,
)
from latsimplex.search import count_full_triangulations
from latsimplex.triangulation import (
    Triangulation,
    basic_triangulation,
    canonical_minimal_triangulation,
    incident_cells,
    interiors_meet,
    locate,
    refine,
    refinement_sequence,
    surface_triangulation,
    validate_triangulation,
)
from latsimplex.unimodular import make_S_d_k, make_T

CROSS2 = LatticePolytope([(1, 0), (-1, 0), (0, 1), (0, -1)])
UNIT3 = LatticeSimplex([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])


def test_q1_full_triangulation():
    t = Triangulation([[(1, 0), (0, 1), (0, 0)], [(0, 1), (-1, 0), (0, 0)],
                       [(-1, 0), (0, -1), (0, 0)], [(0, -1), (1, 0), (0, 0)]], CROSS2)
    rep = validate_triangulation(t)
    assert rep.valid and rep.full
    assert t == basic_triangulation(CROSS2, (0, 0))


def test_q2_partial_triangulation():
    t = Triangulation([[(1, 0), (0, 1), (0, -1)], [(-1, 0), (0, 1), (0, -1)]], CROSS2)
    rep = validate_triangulation(t)
    assert rep.valid and not rep.full


def test_q3_overlap_fails_condition_d():
    square = LatticePolytope([(0, 0), (2, 0), (2, 2), (0, 2)])
    t = Triangulation([[(0, 0), (2, 0), (0, 2)], [(2, 0), (2, 2), (0, 2)],
                       [(0, 0), (1, 1), (2, 0)]], square)
    rep = validate_triangulation(t)
    assert not rep.conditions["d"]
    assert not rep.valid and rep.problems


def test_missing_cell_fails_covering():
    t = Triangulation([[(1, 0), (0, 1), (0, -1)]], CROSS2)
    rep = validate_triangulation(t)
    assert not rep.conditions["a"] and not rep.conditions["e"]


def test_interiors_meet():
    a = LatticeSimplex([(0, 0), (2, 0), (0, 2)])
    assert interiors_meet(a, LatticeSimplex([(1, 1), (0, 0), (2, 1)]))
    assert not interiors_meet(a, LatticeSimplex([(2, 0), (0, 2), (2, 2)]))
    # touching at a vertex only
    assert not interiors_meet(a, LatticeSimplex([(2, 0), (3, 0), (2, 1)]))


def test_basic_triangulation_examples():
    s = make_S_d_k(3, 1)
    t = basic_triangulation(s, (0, 0, 0))
    assert len(t) == 4 and all(c.normalized_volume == 1 for c in t)
    assert validate_triangulation(t).valid
    assert len(basic_triangulation(CROSS2, (0, 0))) == 4
    with pytest.raises(NotInterior):
        basic_triangulation(s, (1, 0, 0))


def test_basic_triangulation_non_simplicial_carrier():
    cube = LatticePolytope(list(product((-1, 1), repeat=3)))
    t = basic_triangulation(cube, (0, 0, 0))
    rep = validate_triangulation(t)
    assert len(t) == 12 and rep.valid and not rep.full


def test_basic_triangulation_on_corpus():
    for p in random_corpus(60):
        pts = p.census.interior
        if not pts:
            continue
        t = basic_triangulation(p, pts[0])
        assert len(t) >= p.ambient_dim + 1
        assert validate_triangulation(t).valid


def test_surface_triangulation_count():
    for p in random_corpus(80, dims=(3,)):
        assert len(surface_triangulation(p)) == 2 * len(p.vertices) - 4


def test_locate_examples():
    s = make_S_d_k(3, 2)
    t = basic_triangulation(s, (0, 0, 0))
    loc = locate(t, (-1, -1, -1))
    assert loc.j == 1 and set(loc.face) == {(0, 0, 0), (-2, -2, -2)}
    assert len(loc.cells) == incident_cells(t, loc.face) == 3
    single = Triangulation([s], s)
    assert locate(single, (0, 0, 0)).j == 3
    with pytest.raises(AlreadyVertex):
        locate(t, (0, 0, 0))
    with pytest.raises(OutsideCarrier):
        locate(t, (5, 5, 5))


def test_locate_on_shared_facet():
    square = LatticePolytope([(0, 0), (2, 0), (2, 2), (0, 2)])
    t = Triangulation([[(0, 0), (2, 0), (0, 2)], [(2, 0), (2, 2), (0, 2)]], square)
    loc = locate(t, (1, 1))
    assert loc.j == 1 and len(loc.cells) == 2


def test_refine_growth_examples():
    s = make_S_d_k(3, 1)
    t = refine(Triangulation([s], s), (0, 0, 0))
    assert len(t) == 4
    s2 = make_S_d_k(3, 2)
    t2 = basic_triangulation(s2, (0, 0, 0))
    t3 = refine(t2, (-1, -1, -1))
    assert len(t3) - len(t2) == 3
    assert all((-1, -1, -1) in c.key for c in t3 if c.contains((-1, -1, -1)))


def test_refine_j2_in_dimension_three():
    # (2,2,3) lands on an interior 2-face of the basic triangulation about (1,1,1)
    s = make_T((5, 5, 8))
    t = basic_triangulation(s, (1, 1, 1))
    loc = locate(t, (2, 2, 3))
    assert loc.j == 2 and len(loc.cells) == 2
    grown = refine(t, (2, 2, 3))
    assert len(grown) - len(t) == 4 > 3
    assert validate_triangulation(grown).valid


def test_refine_at_carrier_boundary():
    p = LatticeSimplex([(0, 0, 0), (3, 0, 0), (0, 3, 0), (0, 0, 3)])
    t = refine(Triangulation([p], p), (1, 1, 1))
    grown = refine(t, (1, 1, 0))
    assert len(grown) - len(t) == 2
    assert validate_triangulation(grown).valid


def test_refinement_sequence_examples():
    t, trace = refinement_sequence(make_S_d_k(3, 2))
    assert trace.sizes == [1, 4, 7]
    assert [st.j for st in trace.stages] == [3, 3]
    _, trace = refinement_sequence(make_S_d_k(3, 2), [(0, 0, 0), (-1, -1, -1)])
    assert trace.sizes == [1, 4, 7]
    assert [st.j for st in trace.stages] == [3, 1]
    assert t == canonical_minimal_triangulation(make_S_d_k(3, 2))
    t, trace = refinement_sequence(UNIT3)
    assert trace.stages == [] and len(t) == 1
    t, trace = refinement_sequence(make_T((3, 7, 20)))
    assert len(t) >= 4 and validate_triangulation(t).full
    with pytest.raises(NotClean):
        refinement_sequence(LatticeSimplex([(0, 0, 0), (2, 0, 0), (0, 1, 0), (0, 0, 1)]))
    with pytest.raises(ValueError):
        refinement_sequence(make_S_d_k(3, 2), [(0, 0, 0)])


def test_refinement_sizes_grow_by_at_least_d():
    for n in range(4, 11):
        for a, b in product(range(1, n), repeat=2):
            s = make_T((a, b, n))
            if not s.census.is_clean:
                continue
            for order in permutations(s.census.interior):
                _, trace = refinement_sequence(s, order)
                sizes = trace.sizes
                assert all(y - x >= 3 for x, y in zip(sizes, sizes[1:]))
                # a 2-face insertion in dimension three grows by more than d
                for st, (x, y) in zip(trace.stages, zip(sizes, sizes[1:])):
                    if st.j == 2:
                        assert y - x > 3


def test_minimal_simplices_in_higher_dimension():
    for d, k in ((4, 1), (4, 2), (5, 1), (4, 3)):
        s = make_S_d_k(d, k)
        for order in permutations(s.census.interior):
            t, _ = refinement_sequence(s, order)
            assert len(t) == d * k + 1
            assert all(c.normalized_volume == 1 for c in t)


def test_incident_cells_examples():
    s = make_S_d_k(3, 1)
    t = basic_triangulation(s, (0, 0, 0))
    assert incident_cells(t, s.facet(0)) == 1
    interior_facet = [(0, 0, 0), (1, 0, 0), (0, 1, 0)]
    assert incident_cells(t, interior_facet) == 2
    assert incident_cells(t, [(0, 0, 0), (1, 0, 0)]) >= 3
    with pytest.raises(FaceNotFound):
        incident_cells(t, [(5, 5, 5)])


def test_canonical_minimal_triangulation():
    for d, k in ((3, 1), (3, 2), (3, 3), (4, 2), (5, 2)):
        t = canonical_minimal_triangulation(make_S_d_k(d, k))
        rep = validate_triangulation(t)
        assert len(t) == d * k + 1 and rep.valid and rep.full
        assert all(c.normalized_volume == 1 for c in t)
    with pytest.raises(HypothesisFailed):
        canonical_minimal_triangulation(UNIT3)


def test_full_triangulation_is_unique_for_small_k():
    for k in (1, 2):
        s = make_S_d_k(3, k)
        pts = list(s.vertices) + list(s.census.interior)
        found = count_full_triangulations(pts)
        assert found == [canonical_minimal_triangulation(s)]


def test_json_round_trip():
    s = make_S_d_k(3, 2)
    t = canonical_minimal_triangulation(s)
    back = Triangulation.from_json(t.to_json(), s)
    assert back == t
    data = t.to_dict()
    assert set(data) == {"cells", "points"}
    assert Triangulation.from_dict(data) == t


def test_tie_in_locate_is_an_invariant_violation():
    # two overlapping cells put (1, 1) in two different minimal faces
    square = LatticePolytope([(0, 0), (2, 0), (2, 2), (0, 2)])
    t = Triangulation([[(0, 0), (2, 0), (0, 2)], [(0, 0), (2, 0), (2, 2)]], square)
    with pytest.raises(InvariantViolation):
        locate(t, (1, 1))
