from fractions import Fraction
from itertools import product
import random

from hypothesis import assume, given, settings, strategies as st
import pytest

from latsimplex.core import LatticePolytope, LatticeSimplex, affine_hull_dim, barycentric
from latsimplex.errors import (
    CollinearCase,
    InvariantViolation,
    NotExterior,
    NotInCellInterior,
    NotSpanning,
    WrongCount,
)
from latsimplex.lawson import (
    LawsonPartition,
    affine_dependence,
    bipyramid_type,
    find_bipyramid,
    lawson_partition,
    lawson_triangulations,
    quad_checks,
    radon_point,
)
from latsimplex.search import noncollinear_pairs
from latsimplex.triangulation import validate_triangulation
from latsimplex.unimodular import make_S_d_k, make_T

BIPYRAMID = [(0, 0, 1), (1, 0, 0), (0, 1, 0), (-1, -1, 0), (0, 0, -1)]
PYRAMID = [(0, 0, 1), (1, 0, 0), (0, 1, 0), (-1, 0, 0), (0, -1, 0)]
SQUARE = [(0, 0), (1, 0), (0, 1), (1, 1)]
UNIT3 = LatticeSimplex([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])


def test_affine_dependence_examples():
    c = affine_dependence(SQUARE)
    assert sum(c) == 0
    assert c[0] > 0 and c[3] > 0 and c[1] < 0 and c[2] < 0
    assert sum(x for x in c if x > 0) == 1
    c = affine_dependence([(0, 0), (2, 0), (0, 2), (1, 1)])
    assert c[0] == 0
    with pytest.raises(NotSpanning):
        affine_dependence([(0, 0), (1, 1), (2, 2), (3, 3)])
    with pytest.raises(WrongCount):
        affine_dependence(SQUARE[:3])


def test_partition_examples():
    p = lawson_partition(BIPYRAMID)
    assert (p.a0, p.a1, p.a2) == ((), (0, 4), (1, 2, 3))
    p = lawson_partition(PYRAMID)
    assert p.a0 == (0,) and {p.a1, p.a2} == {(1, 3), (2, 4)}
    pts = list(make_S_d_k(3, 1).vertices) + [(0, 0, 0)]
    p = lawson_partition(pts)
    assert p.a1 == (4,) and p.a2 == (0, 1, 2, 3)
    assert all(a == Fraction(1, 4) for a in (p.alphas[i] for i in p.a2))


def test_partition_sizes_sum_to_point_count():
    for pts in (BIPYRAMID, PYRAMID, SQUARE):
        assert sum(lawson_partition(pts).sizes) == len(pts)


def test_validate_rejects_bad_partition():
    good = lawson_partition(SQUARE)
    assert good.validate(SQUARE)
    bad = LawsonPartition(good.a0, good.a1, good.a2, tuple(2 * a for a in good.alphas))
    with pytest.raises(InvariantViolation):
        bad.validate(SQUARE)


def test_triangulation_examples():
    for pts, sizes in ((BIPYRAMID, [2, 3]), (PYRAMID, [2, 2])):
        tris = lawson_triangulations(pts)
        assert sorted(len(t) for _, t in tris) == sizes
        for _, t in tris:
            assert validate_triangulation(t).valid
    pts = list(make_S_d_k(3, 1).vertices) + [(0, 0, 0)]
    tris = lawson_triangulations(pts)
    assert [(j, len(t)) for j, t in tris] == [(2, 4)]


def test_radon_point_examples():
    assert radon_point(lawson_partition(BIPYRAMID), BIPYRAMID) == (0, 0, 0)
    assert radon_point(lawson_partition(PYRAMID), PYRAMID) == (0, 0, 0)
    assert radon_point(lawson_partition(SQUARE), SQUARE) == (Fraction(1, 2), Fraction(1, 2))


def configurations(d):
    pt = st.tuples(*[st.integers(-6, 6)] * d)
    return st.lists(pt, min_size=d + 2, max_size=d + 2, unique=True).filter(
        lambda pts: affine_hull_dim(pts) == d
    )


@settings(max_examples=150)
@given(st.integers(2, 3).flatmap(configurations))
def test_partition_invariants(pts):
    p = lawson_partition(pts)
    p.validate(pts)
    x = radon_point(p, pts)
    assert x == tuple(sum(p.alphas[i] * pts[i][j] for i in p.a2) for j in range(len(x)))


@settings(max_examples=100)
@given(st.integers(2, 3).flatmap(configurations), st.randoms(use_true_random=False))
def test_partition_permutation_invariant(pts, rng):
    perm = list(range(len(pts)))
    rng.shuffle(perm)
    shuffled = [pts[i] for i in perm]
    p, q = lawson_partition(pts), lawson_partition(shuffled)

    def sides(part, points):
        return {frozenset((points[i], part.alphas[i]) for i in s) for s in (part.a1, part.a2)}

    assert sides(p, pts) == sides(q, shuffled)
    assert {pts[i] for i in p.a0} == {shuffled[i] for i in q.a0}


@settings(max_examples=100)
@given(st.integers(2, 3).flatmap(configurations))
def test_triangulations_cover_hull(pts):
    hull = LatticePolytope.from_points(pts)
    tris = lawson_triangulations(pts)
    assert 1 <= len(tris) <= 2
    for _, t in tris:
        assert t.normalized_volume == hull.normalized_volume
        assert validate_triangulation(t).valid


def test_bipyramid_type_examples():
    r = bipyramid_type(UNIT3, (1, 1, -1))
    assert r.is_bipyramid and r.zero_indices and r.j == 3 - len(r.zero_indices)
    r = bipyramid_type(UNIT3, (1, 1, 1))
    assert tuple(r.coords) == (-2, 1, 1, 1)
    assert r.is_bipyramid and r.j == 3 and r.negative_index == 0
    r = bipyramid_type(UNIT3, (-1, -1, 5))
    assert not r.is_bipyramid and r.j is None
    with pytest.raises(NotExterior):
        bipyramid_type(UNIT3, (0, 0, 0))


def test_full_bipyramid_has_triangulations_of_sizes_two_and_d():
    rng = random.Random(11)
    checked = 0
    while checked < 150:
        verts = [tuple(rng.randint(-3, 3) for _ in range(3)) for _ in range(4)]
        if affine_hull_dim(verts) != 3:
            continue
        s = LatticeSimplex(verts)
        x = tuple(rng.randint(-4, 4) for _ in range(3))
        if s.contains(x):
            continue
        r = bipyramid_type(s, x)
        if not r.is_bipyramid or r.zero_indices:
            continue
        sizes = sorted(len(t) for _, t in lawson_triangulations(list(s.vertices) + [x]))
        assert sizes == [2, r.j]
        checked += 1


def test_find_bipyramid_collinear_case():
    s = make_S_d_k(3, 2)
    with pytest.raises(CollinearCase) as info:
        find_bipyramid(s, (-1, -1, -1), (0, 0, 0))
    alphas = info.value.alphas
    n = info.value.apex_index
    assert alphas[0] > 1 and alphas[1 + n] == 1 - alphas[0]
    assert all(a == 0 for i, a in enumerate(alphas) if i not in (0, 1 + n))


def test_find_bipyramid_not_in_cell_interior():
    s = make_S_d_k(3, 2)
    with pytest.raises(NotInCellInterior):
        find_bipyramid(s, (0, 0, 0), (-1, -1, -1))


def _check_witness(s, w1, w2, wit):
    alphas = wit.alphas
    assert alphas[0] > 0 and alphas[1 + wit.n] < 0
    assert all(a >= 0 for i, a in enumerate(alphas) if i not in (0, 1 + wit.n))
    assert sum(alphas) == 1
    recon = tuple(alphas[0] * w1[j] + sum(alphas[1 + i] * v[j] for i, v in enumerate(s.vertices))
                  for j in range(3))
    assert recon == w2
    assert wit.report.is_bipyramid and wit.report.j >= 2


def test_find_bipyramid_witness():
    s = make_T((2, 2, 11))
    wit = find_bipyramid(s, (1, 1, 5), (1, 1, 4))
    assert (wit.m, wit.report.j) == (3, 3)
    _check_witness(s, (1, 1, 5), (1, 1, 4), wit)


def test_find_bipyramid_on_searched_witnesses():
    seen = 0
    for s, w1, w2 in noncollinear_pairs(14):
        _check_witness(s, w1, w2, find_bipyramid(s, w1, w2))
        seen += 1
    assert seen > 0


def test_quad_examples():
    assert quad_checks((0, 0), (1, 0), (1, 1), (0, 1)).has_parallel_opposite_edges
    assert quad_checks((0, 0), (3, 1), (4, 4), (1, 3)).has_parallel_opposite_edges
    r = quad_checks((0, 0), (5, 1), (6, 5), (1, 3))
    assert r.planar and r.convex_quad and not r.has_parallel_opposite_edges
    assert r.interior_lattice_point == (5, 2) and r.triangle == 0
    assert not quad_checks((0, 0), (4, 0), (0, 4), (1, 1)).convex_quad
    assert not quad_checks((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)).planar


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _strictly_inside(quad, p):
    signs = [_cross(quad[i], quad[(i + 1) % 4], p) for i in range(4)]
    return all(s > 0 for s in signs) or all(s < 0 for s in signs)


def test_quad_lattice_point_oracle():
    rng = random.Random(7)
    checked = 0
    while checked < 200:
        pts = [(rng.randint(-6, 6), rng.randint(-6, 6)) for _ in range(4)]
        if len(set(pts)) < 4 or affine_hull_dim(pts) < 2:
            continue
        r = quad_checks(*pts)
        if not r.convex_quad or r.has_parallel_opposite_edges:
            continue
        quad = [pts[i] for i in r.cyclic_order]
        xs, ys = [p[0] for p in quad], [p[1] for p in quad]
        found = [p for p in product(range(min(xs), max(xs) + 1), range(min(ys), max(ys) + 1))
                 if _strictly_inside(quad, p)]
        assert found
        assert r.interior_lattice_point in found
        corners = [q for i, q in enumerate(quad) if i != r.triangle]
        assert all(c > 0 for c in barycentric(LatticeSimplex(corners), r.interior_lattice_point))
        checked += 1


@given(st.lists(st.tuples(st.integers(-5, 5), st.integers(-5, 5)), min_size=4, max_size=4, unique=True))
def test_quad_flags_consistent(pts):
    assume(affine_hull_dim(pts) == 2)
    r = quad_checks(*pts)
    if r.convex_quad:
        assert sorted(r.cyclic_order) == [0, 1, 2, 3]
    if r.interior_lattice_point is not None:
        assert r.convex_quad and not r.has_parallel_opposite_edges
