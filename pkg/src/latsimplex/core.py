"""Exact lattice geometry: points, simplices, polytopes and their lattice points.

Points are plain tuples of Python ints (rational points, where allowed, are
tuples of :class:`~fractions.Fraction`).  Simplices and polytopes are
immutable; derived data (volume, facets, census) is computed lazily and
cached on the instance.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from math import factorial
import random

from . import linalg
from .errors import (
    DegenerateSimplex,
    DimensionMismatch,
    DimensionTooLarge,
    NoInteriorPoints,
    NotClean,
)

# brute-force facet enumeration is only attempted up to this dimension
MAX_FACET_DIM = 4

RationalScalar = Fraction


def as_point(coords):
    """Validate and freeze an integer coordinate sequence."""
    out = []
    for c in coords:
        if isinstance(c, bool) or not isinstance(c, int):
            if isinstance(c, Fraction) and c.denominator == 1:
                c = int(c)
            else:
                raise TypeError(f"lattice coordinates must be integers, got {c!r}")
        out.append(int(c))
    if not out:
        raise DimensionMismatch("a point needs at least one coordinate")
    return tuple(out)


def unit_point(d, i):
    """The ``i``-th unit point ``e_i`` of ``Z^d`` (0-based)."""
    return tuple(int(j == i) for j in range(d))


def affine_hull_dim(points):
    """Dimension of the smallest flat containing ``points``."""
    points = list(points)
    if not points:
        raise ValueError("affine_hull_dim of an empty point set")
    base = points[0]
    return linalg.rank([linalg.sub(p, base) for p in points[1:]])


def affine_coordinates(vertices, x):
    """Coefficients ``c`` with ``sum c_i v_i = x`` and ``sum c_i = 1``.

    ``vertices`` must be affinely independent and ``x`` must lie in their
    affine hull; works in any ambient dimension and with rational input.
    """
    n = len(x)
    rows = [[v[j] for v in vertices] for j in range(n)]
    rows.append([1] * len(vertices))
    return linalg.solve(rows, list(x) + [1])


def normalized_volume(s):
    """``d! * Vol`` of a simplex, as an exact nonnegative integer.

    Accepts a :class:`LatticeSimplex` or any sequence of ``d+1`` points.
    A zero determinant raises :class:`DegenerateSimplex`.
    """
    if isinstance(s, LatticeSimplex):
        return s.normalized_volume
    vertices = list(s)
    d = len(vertices[0])
    if len(vertices) != d + 1:
        raise DimensionMismatch(f"a {d}-simplex needs {d + 1} vertices, got {len(vertices)}")
    edges = [linalg.sub(v, vertices[0]) for v in vertices[1:]]
    vol = abs(linalg.det(edges))
    if vol == 0:
        raise DegenerateSimplex("simplex has zero volume")
    return vol


@dataclass(frozen=True)
class Halfspace:
    """The closed halfspace ``normal . x <= offset``.

    ``normal`` is a primitive integer vector pointing out of the polytope;
    ``vertices`` lists the polytope vertices on the bounding hyperplane.
    """

    normal: tuple
    offset: int
    vertices: frozenset = field(default=frozenset(), compare=False)

    def slack(self, x):
        return self.offset - linalg.dot(self.normal, x)


def _hyperplane_through(points):
    """Primitive integer normal of the hyperplane through ``d`` points in ``Z^d``.

    Returns None when the points are affinely dependent.
    """
    d = len(points[0])
    rows = [linalg.sub(p, points[0]) for p in points[1:]]
    normal = []
    for j in range(d):
        minor = [row[:j] + row[j + 1:] for row in rows]
        normal.append((-1) ** j * linalg.det(minor))
    if not any(normal):
        return None
    return linalg.primitive(normal)


class PointKind(Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"
    VERTEX = "vertex"


@dataclass(frozen=True)
class PointClassification:
    kind: PointKind
    # indices of vanishing barycentric coordinates (carrier face = the rest)
    zeros: frozenset = frozenset()
    vertex: int = None


@dataclass(frozen=True)
class LatticePointCensus:
    interior: tuple
    boundary_nonvertex: tuple
    vertex_count: int

    @property
    def k(self):
        return len(self.interior)

    @property
    def boundary_count(self):
        return len(self.boundary_nonvertex) + self.vertex_count

    @property
    def is_clean(self):
        return not self.boundary_nonvertex


@dataclass(frozen=True)
class CollinearityReport:
    collinear: bool
    through_vertex: int = None
    evenly_spaced: bool = False
    step: tuple = None


class LatticePolytope:
    """Convex hull of a list of lattice points that are all extreme.

    Use :meth:`from_points` to build a polytope from an arbitrary point
    cloud; the constructor itself insists that every listed point is a
    vertex (checked for full-dimensional polytopes with ``d <= 4``).
    """

    def __init__(self, vertices, *, check=True):
        verts = tuple(as_point(v) for v in vertices)
        if not verts:
            raise ValueError("a polytope needs at least one vertex")
        d = len(verts[0])
        if any(len(v) != d for v in verts):
            raise DimensionMismatch("vertices have inconsistent dimensions")
        if len(set(verts)) != len(verts):
            raise ValueError("duplicate vertices")
        self.vertices = verts
        self.ambient_dim = d
        self.dim = affine_hull_dim(verts)
        if check and self.dim == d and len(verts) > d + 1 and d <= MAX_FACET_DIM:
            hull = _hull_vertices(verts)
            if len(hull) != len(verts):
                bad = sorted(set(verts) - set(hull))
                raise ValueError(f"points {bad} are not vertices of the convex hull")

    @classmethod
    def from_points(cls, points):
        """Convex hull of ``points``; non-extreme points are dropped."""
        pts = sorted({as_point(p) for p in points})
        d = len(pts[0])
        if affine_hull_dim(pts) != d:
            raise DimensionMismatch("point set is not full-dimensional")
        if len(pts) == d + 1:
            return LatticeSimplex(pts)
        if d > MAX_FACET_DIM:
            raise DimensionTooLarge(f"convex hulls are limited to d <= {MAX_FACET_DIM}")
        hull = _hull_vertices(pts)
        if len(hull) == d + 1:
            return LatticeSimplex(hull)
        return cls(hull, check=False)

    @property
    def is_full_dimensional(self):
        return self.dim == self.ambient_dim

    @cached_property
    def vertex_set(self):
        return frozenset(self.vertices)

    @cached_property
    def facets(self):
        return facet_inequalities(self)

    @cached_property
    def census(self):
        return enumerate_lattice_points(self)

    @cached_property
    def normalized_volume(self):
        """``d!`` times the volume, via a placing triangulation of the vertices."""
        self._require_full_dim()
        return sum(
            normalized_volume([self.vertices[i] for i in cell])
            for cell in placing_triangulation(self.vertices)
        )

    @property
    def volume(self):
        return Fraction(self.normalized_volume, factorial(self.ambient_dim))

    def contains(self, x):
        return all(h.slack(x) >= 0 for h in self.facets)

    def scaled(self, n):
        """The dilate ``n P``."""
        return type(self)([tuple(n * c for c in v) for v in self.vertices], check=False)

    def _require_full_dim(self):
        if not self.is_full_dimensional:
            raise DimensionMismatch(
                f"polytope has dimension {self.dim} in ambient dimension {self.ambient_dim}"
            )

    def __eq__(self, other):
        return isinstance(other, LatticePolytope) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return f"{type(self).__name__}({[list(v) for v in self.vertices]})"


class LatticeSimplex(LatticePolytope):
    """An ordered list of ``d+1`` affinely independent lattice points in ``Z^d``."""

    def __init__(self, vertices, *, check=True):
        super().__init__(vertices, check=False)
        d = self.ambient_dim
        if len(self.vertices) != d + 1:
            raise DimensionMismatch(
                f"a {d}-simplex needs {d + 1} vertices, got {len(self.vertices)}"
            )
        self.__dict__["normalized_volume"] = normalized_volume(self.vertices)

    @cached_property
    def _bary(self):
        # [V | 1]^-1 = adj / det, so coordinates are integer dot products over det
        m = [list(v) + [1] for v in self.vertices]
        adj, det = linalg.adjugate(m)
        return adj, det

    def barycentric(self, x):
        adj, det = self._bary
        y = list(x) + [1]
        n = len(y)
        return tuple(
            Fraction(sum(y[j] * adj[j][i] for j in range(n)), det) for i in range(n)
        )

    def barycentric_numerators(self, x):
        """Barycentric coordinates scaled by the signed ``det [V | 1]``.

        Only the signs matter for classification, so this avoids building
        Fractions; the sign of the determinant is folded in.
        """
        adj, det = self._bary
        y = list(x) + [1]
        n = len(y)
        s = 1 if det > 0 else -1
        return tuple(s * sum(y[j] * adj[j][i] for j in range(n)) for i in range(n))

    @property
    def key(self):
        return frozenset(self.vertices)

    def facet(self, i):
        """Vertices of the facet opposite vertex ``i``."""
        return self.vertices[:i] + self.vertices[i + 1:]

    def sorted(self):
        return LatticeSimplex(sorted(self.vertices))


def barycentric(s, x):
    """Barycentric coordinates of ``x`` relative to the simplex ``s``."""
    if not isinstance(s, LatticeSimplex):
        s = LatticeSimplex(s)
    if len(x) != s.ambient_dim:
        raise DimensionMismatch("point and simplex dimensions differ")
    return s.barycentric(x)


def classify_point(s, x):
    """Position of ``x`` relative to ``s`` from the signs of its barycentric coordinates."""
    if not isinstance(s, LatticeSimplex):
        s = LatticeSimplex(s)
    if len(x) != s.ambient_dim:
        raise DimensionMismatch("point and simplex dimensions differ")
    if all(isinstance(c, int) for c in x):
        coeffs = s.barycentric_numerators(x)
    else:
        coeffs = s.barycentric(x)
    if any(c < 0 for c in coeffs):
        return PointClassification(PointKind.EXTERIOR)
    zeros = frozenset(i for i, c in enumerate(coeffs) if c == 0)
    if not zeros:
        return PointClassification(PointKind.INTERIOR)
    if len(zeros) == s.ambient_dim:
        (v,) = set(range(len(coeffs))) - zeros
        return PointClassification(PointKind.VERTEX, zeros, v)
    return PointClassification(PointKind.BOUNDARY, zeros)


def _simplex_facets(s):
    out = []
    for i, v in enumerate(s.vertices):
        pts = s.facet(i)
        normal = _hyperplane_through(pts)
        offset = linalg.dot(normal, pts[0])
        if linalg.dot(normal, v) > offset:
            normal = tuple(-c for c in normal)
            offset = -offset
        out.append(Halfspace(normal, offset, frozenset(j for j in range(len(s.vertices)) if j != i)))
    return out


def _brute_force_facets(points):
    d = len(points[0])
    seen = {}
    for subset in combinations(range(len(points)), d):
        pts = [points[i] for i in subset]
        normal = _hyperplane_through(pts)
        if normal is None:
            continue
        offset = linalg.dot(normal, pts[0])
        sides = [linalg.dot(normal, p) - offset for p in points]
        if all(s <= 0 for s in sides):
            pass
        elif all(s >= 0 for s in sides):
            normal = tuple(-c for c in normal)
            offset = -offset
        else:
            continue
        if (normal, offset) in seen:
            continue
        incident = frozenset(i for i, s in enumerate(sides) if s == 0)
        seen[(normal, offset)] = Halfspace(normal, offset, incident)
    return list(seen.values())


def _hull_vertices(points):
    facets = _brute_force_facets(points)
    d = len(points[0])
    out = []
    for i, p in enumerate(points):
        normals = [h.normal for h in facets if i in h.vertices]
        if len(normals) >= d and linalg.rank(normals) == d:
            out.append(p)
    return out


def facet_inequalities(p):
    """Irredundant facet halfspaces ``normal . x <= offset`` of a full-dimensional polytope.

    Simplices are handled directly in any dimension; other polytopes use a
    brute-force search over ``d``-subsets of vertices, so they are limited
    to ``d <= 4``.
    """
    if not isinstance(p, LatticePolytope):
        p = LatticePolytope.from_points(p)
    p._require_full_dim()
    if isinstance(p, LatticeSimplex):
        return _simplex_facets(p)
    if p.ambient_dim > MAX_FACET_DIM:
        raise DimensionTooLarge(f"facet enumeration is limited to d <= {MAX_FACET_DIM}")
    facets = _brute_force_facets(p.vertices)
    return sorted(facets, key=lambda h: (h.normal, h.offset))


def _scan(halfspaces, lo, hi, vertex_set, *, max_interior=None, abort_on_boundary=False):
    """Scan the integer box ``[lo, hi]`` row by row against the halfspaces.

    Rows run along the longest box axis; on each row the feasible and the
    strictly-feasible ranges are solved exactly, so only lattice points of
    the polytope are ever materialised.  Returns ``(interior, boundary)`` or
    None once an abort condition triggers.
    """
    d = len(lo)
    axis = max(range(d), key=lambda i: hi[i] - lo[i])
    others = [i for i in range(d) if i != axis]
    rows = [([h.normal[i] for i in others], h.normal[axis], h.offset) for h in halfspaces]
    interior, boundary = [], []
    lo_a, hi_a = lo[axis], hi[axis]
    for prefix in product(*(range(lo[i], hi[i] + 1) for i in others)):
        zl, zh, sl, sh = lo_a, hi_a, lo_a, hi_a
        flat = False
        for nrm, c, off in rows:
            r = off
            for a, x in zip(nrm, prefix):
                r -= a * x
            if c > 0:
                q = r // c
                if q < zh:
                    zh = q
                q = -((-r) // c) - 1
                if q < sh:
                    sh = q
            elif c < 0:
                q = -((-r) // c)
                if q > zl:
                    zl = q
                q = r // c + 1
                if q > sl:
                    sl = q
            elif r < 0:
                zl, zh = 1, 0
            elif r == 0:
                flat = True
            if zl > zh:
                break
        if zl > zh:
            continue
        if flat:
            sl, sh = 1, 0
        sl, sh = max(sl, zl), min(sh, zh)
        for z in range(zl, zh + 1):
            pt = list(prefix)
            pt.insert(axis, z)
            pt = tuple(pt)
            if sl <= z <= sh:
                interior.append(pt)
                if max_interior is not None and len(interior) > max_interior:
                    return None
            else:
                if abort_on_boundary and pt not in vertex_set:
                    return None
                boundary.append(pt)
    return interior, boundary


def _box(vertices):
    d = len(vertices[0])
    lo = [min(v[i] for v in vertices) for i in range(d)]
    hi = [max(v[i] for v in vertices) for i in range(d)]
    return lo, hi


def enumerate_lattice_points(p):
    """Partition ``p ∩ Z^d`` into interior, non-vertex boundary and vertices.

    Lists are sorted lexicographically.
    """
    if not isinstance(p, LatticePolytope):
        p = LatticePolytope.from_points(p)
    if not p.is_full_dimensional:
        raise DimensionMismatch("lattice point census needs a full-dimensional polytope")
    lo, hi = _box(p.vertices)
    interior, boundary = _scan(p.facets, lo, hi, p.vertex_set)
    verts = p.vertex_set
    nonvertex = sorted(x for x in boundary if x not in verts)
    return LatticePointCensus(tuple(sorted(interior)), tuple(nonvertex), len(p.vertices))


def clean_census(p, max_interior=None):
    """Census of ``p`` if it is clean (and has at most ``max_interior`` interior points).

    Returns None as soon as a non-vertex boundary point or one interior
    point too many turns up; used by the classification sweeps.
    """
    lo, hi = _box(p.vertices)
    res = _scan(p.facets, lo, hi, p.vertex_set, max_interior=max_interior,
                abort_on_boundary=True)
    if res is None:
        return None
    interior, _ = res
    return LatticePointCensus(tuple(sorted(interior)), (), len(p.vertices))


def is_clean(p):
    """True iff the only boundary lattice points of ``p`` are its vertices."""
    if not isinstance(p, LatticePolytope):
        p = LatticePolytope.from_points(p)
    return p.census.is_clean


def interior_collinearity_report(s):
    """Collinearity and spacing of the interior lattice points of a clean simplex.

    With a single interior point the report is vacuous: collinear and evenly
    spaced, with no distinguished line and hence no ``through_vertex``.
    """
    if not isinstance(s, LatticeSimplex):
        s = LatticeSimplex(s)
    census = s.census
    if not census.is_clean:
        raise NotClean("simplex has lattice points on its boundary")
    pts = list(census.interior)
    if not pts:
        raise NoInteriorPoints("simplex has no interior lattice points")
    if len(pts) == 1:
        return CollinearityReport(True, None, True, None)
    if affine_hull_dim(pts) != 1:
        return CollinearityReport(False)
    base = pts[0]
    through = None
    for i, v in enumerate(s.vertices):
        if affine_hull_dim([base, pts[1], v]) == 1:
            through = i
            break
    # pts is lexicographically sorted, which is monotone along a line
    steps = {linalg.sub(b, a) for a, b in zip(pts, pts[1:])}
    evenly = len(steps) == 1
    step = steps.pop() if evenly else None
    return CollinearityReport(True, through, evenly, step)


def placing_triangulation(points):
    """Placing triangulation of points in convex position, in the given order.

    Each point is joined to the boundary facets of the current hull it can
    see; when it leaves the current affine hull the whole complex is coned
    over it.  Works with rational points and inside any flat.  Returns cells
    as tuples of indices into ``points``.
    """
    points = list(points)
    cells = []
    used = []
    dim = -1
    for idx, p in enumerate(points):
        if not used:
            used.append(idx)
            cells = [(idx,)]
            dim = 0
            continue
        new_dim = affine_hull_dim([points[i] for i in used] + [p])
        if new_dim > dim:
            cells = [c + (idx,) for c in cells]
            dim = new_dim
        else:
            count = {}
            for c in cells:
                for j in range(len(c)):
                    f = frozenset(c[:j] + c[j + 1:])
                    count[f] = count.get(f, 0) + 1
            added = []
            for c in cells:
                coords = affine_coordinates([points[i] for i in c], p)
                for j, cj in enumerate(c):
                    f = c[:j] + c[j + 1:]
                    if count[frozenset(f)] == 1 and coords[j] < 0:
                        added.append(f + (idx,))
            cells = cells + added
        used.append(idx)
    return cells


def random_lattice_polytope(rng, d, lo=-4, hi=4, npoints=None):
    """Random full-dimensional lattice polytope with vertices in ``[lo, hi]^d``.

    ``rng`` is a :class:`random.Random`; resamples until the hull is full
    dimensional.
    """
    if npoints is None:
        npoints = rng.randint(d + 1, d + 5)
    while True:
        pts = {tuple(rng.randint(lo, hi) for _ in range(d)) for _ in range(npoints)}
        if len(pts) < d + 1 or affine_hull_dim(list(pts)) != d:
            continue
        return LatticePolytope.from_points(pts)


def random_corpus(count, dims=(2, 3), lo=-4, hi=4, seed=1729):
    rng = random.Random(seed)
    return [random_lattice_polytope(rng, dims[i % len(dims)], lo, hi) for i in range(count)]
