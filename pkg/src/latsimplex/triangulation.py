"""Lattice triangulations, single-point refinement and refinement sequences."""

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
import json

from . import linalg
from .core import (
    LatticePolytope,
    LatticeSimplex,
    affine_hull_dim,
    interior_collinearity_report,
    placing_triangulation,
)
from .errors import (
    AlreadyVertex,
    FaceNotFound,
    HypothesisFailed,
    InvariantViolation,
    NoInteriorPoints,
    NotClean,
    NotInterior,
    OutsideCarrier,
)


class Triangulation:
    """A set of lattice simplices triangulating ``carrier``.

    Cells are stored with lexicographically sorted vertices, in sorted
    order, so two triangulations with the same cells compare equal.
    Nothing is validated on construction; see :func:`validate_triangulation`.
    """

    def __init__(self, cells, carrier):
        cells = [c if isinstance(c, LatticeSimplex) else LatticeSimplex(c) for c in cells]
        self.cells = tuple(sorted((c.sorted() for c in cells), key=lambda c: c.vertices))
        self.carrier = carrier

    @cached_property
    def vertex_set(self):
        return frozenset(v for c in self.cells for v in c.vertices)

    @property
    def dim(self):
        return self.carrier.ambient_dim

    def __len__(self):
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)

    def __eq__(self, other):
        return (
            isinstance(other, Triangulation)
            and self.cells == other.cells
            and self.carrier.vertex_set == other.carrier.vertex_set
        )

    def __hash__(self):
        return hash(self.cells)

    def __repr__(self):
        return f"Triangulation({len(self.cells)} cells, {len(self.vertex_set)} points)"

    @property
    def normalized_volume(self):
        return sum(c.normalized_volume for c in self.cells)

    def to_dict(self):
        points = sorted(self.vertex_set)
        index = {p: i for i, p in enumerate(points)}
        return {
            "cells": [[index[v] for v in c.vertices] for c in self.cells],
            "points": [list(p) for p in points],
        }

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data, carrier=None):
        points = [tuple(p) for p in data["points"]]
        if carrier is None:
            carrier = LatticePolytope.from_points(points)
        return cls([[points[i] for i in cell] for cell in data["cells"]], carrier)

    @classmethod
    def from_json(cls, text, carrier=None):
        return cls.from_dict(json.loads(text), carrier)


@dataclass(frozen=True)
class ValidationReport:
    conditions: dict
    full: bool
    problems: tuple = ()

    @property
    def valid(self):
        return all(self.conditions.values())


@dataclass(frozen=True)
class Location:
    face: tuple
    j: int
    cells: tuple

    @property
    def cell(self):
        return self.cells[0]


@dataclass(frozen=True)
class Stage:
    point: tuple
    size: int
    j: int


@dataclass
class RefinementTrace:
    initial_size: int = 1
    stages: list = field(default_factory=list)

    @property
    def sizes(self):
        return [self.initial_size] + [s.size for s in self.stages]

    @property
    def order(self):
        return [s.point for s in self.stages]


def _separated(a, b):
    # some facet hyperplane of one cell weakly separates the other cell
    for x, y in ((a, b), (b, a)):
        for h in x.facets:
            if all(h.slack(v) <= 0 for v in y.vertices):
                return True
    return False


def interiors_meet(a, b):
    """Exact test whether two full-dimensional simplices share interior points.

    Cheap facet separation first; otherwise the vertices of ``a ∩ b`` are
    enumerated and the intersection is checked for full dimension.
    """
    if _separated(a, b):
        return False
    halfspaces = list(a.facets) + list(b.facets)
    d = a.ambient_dim
    verts = set()
    for subset in combinations(halfspaces, d):
        try:
            x = linalg.solve([h.normal for h in subset], [h.offset for h in subset])
        except ValueError:
            continue
        if all(h.slack(x) >= 0 for h in halfspaces):
            verts.add(x)
    return len(verts) > d and affine_hull_dim(list(verts)) == d


def _on_carrier_boundary(points, carrier):
    return any(all(h.slack(p) == 0 for p in points) for h in carrier.facets)


def validate_triangulation(t):
    """Check a triangulation against the five defining conditions.

    ``a``: cell vertices are lattice points of the carrier and the carrier's
    vertices are all used; ``b``: interiors pairwise disjoint; ``c``: every
    cell facet is on the carrier boundary or shared by exactly two cells on
    opposite sides; ``d``: no cell contains a point of the vertex set other
    than its own vertices; ``e``: the cells cover the carrier, tested by
    exact volume additivity.
    """
    carrier = t.carrier
    problems = []
    cond = {}

    ok = all(c.ambient_dim == carrier.ambient_dim for c in t.cells)
    ok = ok and all(carrier.contains(v) for v in t.vertex_set)
    missing = carrier.vertex_set - t.vertex_set
    if missing:
        problems.append(f"carrier vertices not used: {sorted(missing)}")
    cond["a"] = ok and not missing

    overlaps = [
        (i, j)
        for (i, a), (j, b) in combinations(enumerate(t.cells), 2)
        if a.key == b.key or interiors_meet(a, b)
    ]
    if overlaps:
        problems.append(f"overlapping cells: {overlaps}")
    cond["b"] = not overlaps

    owners = {}
    for c in t.cells:
        for i, v in enumerate(c.vertices):
            owners.setdefault(frozenset(c.facet(i)), []).append((c, v))
    bad_facets = []
    for f, users in owners.items():
        pts = list(f)
        if _on_carrier_boundary(pts, carrier):
            if len(users) != 1:
                bad_facets.append(sorted(f))
            continue
        if len(users) != 2:
            bad_facets.append(sorted(f))
            continue
        (c1, u1), (c2, u2) = users
        h = next(h for h in c1.facets if all(h.slack(p) == 0 for p in pts))
        if h.slack(u2) >= 0:
            bad_facets.append(sorted(f))
    if bad_facets:
        problems.append(f"unmatched facets: {bad_facets}")
    cond["c"] = not bad_facets

    intruders = []
    for c in t.cells:
        for p in t.vertex_set - c.key:
            if all(x >= 0 for x in c.barycentric_numerators(p)):
                intruders.append((c.vertices, p))
    if intruders:
        problems.append(f"cells containing foreign points: {intruders}")
    cond["d"] = not intruders

    cond["e"] = t.normalized_volume == carrier.normalized_volume
    if not cond["e"]:
        problems.append(
            f"cell volumes sum to {t.normalized_volume}, carrier has {carrier.normalized_volume}"
        )

    full = t.vertex_set == _lattice_points(carrier)
    return ValidationReport(cond, full, tuple(problems))


def _lattice_points(p):
    c = p.census
    return frozenset(c.interior) | frozenset(c.boundary_nonvertex) | p.vertex_set


def surface_triangulation(p):
    """Triangulate every facet of ``p`` without new vertices.

    Facets that are already simplices are kept; the others get a placing
    triangulation in lexicographic vertex order, which restricts
    consistently to shared ridges.  Returns tuples of points.
    """
    out = []
    for h in p.facets:
        pts = sorted(p.vertices[i] for i in h.vertices)
        if len(pts) == p.ambient_dim:
            out.append(tuple(pts))
        else:
            out.extend(tuple(pts[i] for i in cell) for cell in placing_triangulation(pts))
    return out


def basic_triangulation(p, w):
    """Cone the triangulated facets of ``p`` over the interior lattice point ``w``."""
    w = tuple(w)
    if not p.contains(w) or any(h.slack(w) == 0 for h in p.facets):
        raise NotInterior(f"{w} is not an interior point")
    return Triangulation([face + (w,) for face in surface_triangulation(p)], p)


def locate(t, w):
    """Find the face of ``t`` whose relative interior contains ``w``.

    Returns a :class:`Location` with the face vertices, its dimension ``j``
    and every cell containing it.
    """
    w = tuple(w)
    if w in t.vertex_set:
        raise AlreadyVertex(f"{w} is already a vertex")
    faces = set()
    cells = []
    for c in t.cells:
        nums = c.barycentric_numerators(w)
        if any(x < 0 for x in nums):
            continue
        faces.add(tuple(v for v, x in zip(c.vertices, nums) if x > 0))
        cells.append(c)
    if not faces:
        raise OutsideCarrier(f"{w} is not covered by the triangulation")
    if len(faces) > 1:
        raise InvariantViolation(f"{w} lies in the relative interior of several faces: {faces}")
    face = faces.pop()
    return Location(face, len(face) - 1, tuple(cells))


def _refine_at(t, w, loc):
    hit = {c.key for c in loc.cells}
    cells = [c for c in t.cells if c.key not in hit]
    for c in loc.cells:
        for v in loc.face:
            cells.append(tuple(w if u == v else u for u in c.vertices))
    return Triangulation(cells, t.carrier)


def refine(t, w):
    """Insert ``w`` by splitting its carrier face in every cell containing it."""
    w = tuple(w)
    loc = locate(t, w)
    out = _refine_at(t, w, loc)
    d = t.dim
    # the growth bound counts cells around an interior point only
    interior = all(h.slack(w) > 0 for h in t.carrier.facets)
    if interior and len(out) - len(t) < (d + 1 - loc.j) * loc.j:
        raise InvariantViolation(
            f"refinement grew by {len(out) - len(t)}, below (d+1-j)j for j={loc.j}"
        )
    return out


def refinement_sequence(s, order=None):
    """Refine ``{s}`` by inserting every interior lattice point of ``s``.

    ``order`` defaults to lexicographic order; it must be a permutation of
    the interior points.  Returns the final triangulation and the trace.
    """
    if not isinstance(s, LatticeSimplex):
        s = LatticeSimplex(s)
    census = s.census
    if not census.is_clean:
        raise NotClean("refinement sequences need a clean simplex")
    if order is None:
        order = list(census.interior)
    else:
        order = [tuple(w) for w in order]
        if sorted(order) != list(census.interior):
            raise ValueError("order must be a permutation of the interior lattice points")
    t = Triangulation([s], s)
    trace = RefinementTrace(len(t))
    for w in order:
        loc = locate(t, w)
        t = _refine_at(t, w, loc)
        trace.stages.append(Stage(w, len(t), loc.j))
    return t, trace


def incident_cells(t, face):
    """Number of cells of ``t`` having every point of ``face`` as a vertex."""
    f = frozenset(tuple(v) for v in face)
    n = sum(1 for c in t.cells if f <= c.key)
    if n == 0:
        raise FaceNotFound(f"{sorted(f)} is not a face of the triangulation")
    return n


def canonical_minimal_triangulation(s):
    """The explicit ``dk + 1`` cell triangulation of a minimal-type simplex.

    Requires the interior points to be ``v + i (w_1 - v)``, ``1 <= i <= k``,
    for a vertex ``v`` (any vertex when ``k = 1``; the last one is used).
    Cells are ``conv(v_1..v_d, w_k)`` and, for each level ``i`` and each
    other vertex ``v_j``, the simplex with ``v_j`` and ``v`` replaced by
    ``w_{i-1}, w_i`` (where ``w_0 = v``).
    """
    if not isinstance(s, LatticeSimplex):
        s = LatticeSimplex(s)
    try:
        rep = interior_collinearity_report(s)
    except (NoInteriorPoints, NotClean) as exc:
        raise HypothesisFailed(str(exc)) from exc
    interior = s.census.interior
    k = len(interior)
    if k == 1:
        apex = len(s.vertices) - 1
    elif rep.collinear and rep.through_vertex is not None and rep.evenly_spaced:
        apex = rep.through_vertex
    else:
        raise HypothesisFailed(f"interior points are not evenly spaced on a line through a vertex: {rep}")
    v = s.vertices[apex]
    w1 = min(interior, key=lambda w: linalg.dot(linalg.sub(w, v), linalg.sub(w, v)))
    step = linalg.sub(w1, v)
    levels = [linalg.add(v, linalg.scale(i, step)) for i in range(k + 1)]
    if set(levels[1:]) != set(interior):
        raise HypothesisFailed("interior points are not v + i (w1 - v) for i = 1..k")
    others = [u for i, u in enumerate(s.vertices) if i != apex]
    cells = [tuple(others) + (levels[k],)]
    for i in range(1, k + 1):
        for u in others:
            rest = [x for x in others if x != u]
            cells.append(tuple(rest) + (levels[i - 1], levels[i]))
    return Triangulation(cells, s)
