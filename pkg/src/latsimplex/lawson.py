"""Configurations of d+2 points: Lawson partitions, Radon points, bipyramids.

Points may be rational here (tuples of Fraction) because the bipyramid
construction routes through a non-lattice point on a facet.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .core import (
    LatticePolytope,
    LatticeSimplex,
    affine_coordinates,
    affine_hull_dim,
    barycentric,
)
from .errors import (
    CollinearCase,
    InvariantViolation,
    NotExterior,
    NotInCellInterior,
    NotSpanning,
    WrongCount,
)
from .triangulation import Triangulation, basic_triangulation, locate


def _kernel_vector(points):
    # one-dimensional kernel of the homogenized point matrix
    d = len(points[0])
    rows = [[p[j] for p in points] for j in range(d)]
    rows.append([1] * len(points))
    basis = linalg.nullspace(rows)
    if len(basis) != 1:
        raise NotSpanning("points do not have a one-dimensional affine dependence")
    c = basis[0]
    first = next(x for x in c if x != 0)
    if first < 0:
        c = tuple(-x for x in c)
    total = sum(x for x in c if x > 0)
    return tuple(Fraction(x) / total for x in c)


def affine_dependence(points):
    """Affine dependence ``c`` of ``d+2`` points spanning ``R^d``.

    ``sum c_i = 0`` and ``sum c_i v_i = 0``; the first nonzero entry is
    positive and the positive entries sum to 1.
    """
    points = [tuple(p) for p in points]
    d = len(points[0])
    if len(points) != d + 2:
        raise WrongCount(f"need {d + 2} points in dimension {d}, got {len(points)}")
    if affine_hull_dim(points) != d:
        raise NotSpanning("points lie in a hyperplane")
    return _kernel_vector(points)


@dataclass(frozen=True)
class LawsonPartition:
    a0: tuple
    a1: tuple
    a2: tuple
    alphas: tuple

    @property
    def sizes(self):
        return len(self.a0), len(self.a1), len(self.a2)

    def validate(self, points):
        """Raise InvariantViolation unless every partition invariant holds."""
        n = len(points)
        if sorted(self.a0 + self.a1 + self.a2) != list(range(n)):
            raise InvariantViolation("index sets do not partition the points")
        if not (len(self.a2) >= len(self.a1) >= 1 and len(self.a2) >= 2):
            raise InvariantViolation(f"bad sizes {self.sizes}")
        if any(self.alphas[i] != 0 for i in self.a0):
            raise InvariantViolation("nonzero coefficient on A0")
        if any(self.alphas[i] <= 0 for i in self.a1 + self.a2):
            raise InvariantViolation("nonpositive coefficient on A1 or A2")
        for side in (self.a1, self.a2):
            if sum(self.alphas[i] for i in side) != 1:
                raise InvariantViolation("coefficients do not sum to 1")
        if _weighted(self.a1, self.alphas, points) != _weighted(self.a2, self.alphas, points):
            raise InvariantViolation("the two weighted sums differ")
        return True

    def to_dict(self):
        return {
            "a0": list(self.a0),
            "a1": list(self.a1),
            "a2": list(self.a2),
            "alphas": [str(a) for a in self.alphas],
        }


def _weighted(index, alphas, points):
    d = len(points[0])
    return tuple(sum(alphas[i] * points[i][j] for i in index) for j in range(d))


def _split(c):
    pos = tuple(i for i, x in enumerate(c) if x > 0)
    neg = tuple(i for i, x in enumerate(c) if x < 0)
    zero = tuple(i for i, x in enumerate(c) if x == 0)
    a1, a2 = sorted((pos, neg), key=lambda s: (len(s), s))
    return LawsonPartition(zero, a1, a2, tuple(abs(x) for x in c))


def lawson_partition(points):
    """The partition (A0, A1, A2) of ``d+2`` spanning points.

    A1 is the smaller side of the sign split; on equal sizes the
    lexicographically smaller index tuple is A1.
    """
    return _split(affine_dependence(points))


def lawson_triangulations(points):
    """The one or two triangulations of ``conv(points)`` using exactly ``points``.

    For each side ``A_j`` with more than one member, emits the cells
    ``conv(points minus v_i)`` over ``v_i`` in ``A_j``.  Returns a list of
    ``(j, Triangulation)`` pairs.
    """
    points = [tuple(p) for p in points]
    part = lawson_partition(points)
    carrier = LatticePolytope.from_points(points)
    out = []
    for j, side in ((1, part.a1), (2, part.a2)):
        if len(side) > 1:
            cells = [[p for m, p in enumerate(points) if m != i] for i in side]
            out.append((j, Triangulation(cells, carrier)))
    return out


def radon_point(partition, points):
    """The common point of ``conv(A1)`` and ``conv(A2)``."""
    return _weighted(partition.a1, partition.alphas, [tuple(p) for p in points])


@dataclass(frozen=True)
class BipyramidReport:
    is_bipyramid: bool
    j: int = None
    negative_index: int = None
    zero_indices: frozenset = frozenset()
    coords: tuple = ()


def bipyramid_type(s, x):
    """Which bipyramid ``conv(s, x)`` contains, read off the barycentric signs of ``x``.

    Exactly one negative coordinate is required; each zero coordinate
    lowers the bipyramid dimension by one.
    """
    if not isinstance(s, LatticeSimplex):
        s = LatticeSimplex(s)
    coords = barycentric(s, x)
    neg = [i for i, c in enumerate(coords) if c < 0]
    zeros = frozenset(i for i, c in enumerate(coords) if c == 0)
    if not neg:
        raise NotExterior(f"{tuple(x)} lies in the simplex")
    if len(neg) > 1:
        return BipyramidReport(False, None, None, zeros, coords)
    return BipyramidReport(True, s.ambient_dim - len(zeros), neg[0], zeros, coords)


@dataclass(frozen=True)
class BipyramidWitness:
    m: int
    report: BipyramidReport
    alphas: tuple
    n: int
    x: tuple
    mu: Fraction


def find_bipyramid(t, w1, w2):
    """Constructive bipyramid witness for two interior points of a clean simplex.

    ``w2`` must lie in the open interior of the cell ``T_n = conv(F_n, w1)``
    of the basic triangulation about ``w1``.  Follows the construction: the
    line through ``v_n`` and ``w1`` meets ``F_n`` at ``x = mu w1 + (1-mu) v_n``;
    ``T_n`` is split about ``x``, ``w2`` is written in the piece containing
    it and ``x`` is substituted back.  The result is
    ``w2 = alphas[0] w1 + sum alphas[1+i] v_i`` with ``alphas[0] > 0``,
    ``alphas[1+n] < 0`` and the rest nonnegative.  ``m`` indexes the cell
    ``T_m = conv(F_m, w1)`` for which ``conv(T_m, w2)`` contains the
    reported bipyramid.
    """
    if not isinstance(t, LatticeSimplex):
        t = LatticeSimplex(t)
    w1, w2 = tuple(w1), tuple(w2)
    d = t.ambient_dim
    tw = basic_triangulation(t, w1)
    loc = locate(tw, w2)
    if loc.j < d:
        raise NotInCellInterior(f"{w2} lies on a {loc.j}-face of the basic triangulation")
    cell = loc.cell.key
    (n,) = [i for i, v in enumerate(t.vertices) if v not in cell]
    vn = t.vertices[n]
    others = [i for i in range(d + 1) if i != n]

    beta = barycentric(t, w1)
    mu = 1 / (1 - beta[n])
    x = tuple(mu * a + (1 - mu) * b for a, b in zip(w1, vn))

    if affine_hull_dim([vn, w1, w2]) == 1:
        alpha = Fraction(linalg.dot(linalg.sub(w2, vn), linalg.sub(w1, vn)),
                         linalg.dot(linalg.sub(w1, vn), linalg.sub(w1, vn)))
        alphas = [Fraction(0)] * (d + 2)
        alphas[0] = alpha
        alphas[1 + n] = 1 - alpha
        raise CollinearCase(f"{w2} is collinear with {w1} and vertex {n}", tuple(alphas), n)

    for r in others:
        piece = [w1] + [t.vertices[i] for i in others if i != r] + [x]
        gamma = affine_coordinates(piece, w2)
        if all(g >= 0 for g in gamma):
            break
    else:
        raise InvariantViolation(f"{w2} is in no piece of T_{n} split about {x}")

    alphas = [Fraction(0)] * (d + 2)
    alphas[0] = gamma[0] + mu * gamma[-1]
    alphas[1 + n] = (1 - mu) * gamma[-1]
    for g, i in zip(gamma[1:-1], [i for i in others if i != r]):
        alphas[1 + i] = g
    tm = LatticeSimplex([w1 if i == r else v for i, v in enumerate(t.vertices)])
    return BipyramidWitness(r, bipyramid_type(tm, w2), tuple(alphas), n, x, mu)


def _gram_area2(a, b, c):
    # squared doubled area of a triangle in any ambient dimension
    u, v = linalg.sub(b, a), linalg.sub(c, a)
    return linalg.dot(u, u) * linalg.dot(v, v) - linalg.dot(u, v) ** 2


@dataclass(frozen=True)
class QuadReport:
    planar: bool
    convex_quad: bool
    has_parallel_opposite_edges: bool
    cyclic_order: tuple = None
    interior_lattice_point: tuple = None
    triangle: int = None


def _parallel(u, v):
    return linalg.rank([u, v]) < 2


def quad_checks(w1, w2, v, v2):
    """Planarity, convexity and parallel edges of four points; lattice point if any.

    For a convex planar quadrilateral without parallel opposite edges,
    picks the consecutive triple ``(q1, q2, q3)`` of least area and returns
    ``q1 + (q3 - q2)`` together with the index ``i`` of the triangle
    ``Delta_i`` (the quadrilateral minus its ``i``-th vertex in cyclic
    order) whose interior contains it.
    """
    pts = [tuple(p) for p in (w1, w2, v, v2)]
    if len(set(pts)) != 4:
        raise ValueError("quad_checks needs four distinct points")
    if affine_hull_dim(pts) != 2:
        return QuadReport(False, False, False)
    c = _kernel_vector(pts)
    part = _split(c)
    if part.sizes != (0, 2, 2):
        return QuadReport(True, False, False)
    (a, b), (p, q) = part.a1, part.a2
    order = (a, p, b, q)
    quad = [pts[i] for i in order]
    e = [linalg.sub(quad[(i + 1) % 4], quad[i]) for i in range(4)]
    parallel = _parallel(e[0], e[2]) or _parallel(e[1], e[3])
    if parallel:
        return QuadReport(True, True, True, order)
    areas = [_gram_area2(quad[i - 1], quad[i], quad[(i + 1) % 4]) for i in range(4)]
    i = min(range(4), key=lambda i: areas[i])
    q1, q2, q3 = quad[i - 1], quad[i], quad[(i + 1) % 4]
    w = linalg.add(q1, linalg.sub(q3, q2))
    tri = None
    for drop in range(4):
        corners = [quad[m] for m in range(4) if m != drop]
        coords = affine_coordinates(corners, w)
        if all(x > 0 for x in coords):
            tri = drop
            break
    return QuadReport(True, True, False, order, w, tri)
