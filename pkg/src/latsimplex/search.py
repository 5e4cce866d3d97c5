"""Sweeps over normal-form simplices: classification, extremal volumes, identities.

The sweeps range over ``T_{a_1..a_{d-1}, n}`` with ``0 < a_i < n``.  For
``k >= 1`` nothing is lost by excluding ``a_i`` divisible by ``n``: such a
simplex is equivalent to one with ``a_i = 0``, which lies in the slab
``0 <= x_i <= 1`` and so has no interior lattice points.
"""

from dataclasses import dataclass, field, asdict
from fractions import Fraction
from itertools import combinations, permutations, product
from math import gcd
import multiprocessing
import os

from . import linalg
from .core import (
    LatticePolytope,
    LatticeSimplex,
    affine_hull_dim,
    clean_census,
    interior_collinearity_report,
)
from .errors import (
    GcdViolation,
    InvalidParameters,
    InvariantViolation,
    NoInteriorPoints,
    SpaceTooLarge,
)
from .triangulation import Triangulation, interiors_meet, validate_triangulation
from .unimodular import (
    canonical_form,
    make_S_d_k,
    make_T,
    make_delta_pq,
)

DEFAULT_CELL_BUDGET = 10 ** 7
BUDGET_ENV = "LATSIMPLEX_CELL_BUDGET"


def cell_budget():
    value = os.environ.get(BUDGET_ENV)
    return int(value) if value else DEFAULT_CELL_BUDGET


@dataclass(frozen=True)
class SearchSpace:
    """``T_{a_1..a_{d-1}, n}`` for ``n_min <= n <= n_max`` and ``0 < a_i < n``."""

    d: int
    k: int
    n_min: int
    n_max: int

    def __post_init__(self):
        if self.d < 2:
            raise InvalidParameters("need d >= 2")
        if self.k < 0:
            raise InvalidParameters("need k >= 0")
        if not 2 <= self.n_min <= self.n_max:
            raise InvalidParameters("need 2 <= n_min <= n_max")
        if self.d != 3 and self.n_min != self.n_max:
            raise InvalidParameters("sweeps with d != 3 need a fixed last coordinate")

    @property
    def size(self):
        return sum((n - 1) ** (self.d - 1) for n in range(self.n_min, self.n_max + 1))


@dataclass
class ClassEntry:
    tag: tuple
    representative: tuple
    volume: int
    members: int = 1


@dataclass
class ClassificationReport:
    space: SearchSpace
    candidates: int
    survivors: int
    classes: list = field(default_factory=list)

    @property
    def extremal(self):
        if not self.classes:
            return {"min_volume": None, "max_volume": None}
        return {
            "min_volume": min(c.volume for c in self.classes),
            "max_volume": max(c.volume for c in self.classes),
        }

    def to_dict(self):
        return {
            "space": asdict(self.space),
            "candidates": self.candidates,
            "survivors": self.survivors,
            "classes": [
                {
                    "tag": list(c.tag),
                    "representative": list(c.representative),
                    "volume": c.volume,
                    "members": c.members,
                }
                for c in self.classes
            ],
            "extremal": self.extremal,
        }


def t_interior_count(a, limit=None):
    """Interior lattice points of ``T_a`` (``a_d > 0``) from the last coordinate alone.

    A point with last coordinate ``z`` has barycentric ``lambda_d = z / a_d``
    and ``i``-th coordinate ``ceil(z a_i / a_d)``, so there is at most one
    interior point per level.  Stops early once ``limit`` is exceeded.
    """
    n = a[-1]
    count = 0
    for z in range(1, n):
        s = z
        for ai in a[:-1]:
            r = (z * ai) % n
            if r == 0:
                break
            s += n - r
        else:
            if s < n:
                count += 1
                if limit is not None and count > limit:
                    return count
    return count


def _edges_primitive(vertices):
    return all(linalg.gcd_all(linalg.sub(u, v)) == 1 for u, v in combinations(vertices, 2))


def _check_candidate(a, k):
    # cheap filters first; the bounding-box scan has the final word
    if t_interior_count(a, k) != k:
        return False
    s = make_T(a)
    if not _edges_primitive(s.vertices):
        return False
    census = clean_census(s, max_interior=k)
    return census is not None and census.k == k


def _sweep_level(args):
    d, k, n = args
    out = []
    for head in product(range(1, n), repeat=d - 1):
        a = head + (n,)
        if _check_candidate(a, k):
            out.append((a, canonical_form(make_T(a)).tag))
    return out


def _sweep(space, jobs=1):
    budget = cell_budget()
    if space.size > budget:
        raise SpaceTooLarge(f"{space.size} candidates exceed the budget of {budget}")
    levels = [(space.d, space.k, n) for n in range(space.n_min, space.n_max + 1)]
    if jobs > 1 and len(levels) > 1:
        with multiprocessing.Pool(jobs) as pool:
            results = pool.map(_sweep_level, levels, chunksize=1)
    else:
        results = [_sweep_level(x) for x in levels]
    # results are in level order whatever the scheduling
    return [hit for level in results for hit in level]


def _classify(space, hits):
    classes = {}
    for a, tag in hits:
        entry = classes.get(tag)
        if entry is None:
            classes[tag] = ClassEntry(tag, a, a[-1])
        else:
            entry.members += 1
    ordered = sorted(classes.values(), key=lambda c: (c.volume, c.tag))
    return ClassificationReport(space, space.size, len(hits), ordered)


def enumerate_clean_k_point(space, jobs=1):
    """Clean simplices with exactly ``k`` interior points in the sweep, up to equivalence."""
    return _classify(space, _sweep(space, jobs))


def hnf_simplices(d, volume):
    """One simplex ``conv(0, rows of H)`` per column-HNF ``H`` with ``det H = volume``.

    Every lattice simplex of that normalized volume is equivalent to at
    least one of these, so this is an exhaustive oracle independent of
    the ``T_a`` normal form.
    """
    def diagonals(rest, slots):
        if slots == 1:
            yield (rest,)
            return
        for h in range(1, rest + 1):
            if rest % h == 0:
                for tail in diagonals(rest // h, slots - 1):
                    yield (h,) + tail

    for diag in diagonals(volume, d):
        ranges = [range(diag[i]) for i in range(d) for _ in range(i)]
        for below in product(*ranges):
            h = [[0] * d for _ in range(d)]
            it = iter(below)
            for i in range(d):
                for j in range(i):
                    h[i][j] = next(it)
                h[i][i] = diag[i]
            yield LatticeSimplex([(0,) * d] + [tuple(r) for r in h])


def clean_simplices_by_hnf(d, volume, k=None):
    """Clean simplices of the given volume (and ``k``, if given) from :func:`hnf_simplices`."""
    out = []
    for s in hnf_simplices(d, volume):
        if not _edges_primitive(s.vertices):
            continue
        census = clean_census(s, max_interior=k)
        if census is None or (k is not None and census.k != k):
            continue
        out.append((s, census))
    return out


@dataclass
class MinimalClassification:
    d: int
    k: int
    verified: bool
    classes: int
    candidates: int
    survivors: int
    s_checks: dict
    oracle: dict
    report: ClassificationReport = None

    def to_dict(self):
        out = {key: getattr(self, key) for key in
               ("d", "k", "verified", "classes", "candidates", "survivors", "s_checks", "oracle")}
        out["report"] = self.report.to_dict() if self.report else None
        return out


def verify_minimal_classification(d, k, jobs=1, oracle=None):
    """Check that every clean ``k``-point ``d``-simplex of volume ``dk+1`` is ``S_d(k)``.

    Sweeps ``T_{a, dk+1}``; for ``d <= 4`` (or when ``oracle`` is true) the
    result is cross-checked against every simplex of that volume in column
    Hermite form.
    """
    if not (3 <= d <= 5 and 1 <= k <= 4):
        raise InvalidParameters("need 3 <= d <= 5 and 1 <= k <= 4")
    n = d * k + 1
    s = make_S_d_k(d, k)
    census = s.census
    rep = interior_collinearity_report(s)
    s_checks = {
        "clean": census.is_clean,
        "interior": census.k == k,
        "collinear": rep.collinear,
        "through_vertex": k == 1 or rep.through_vertex == d,
        "evenly_spaced": rep.evenly_spaced,
        "volume": s.normalized_volume == n,
    }
    s_tag = canonical_form(s).tag
    report = enumerate_clean_k_point(SearchSpace(d, k, n, n), jobs)
    sweep_ok = len(report.classes) == 1 and report.classes[0].tag == s_tag
    if oracle is None:
        oracle = d <= 4
    oracle_info = {"ran": bool(oracle)}
    if oracle:
        found = clean_simplices_by_hnf(d, n, k)
        tags = {canonical_form(t).tag for t, _ in found}
        oracle_info.update(simplices=len(found), classes=len(tags), agrees=tags == {s_tag})
    ok = all(s_checks.values()) and sweep_ok and oracle_info.get("agrees", True)
    return MinimalClassification(d, k, ok, len(report.classes), report.candidates,
                                 report.survivors, s_checks, oracle_info, report)


def conjectured_maximizer(k):
    return make_T((2 * k + 1, 4 * k + 3, 12 * k + 8))


@dataclass
class MaxVolumeReport:
    k: int
    n_max: int
    report: ClassificationReport
    max_volume: int
    max_classes: list
    bound: int
    within_bound: bool
    matches_conjectured_class: bool
    collinear: bool
    line_misses_vertices: bool
    ziegler_ok: bool
    evidence_only: bool

    @property
    def verified(self):
        return self.k == 1 and self.max_volume == 20 and self.matches_conjectured_class

    def to_dict(self):
        out = {key: getattr(self, key) for key in (
            "k", "n_max", "max_volume", "bound", "within_bound", "matches_conjectured_class",
            "collinear", "line_misses_vertices", "ziegler_ok", "evidence_only")}
        out["max_classes"] = [list(c.representative) for c in self.max_classes]
        out["report"] = self.report.to_dict()
        return out


def max_volume_search(k, n_max, jobs=1):
    """Largest clean ``k``-point tetrahedron ``T_{a,b,n}`` with ``n <= n_max``.

    The bound ``12k + 8`` is read as a normalized volume.  For ``k >= 2``
    the outcome is evidence only.
    """
    if k < 1:
        raise InvalidParameters("need k >= 1")
    n_min = 3 * k + 1
    if n_max < n_min:
        raise InvalidParameters(f"n_max must be at least {n_min}")
    space = SearchSpace(3, k, n_min, n_max)
    report = enumerate_clean_k_point(space, jobs)
    if not report.classes:
        raise InvariantViolation(f"no clean {k}-point tetrahedra in the sweep")
    top = report.extremal["max_volume"]
    max_classes = [c for c in report.classes if c.volume == top]
    target = canonical_form(conjectured_maximizer(k)).tag
    matches = len(max_classes) == 1 and max_classes[0].tag == target
    rep_s = make_T(max_classes[0].representative)
    col = interior_collinearity_report(rep_s)
    misses = col.collinear and (k == 1 or col.through_vertex is None)
    ziegler = all(
        ziegler_bound_check(make_T(c.representative), k) for c in report.classes
    )
    return MaxVolumeReport(
        k, n_max, report, top, max_classes, 12 * k + 8, top <= 12 * k + 8,
        matches, col.collinear, misses, ziegler, k >= 2,
    )


@dataclass(frozen=True)
class DeltaIdentity:
    p: int
    q: int
    r: int
    lhs: int
    rhs: Fraction
    column_counts: tuple
    columns_match: bool

    @property
    def holds(self):
        return self.lhs == self.rhs and self.columns_match


def _ceil_div(a, b):
    return -((-a) // b)


def delta_identity_check(p, q, r=1):
    """Evaluate both ceiling-sum identities for ``Delta_{p,q,r}``.

    The left side is also compared column by column with the interior
    lattice points of the triangle: column ``x = i`` (``0 <= i < p``) holds
    ``ceil(q - i(q+1)/p)`` points and column ``x = i - r`` (``0 < i < r``)
    holds ``ceil(iq/r)``.
    """
    if min(p, q, r) < 1:
        raise InvalidParameters("need p, q, r >= 1")
    if gcd(q + 1, p) != 1:
        raise GcdViolation(f"gcd(q+1, p) = {gcd(q + 1, p)}")
    if r > 1 and gcd(q, r) != 1:
        raise GcdViolation(f"gcd(q, r) = {gcd(q, r)}")
    left = [_ceil_div(i * q, r) for i in range(1, r)]
    right = [_ceil_div(q * p - i * (q + 1), p) for i in range(p)]
    lhs = sum(left) + sum(right)
    rhs = Fraction(q * (p + r) + (r - 1), 2)
    census = make_delta_pq(p, q, r).census
    columns = {}
    for x, _ in census.interior:
        columns[x] = columns.get(x, 0) + 1
    expected = {i - r: c for i, c in zip(range(1, r), left)}
    expected.update({i: c for i, c in enumerate(right)})
    observed = {x: columns.get(x, 0) for x in range(-r + 1, p)}
    match = observed == expected and sum(columns.values()) == lhs
    return DeltaIdentity(p, q, r, lhs, rhs, tuple(observed[x] for x in sorted(observed)), match)


def delta_noncollinear_witness(p, q):
    """Three non-collinear interior points of ``Delta_{p,q}``, or None."""
    pts = make_delta_pq(p, q).census.interior
    if len(pts) < 3:
        return None
    a, b = pts[0], pts[1]
    for c in pts[2:]:
        if affine_hull_dim([a, b, c]) == 2:
            return a, b, c
    for a, b, c in combinations(pts, 3):
        if affine_hull_dim([a, b, c]) == 2:
            return a, b, c
    return None


def ziegler_bound(k, d):
    return k * (7 * (k + 1)) ** (d * 2 ** (d + 1))


def ziegler_bound_check(p, k=None):
    """``Vol(p) <= k [7(k+1)]^(d 2^(d+1))`` for a polytope with ``k >= 1`` interior points."""
    if k is None:
        k = p.census.k
    if k < 1:
        raise NoInteriorPoints("the bound needs k >= 1")
    return p.volume <= ziegler_bound(k, p.ambient_dim)


def count_full_triangulations(points, limit=9):
    """Count the triangulations of a small 3-dimensional point set using every point.

    Brute force: all empty tetrahedra on the points, then every volume
    additive family of pairwise interior-disjoint ones, each validated.
    Limited to ``limit`` points.
    """
    points = sorted({tuple(p) for p in points})
    if len(points) > limit:
        raise SpaceTooLarge(f"brute-force counting is limited to {limit} points")
    carrier = LatticePolytope.from_points(points)
    total = carrier.normalized_volume
    cells = []
    for quad in combinations(points, 4):
        if affine_hull_dim(list(quad)) != 3:
            continue
        s = LatticeSimplex(quad)
        if any(all(x >= 0 for x in s.barycentric_numerators(p))
               for p in points if p not in s.key):
            continue
        cells.append(s)
    clash = {
        (i, j) for (i, a), (j, b) in combinations(enumerate(cells), 2) if interiors_meet(a, b)
    }
    found = []

    def extend(start, chosen, vol):
        if vol == total:
            t = Triangulation([cells[i] for i in chosen], carrier)
            rep = validate_triangulation(t)
            if rep.valid and rep.full:
                found.append(t)
            return
        for i in range(start, len(cells)):
            if vol + cells[i].normalized_volume > total:
                continue
            if any((c, i) in clash for c in chosen):
                continue
            extend(i + 1, chosen + [i], vol + cells[i].normalized_volume)

    extend(0, [], 0)
    return found


def noncollinear_pairs(n_max, k=2):
    """Clean ``k``-point ``T_{a,b,n}`` whose interior line misses every vertex.

    Yields ``(simplex, w1, w2)`` for ordered pairs of interior points
    where ``w2`` lies in the open interior of a cell of the basic
    triangulation about ``w1``.
    """
    from .triangulation import basic_triangulation, locate

    for n in range(3 * k + 2, n_max + 1):
        for a, b in product(range(1, n), repeat=2):
            if not _check_candidate((a, b, n), k):
                continue
            s = make_T((a, b, n))
            pts = s.census.interior
            if any(affine_hull_dim([pts[0], pts[1], v]) == 1 for v in s.vertices):
                continue
            for w1, w2 in permutations(pts, 2):
                if locate(basic_triangulation(s, w1), w2).j == 3:
                    yield s, w1, w2
