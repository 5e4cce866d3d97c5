"""Unimodular maps, normal forms and canonical forms of lattice simplices.

Maps act on row vectors: ``f(v) = v . M + u`` with ``|det M| = 1``.

Canonical forms.  Two simplices ``s1, s2`` are equivalent iff there is a
vertex bijection and ``M`` in ``GL_d(Z)`` with ``E2 = E1 . M``, where ``E``
is the edge matrix (rows ``v_i - v_0``) for the matching vertex orders:
an affine unimodular map sends vertices to vertices, so it is determined
by where it sends an ordered vertex list.  The column Hermite normal form
of ``E`` is the unique representative of ``{E . M}``, so the lex-min HNF
over all ``(d+1)!`` orders is a complete invariant.  A witness is
``M = U1 . U2^-1`` from the two reducing transforms, and is always checked
by applying it.
"""

from dataclasses import dataclass
from itertools import combinations, permutations
import random

from . import linalg
from .core import LatticePolytope, LatticeSimplex
from .errors import (
    DimensionMismatch,
    InvalidParameters,
    InvariantViolation,
    NoLatticeBasisExtension,
    NotUnimodular,
    NotUnimodularSimplex,
)


class UnimodularMap:
    """The affine lattice automorphism ``v -> v . matrix + translation``."""

    def __init__(self, matrix, translation=None):
        m = tuple(tuple(int(x) for x in row) for row in matrix)
        d = len(m)
        if any(len(row) != d for row in m):
            raise DimensionMismatch("matrix must be square")
        if linalg.det([list(r) for r in m]) not in (1, -1):
            raise NotUnimodular("matrix determinant is not +-1")
        if translation is None:
            translation = (0,) * d
        translation = tuple(int(x) for x in translation)
        if len(translation) != d:
            raise DimensionMismatch("translation has the wrong dimension")
        self.matrix = m
        self.translation = translation
        self.dim = d

    def __call__(self, v):
        if len(v) != self.dim:
            raise DimensionMismatch("point and map dimensions differ")
        return linalg.add(linalg.vecmat(v, self.matrix), self.translation)

    def __eq__(self, other):
        return (
            isinstance(other, UnimodularMap)
            and self.matrix == other.matrix
            and self.translation == other.translation
        )

    def __hash__(self):
        return hash((self.matrix, self.translation))

    def __repr__(self):
        return f"UnimodularMap({[list(r) for r in self.matrix]}, {list(self.translation)})"

    def to_dict(self):
        return {"matrix": [list(r) for r in self.matrix], "translation": list(self.translation)}


def identity_map(d):
    return UnimodularMap(linalg.identity(d))


def translation_map(u):
    return UnimodularMap(linalg.identity(len(u)), u)


def apply(m, p):
    """Image of a polytope (vertex by vertex, order kept) or of a single point."""
    if isinstance(p, LatticePolytope):
        if p.ambient_dim != m.dim:
            raise DimensionMismatch("polytope and map dimensions differ")
        verts = [m(v) for v in p.vertices]
        if isinstance(p, LatticeSimplex):
            return LatticeSimplex(verts)
        return LatticePolytope(verts, check=False)
    return m(tuple(p))


def compose(m1, m2):
    """``m1 o m2``: apply ``m2`` first."""
    if m1.dim != m2.dim:
        raise DimensionMismatch("maps have different dimensions")
    mat = linalg.matmul(m2.matrix, m1.matrix)
    u = linalg.add(linalg.vecmat(m2.translation, m1.matrix), m1.translation)
    return UnimodularMap(mat, u)


def inverse(m):
    inv = linalg.int_inverse([list(r) for r in m.matrix])
    return UnimodularMap(inv, tuple(-x for x in linalg.vecmat(m.translation, inv)))


def random_unimodular(rng, d, entries=3, shift=5):
    """Random map with matrix entries in ``[-entries, entries]`` (rejection sampling)."""
    while True:
        mat = [[rng.randint(-entries, entries) for _ in range(d)] for _ in range(d)]
        if linalg.det(mat) in (1, -1):
            u = tuple(rng.randint(-shift, shift) for _ in range(d))
            return UnimodularMap(mat, u)


# constructors

def make_S_d_k(d, k):
    """``conv(e_1, ..., e_d, -k (1, ..., 1))``."""
    if d < 2 or k < 0:
        raise InvalidParameters("need d >= 2 and k >= 0")
    verts = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    verts.append((-k,) * d)
    return LatticeSimplex(verts)


def make_T(a):
    """``conv(0, e_1, ..., e_{d-1}, a)``."""
    a = tuple(a)
    d = len(a)
    if d < 2 or any(not isinstance(x, int) or isinstance(x, bool) for x in a):
        raise InvalidParameters("need an integer tuple of length >= 2")
    if a[-1] == 0:
        raise InvalidParameters("last coordinate must be nonzero")
    verts = [(0,) * d] + [tuple(int(i == j) for j in range(d)) for i in range(d - 1)]
    verts.append(a)
    return LatticeSimplex(verts)


def make_T_abn(a, b, n):
    if not (0 < a < n and 0 < b < n):
        raise InvalidParameters("need 0 < a, b < n")
    return make_T((a, b, n))


def make_reeve(n):
    if n < 1:
        raise InvalidParameters("need n >= 1")
    return LatticeSimplex([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, n)])


def make_delta_pq(p, q, r=1):
    """The triangle with vertices ``(-r, 0), (0, q), (p, -1)``."""
    if p < 1 or q < 1 or r < 1:
        raise InvalidParameters("need p, q, r >= 1")
    return LatticeSimplex([(-r, 0), (0, q), (p, -1)])


def explicit_gf_map(d, k):
    """Translation by ``(k, ..., k)`` followed by the matrix ``M``.

    ``M`` has ``1-k`` on the diagonal of the first ``d-1`` rows and ``-k``
    elsewhere in those rows; the last row is ``(d-1)k`` except the corner
    ``(d-1)k + 1``.  Sends ``S_d(k)`` to ``T_{dk, ..., dk, dk+1}``.
    """
    m = []
    for i in range(d - 1):
        m.append([1 - k if j == i else -k for j in range(d)])
    m.append([(d - 1) * k] * (d - 1) + [(d - 1) * k + 1])
    return compose(UnimodularMap(m), translation_map((k,) * d))


def to_unit_form(s):
    """Map a normalized-volume-1 simplex onto ``T_{1, ..., 1}``.

    The last vertex goes to the origin, vertex ``i`` to ``e_i`` for
    ``i < d`` and vertex ``d`` to ``(1, ..., 1)``.
    """
    if not isinstance(s, LatticeSimplex):
        s = LatticeSimplex(s)
    if s.normalized_volume != 1:
        raise NotUnimodularSimplex(f"normalized volume is {s.normalized_volume}, not 1")
    d = s.ambient_dim
    base = s.vertices[-1]
    a = [list(linalg.sub(v, base)) for v in s.vertices[:-1]]
    f = compose(UnimodularMap(linalg.int_inverse(a)), translation_map(tuple(-x for x in base)))
    g = linalg.identity(d)
    g[-1] = [1] * d
    return compose(UnimodularMap(g), f)


@dataclass(frozen=True)
class NormalFormSimplex:
    """``conv(0, e_1, ..., e_{d-1}, a)`` with ``0 < a_i <= a_d``.

    ``a_i = a_d`` only when the reduction of ``a_i`` modulo ``a_d`` is 0.
    """

    a: tuple

    def __post_init__(self):
        a = self.a
        if len(a) < 2 or a[-1] <= 0 or not all(0 < x <= a[-1] for x in a[:-1]):
            raise InvalidParameters(f"{a} is not a normal form")

    def simplex(self):
        return make_T(self.a)


def _frame_map(s, base, frame):
    # unimodular M with (v_frame[i] - v_base) M = e_i, or None
    u = [list(linalg.sub(s.vertices[i], s.vertices[base])) for i in frame]
    h, w = linalg.hermite_columns(u)
    d = s.ambient_dim
    if any(h[i][j] != int(i == j) for i in range(d - 1) for j in range(d)):
        return None
    return w


def reduce_to_normal_form(s, base=None, frame=None):
    """Map ``s`` onto a :class:`NormalFormSimplex` ``T_a``.

    ``base`` goes to the origin and the ``d-1`` ``frame`` vertices to
    ``e_1, ..., e_{d-1}``; this needs the frame edges to extend to a
    lattice basis.  The remaining vertex lands on ``a``; a reflection makes
    ``a_d > 0`` and a shear reduces ``a_i`` into ``(0, a_d]``.  Without an
    explicit choice, bases and frames are tried in a fixed order.
    Returns ``(NormalFormSimplex, UnimodularMap)``.
    """
    if not isinstance(s, LatticeSimplex):
        s = LatticeSimplex(s)
    d = s.ambient_dim
    if base is None or frame is None:
        choices = []
        for b in reversed(range(d + 1)):
            if base is not None and b != base:
                continue
            rest = [i for i in range(d + 1) if i != b]
            choices.extend((b, f) for f in combinations(rest, d - 1))
    else:
        frame = tuple(frame)
        if len(frame) != d - 1 or len({base, *frame}) != d:
            raise InvalidParameters("frame must be d-1 distinct vertices other than base")
        choices = [(base, frame)]
    for b, f in choices:
        w = _frame_map(s, b, f)
        if w is not None:
            break
    else:
        raise NoLatticeBasisExtension("no frame of edges extends to a lattice basis")
    (apex,) = set(range(d + 1)) - {b, *f}
    a = linalg.vecmat(linalg.sub(s.vertices[apex], s.vertices[b]), w)
    if a[-1] < 0:
        refl = linalg.identity(d)
        refl[-1][-1] = -1
        w = linalg.matmul(w, refl)
        a = a[:-1] + (-a[-1],)
    ad = a[-1]
    shear = linalg.identity(d)
    reduced = []
    for i in range(d - 1):
        r = a[i] % ad or ad
        shear[-1][i] = (r - a[i]) // ad
        reduced.append(r)
    mat = linalg.matmul(w, shear)
    u = tuple(-x for x in linalg.vecmat(s.vertices[b], mat))
    m = UnimodularMap(mat, u)
    nf = NormalFormSimplex(tuple(reduced) + (ad,))
    if apply(m, s).vertex_set != nf.simplex().vertex_set:
        raise InvariantViolation("normal form map does not reproduce T_a")
    return nf, m


@dataclass(frozen=True)
class CanonicalForm:
    tag: tuple
    dim: int

    def matrix(self):
        d = self.dim
        return [list(self.tag[i * d:(i + 1) * d]) for i in range(d)]

    def __str__(self):
        return " ".join(str(x) for x in self.tag)


def _canonical(s):
    best = None
    for order in permutations(range(len(s.vertices))):
        b = s.vertices[order[0]]
        e = [list(linalg.sub(s.vertices[i], b)) for i in order[1:]]
        h, u = linalg.hermite_columns(e)
        flat = tuple(x for row in h for x in row)
        if best is None or flat < best[0]:
            best = (flat, order, u)
    return best


def canonical_form(s):
    """Lex-min column HNF of the edge matrix over all vertex orders."""
    if not isinstance(s, LatticeSimplex):
        s = LatticeSimplex(s)
    return CanonicalForm(_canonical(s)[0], s.ambient_dim)


@dataclass(frozen=True)
class Equivalence:
    equivalent: bool
    witness: UnimodularMap = None

    def __bool__(self):
        return self.equivalent


def are_equivalent(s1, s2):
    """Unimodular equivalence with a verified witness sending ``s1`` onto ``s2``."""
    s1 = s1 if isinstance(s1, LatticeSimplex) else LatticeSimplex(s1)
    s2 = s2 if isinstance(s2, LatticeSimplex) else LatticeSimplex(s2)
    if s1.ambient_dim != s2.ambient_dim:
        raise DimensionMismatch("simplices live in different dimensions")
    if s1.normalized_volume != s2.normalized_volume:
        return Equivalence(False)
    t1, o1, u1 = _canonical(s1)
    t2, o2, u2 = _canonical(s2)
    if t1 != t2:
        return Equivalence(False)
    mat = linalg.matmul(u1, linalg.int_inverse(u2))
    b1, b2 = s1.vertices[o1[0]], s2.vertices[o2[0]]
    m = UnimodularMap(mat, linalg.sub(b2, linalg.vecmat(b1, mat)))
    if apply(m, s1).vertex_set != s2.vertex_set:
        raise InvariantViolation("canonical witness does not map s1 onto s2")
    return Equivalence(True, m)


def brute_force_equivalent(s1, s2):
    """Equivalence by trying every vertex bijection; independent of the HNF path."""
    d = s1.ambient_dim
    v1, v2 = s1.vertices, s2.vertices
    e1 = [list(linalg.sub(v, v1[0])) for v in v1[1:]]
    inv = linalg.inverse(e1)
    for sigma in permutations(range(d + 1)):
        b = v2[sigma[0]]
        e2 = [list(linalg.sub(v2[i], b)) for i in sigma[1:]]
        m = linalg.matmul(inv, e2)
        if all(x.denominator == 1 for row in m for x in row):
            m = [[int(x) for x in row] for row in m]
            if linalg.det(m) in (1, -1):
                return True
    return False


def random_simplex_images(s, count, seed=1729):
    rng = random.Random(seed)
    return [apply(random_unimodular(rng, s.ambient_dim), s) for _ in range(count)]
