"""Polytope files and the fixture suite.

A polytope file is a JSON object ``{"dim": d, "vertices": [[int, ...], ...]}``.
"""

import json
import os

from .core import LatticePolytope, LatticeSimplex, affine_hull_dim
from .errors import DimensionMismatch, PolytopeParseError
from .unimodular import make_S_d_k, make_T, make_delta_pq, make_reeve


def _locate(text, needle, start=0):
    pos = text.find(needle, start)
    if pos < 0:
        return None, None
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def parse_points(text):
    """Parse the JSON text of a polytope file into ``(dim, points)``."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PolytopeParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(data, dict):
        raise PolytopeParseError("top level must be an object", 1, 1)
    for key in ("dim", "vertices"):
        if key not in data:
            raise PolytopeParseError(f"missing key {key!r}", 1, 1)
    dim = data["dim"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise PolytopeParseError("'dim' must be a positive integer", *_locate(text, '"dim"'))
    verts = data["vertices"]
    vline, vcol = _locate(text, '"vertices"')
    if not isinstance(verts, list) or not verts:
        raise PolytopeParseError("'vertices' must be a nonempty list", vline, vcol)
    points = []
    pos = text.find("[", text.find('"vertices"'))
    for i, v in enumerate(verts):
        pos = text.find("[", pos + 1)
        line, col = _locate(text, "[", pos) if pos >= 0 else (vline, vcol)
        if not isinstance(v, list) or len(v) != dim:
            raise PolytopeParseError(f"vertex {i} must be a list of {dim} integers", line, col)
        if any(isinstance(c, bool) or not isinstance(c, int) for c in v):
            raise PolytopeParseError(f"vertex {i} has a non-integer coordinate", line, col)
        points.append(tuple(v))
        pos = text.find("]", pos)
    return dim, points


def polytope_from_points(points):
    """Simplex when there are ``d+1`` points, else a polytope; must be full-dimensional."""
    d = len(points[0])
    if affine_hull_dim(points) != d:
        raise DimensionMismatch(f"the points do not span a {d}-dimensional polytope")
    if len(points) == d + 1:
        return LatticeSimplex(points)
    return LatticePolytope(points)


def parse_polytope(text):
    _, points = parse_points(text)
    try:
        return polytope_from_points(points)
    except ValueError as exc:
        raise PolytopeParseError(str(exc)) from exc


def read_text(path):
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def load_polytope(path):
    return parse_polytope(read_text(path))


def load_points(path):
    return parse_points(read_text(path))[1]


def dump_polytope(p):
    return json.dumps({"dim": p.ambient_dim, "vertices": [list(v) for v in p.vertices]})


def _cube(side, d=3):
    corners = [()]
    for _ in range(d):
        corners = [c + (x,) for c in corners for x in (0, side)]
    return LatticePolytope(corners)


def _cross(d):
    pts = []
    for i in range(d):
        for s in (1, -1):
            pts.append(tuple(s * int(i == j) for j in range(d)))
    return LatticePolytope(pts)


def fixture_suite():
    """Name to polytope-or-point-list mapping for the canonical examples."""
    fx = {}
    for k in (1, 2, 3):
        fx[f"s3k{k}"] = make_S_d_k(3, k)
    fx["s4k1"] = make_S_d_k(4, 1)
    fx["t_3_3_4"] = make_T((3, 3, 4))
    fx["t_6_6_7"] = make_T((6, 6, 7))
    fx["t_3_7_20"] = make_T((3, 7, 20))
    fx["t_5_11_32"] = make_T((5, 11, 32))
    fx["delta_2_4"] = make_delta_pq(2, 4)
    for n in range(5, 11):
        fx[f"reeve{n}"] = make_reeve(n)
    fx["unit3"] = LatticeSimplex([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
    fx["cube"] = _cube(1)
    fx["cube2"] = _cube(2)
    fx["cross2"] = _cross(2)
    fx["cross3"] = _cross(3)
    fx["bipyramid"] = [(0, 0, 1), (1, 0, 0), (0, 1, 0), (-1, -1, 0), (0, 0, -1)]
    fx["pyramid"] = [(0, 0, 1), (1, 0, 0), (0, 1, 0), (-1, 0, 0), (0, -1, 0)]
    fx["s3k1_origin"] = list(make_S_d_k(3, 1).vertices) + [(0, 0, 0)]
    return fx


def emit_fixture_suite(directory):
    """Write every fixture as ``<name>.json`` into ``directory``; returns the paths."""
    os.makedirs(directory, exist_ok=True)
    paths = []
    for name, obj in sorted(fixture_suite().items()):
        verts = obj.vertices if isinstance(obj, LatticePolytope) else obj
        doc = {"dim": len(verts[0]), "vertices": [list(v) for v in verts]}
        path = os.path.join(directory, f"{name}.json")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(doc) + "\n")
        paths.append(path)
    return paths
