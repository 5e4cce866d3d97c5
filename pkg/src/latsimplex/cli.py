"""Command line front end.

Exit codes: 0 verified, 1 error or violated claim, 2 evidence only
(open conjectures), 64 usage error.
"""

import argparse
from dataclasses import dataclass, field
from fractions import Fraction
import json
import sys

from . import io
from .core import random_corpus
from .errors import LatticeError
from .lawson import lawson_partition, lawson_triangulations, radon_point
from .picktype import (
    kk_volume,
    macdonald_volume,
    pick_inequality_check,
    pick_volume,
    reeve_volume,
)
from .search import delta_identity_check, max_volume_search, verify_minimal_classification
from .triangulation import refinement_sequence, validate_triangulation
from .unimodular import are_equivalent, canonical_form

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_EVIDENCE = 2
EXIT_USAGE = 64

DEFAULT_SEED = 1729


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class RunConfig:
    command: str
    paths: list = field(default_factory=list)
    json: bool = False
    options: dict = field(default_factory=dict)


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (tuple, list)):
        return [_jsonable(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return x


def _dump(obj):
    return json.dumps(_jsonable(obj), sort_keys=True)


def _table(rows):
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k + ':':<{width + 1}} {v}" for k, v in rows)


def _fmt(x):
    if isinstance(x, bool):
        return "true" if x else "false"
    return str(x)


# subcommands return (exit code, json-ready dict, text rows)

def cmd_volume(cfg):
    p = io.load_polytope(cfg.paths[0])
    out = {"normalized_volume": p.normalized_volume, "volume": p.volume}
    return EXIT_OK, out, list(out.items())


def cmd_points(cfg):
    p = io.load_polytope(cfg.paths[0])
    c = p.census
    out = {
        "interior": c.k,
        "boundary_nonvertex": len(c.boundary_nonvertex),
        "vertices": c.vertex_count,
        "clean": c.is_clean,
    }
    rows = list(out.items())
    if cfg.options.get("list"):
        out["interior_points"] = [list(x) for x in c.interior]
        out["boundary_points"] = [list(x) for x in c.boundary_nonvertex]
        rows += [("interior_points", out["interior_points"]),
                 ("boundary_points", out["boundary_points"])]
    return EXIT_OK, out, rows


def cmd_lawson(cfg):
    points = io.load_points(cfg.paths[0])
    part = lawson_partition(points)
    part.validate(points)
    tris = lawson_triangulations(points)
    sizes = {f"T{j}": len(t) for j, t in tris}
    valid = all(validate_triangulation(t).valid for _, t in tris)
    out = {
        "partition": part.to_dict(),
        "sizes": list(part.sizes),
        "radon_point": list(radon_point(part, points)),
        "triangulations": sizes,
        "valid": valid,
    }
    rows = [
        ("A0", list(part.a0)),
        ("A1", list(part.a1)),
        ("A2", list(part.a2)),
        ("alphas", " ".join(str(a) for a in part.alphas)),
        ("sizes", tuple(part.sizes)),
        ("radon_point", "(" + ", ".join(str(x) for x in radon_point(part, points)) + ")"),
        ("triangulations", " ".join(str(v) for v in sizes.values())),
        ("valid", valid),
    ]
    return (EXIT_OK if valid else EXIT_FAIL), out, rows


def cmd_refine(cfg):
    s = io.load_polytope(cfg.paths[0])
    t, trace = refinement_sequence(s)
    rep = validate_triangulation(t)
    d = s.ambient_dim
    k = s.census.k
    out = {
        "sizes": trace.sizes,
        "order": [list(w) for w in trace.order],
        "j": [st.j for st in trace.stages],
        "cells": len(t),
        "floor": d * k + 1,
        "valid": rep.valid,
        "full": rep.full,
        "triangulation": t.to_dict(),
    }
    rows = [(key, out[key]) for key in ("sizes", "j", "cells", "floor", "valid", "full")]
    ok = rep.valid and rep.full and len(t) >= d * k + 1
    return (EXIT_OK if ok else EXIT_FAIL), out, rows


def cmd_canonical(cfg):
    s = io.load_polytope(cfg.paths[0])
    tag = canonical_form(s)
    return EXIT_OK, {"tag": list(tag.tag)}, [("tag", str(tag))]


def cmd_equiv(cfg):
    s1, s2 = (io.load_polytope(p) for p in cfg.paths)
    res = are_equivalent(s1, s2)
    out = {"equivalent": res.equivalent}
    rows = [("equivalent", res.equivalent)]
    if res:
        out.update(res.witness.to_dict())
        rows += [("matrix", out["matrix"]), ("translation", out["translation"])]
    return (EXIT_OK if res else EXIT_FAIL), out, rows


FORMULAS = ("pick", "reeve", "macdonald", "kk")


def cmd_pick_check(cfg):
    p = io.load_polytope(cfg.paths[0])
    if cfg.options["formula"] == "all":
        names = {2: ("pick",), 3: ("reeve",)}.get(p.ambient_dim, ()) + ("macdonald", "kk")
    else:
        names = (cfg.options["formula"],)
    n = cfg.options.get("n") or 2
    det_vol = p.volume
    results = {}
    for name in names:
        if name == "pick":
            results[name] = pick_volume(p)
        elif name == "reeve":
            results[name] = reeve_volume(p, n)
        elif name == "macdonald":
            results[name] = macdonald_volume(p)
        else:
            results[name] = kk_volume(p)
    ok = all(v == det_vol for v in results.values())
    out = {"determinant_volume": det_vol, "formulas": results, "agree": ok}
    rows = [(f"{k}_volume", v) for k, v in results.items()]
    rows += [("determinant_volume", det_vol), ("agree", ok)]
    if p.ambient_dim == 3 and p.census.k >= 1:
        ineq = pick_inequality_check(p)
        out["inequality"] = {"bound": ineq.bound, "satisfied": ineq.satisfied, "tight": ineq.tight}
        rows += [("pick_bound", ineq.bound), ("bound_satisfied", ineq.satisfied),
                 ("bound_tight", ineq.tight)]
        ok = ok and ineq.satisfied
    return (EXIT_OK if ok else EXIT_FAIL), out, rows


def cmd_minimal_classify(cfg):
    o = cfg.options
    res = verify_minimal_classification(o["d"], o["k"], jobs=o["jobs"])
    out = res.to_dict()
    rows = [(key, out[key]) for key in ("d", "k", "verified", "classes", "candidates", "survivors")]
    return (EXIT_OK if res.verified else EXIT_FAIL), out, rows


def cmd_search_max(cfg):
    o = cfg.options
    k = o["k"]
    n_max = o["n_max"] if o["n_max"] is not None else 12 * k + 8
    res = max_volume_search(k, n_max, jobs=o["jobs"])
    out = res.to_dict()
    rows = [(key, out[key]) for key in (
        "k", "n_max", "max_volume", "bound", "within_bound", "matches_conjectured_class",
        "collinear", "line_misses_vertices", "ziegler_ok", "evidence_only")]
    rows.append(("classes", len(res.report.classes)))
    rows.append(("maximizers", out["max_classes"]))
    if o.get("ledger"):
        with open(o["ledger"], "w", encoding="utf-8") as fh:
            fh.write(_dump(out) + "\n")
    if res.evidence_only:
        code = EXIT_EVIDENCE
    else:
        code = EXIT_OK if res.verified and res.ziegler_ok else EXIT_FAIL
    return code, out, rows


def cmd_identity_check(cfg):
    o = cfg.options
    res = delta_identity_check(o["p"], o["q"], o["r"])
    out = {
        "p": res.p, "q": res.q, "r": res.r, "lhs": res.lhs, "rhs": res.rhs,
        "column_counts": list(res.column_counts), "columns_match": res.columns_match,
        "holds": res.holds,
    }
    rows = list(out.items())
    return (EXIT_OK if res.holds else EXIT_FAIL), out, rows


def cmd_fuzz(cfg):
    o = cfg.options
    bad = []
    corpus = random_corpus(o["count"], seed=o["seed"])
    for i, p in enumerate(corpus):
        vol = p.volume
        vals = [macdonald_volume(p), kk_volume(p)]
        vals += [pick_volume(p)] if p.ambient_dim == 2 else [reeve_volume(p, 2), reeve_volume(p, 3)]
        if any(v != vol for v in vals):
            bad.append(i)
    out = {"count": len(corpus), "seed": o["seed"], "mismatches": bad}
    rows = list(out.items())
    return (EXIT_FAIL if bad else EXIT_OK), out, rows


def cmd_fixtures(cfg):
    paths = io.emit_fixture_suite(cfg.paths[0])
    return EXIT_OK, {"written": paths}, [("written", len(paths))]


COMMANDS = {
    "volume": cmd_volume,
    "points": cmd_points,
    "lawson": cmd_lawson,
    "refine": cmd_refine,
    "canonical": cmd_canonical,
    "equiv": cmd_equiv,
    "pick-check": cmd_pick_check,
    "minimal-classify": cmd_minimal_classify,
    "search-max": cmd_search_max,
    "identity-check": cmd_identity_check,
    "fuzz": cmd_fuzz,
    "fixtures": cmd_fixtures,
}


def _at_least(low):
    def convert(text):
        value = int(text)
        if value < low:
            raise argparse.ArgumentTypeError(f"must be an integer >= {low}")
        return value
    return convert


_positive = _at_least(1)


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a single JSON object")
    parser = _Parser(prog="latsimplex", description="Exact lattice simplex toolkit.",
                     parents=[common])
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    def add(name, help_text):
        return sub.add_parser(name, help=help_text, parents=[common])

    for name, text in (("volume", "normalized and Euclidean volume"),
                       ("points", "lattice point census"),
                       ("lawson", "Lawson partition of d+2 points"),
                       ("refine", "refinement sequence of a clean simplex"),
                       ("canonical", "canonical form tag of a simplex")):
        sp = add(name, text)
        sp.add_argument("file")
        if name == "points":
            sp.add_argument("--list", action="store_true", help="also list the points")
    sp = add("equiv", "unimodular equivalence of two simplices")
    sp.add_argument("file", nargs=2)
    sp = add("pick-check", "Pick-type volume formulas")
    sp.add_argument("file")
    sp.add_argument("--formula", choices=FORMULAS + ("all",), default="all")
    sp.add_argument("--n", type=_at_least(2), default=None, help="dilation for reeve")
    sp = add("minimal-classify", "uniqueness of the minimal-volume class")
    sp.add_argument("--d", type=int, choices=(3, 4, 5), required=True)
    sp.add_argument("--k", type=int, choices=(1, 2, 3, 4), required=True)
    sp.add_argument("--jobs", type=_positive, default=1)
    sp = add("search-max", "maximal-volume clean k-point tetrahedra")
    sp.add_argument("--k", type=_positive, required=True)
    sp.add_argument("--n-max", type=_positive, default=None)
    sp.add_argument("--jobs", type=_positive, default=1)
    sp.add_argument("--ledger", help="also write the JSON report to this path")
    sp = add("identity-check", "ceiling-sum identities for Delta_{p,q,r}")
    sp.add_argument("--p", type=_positive, required=True)
    sp.add_argument("--q", type=_positive, required=True)
    sp.add_argument("--r", type=_positive, default=1)
    sp = add("fuzz", "formula agreement on a random polytope corpus")
    sp.add_argument("--count", type=_positive, default=200)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp = add("fixtures", "write the fixture suite")
    sp.add_argument("directory")
    return parser


def parse_config(argv):
    ns = build_parser().parse_args(argv)
    opts = {k: v for k, v in vars(ns).items() if k not in ("command", "json", "file", "directory")}
    paths = []
    for key in ("file", "directory"):
        value = getattr(ns, key, None)
        if value is not None:
            paths.extend(value if isinstance(value, list) else [value])
    return RunConfig(ns.command, paths, ns.json, opts)


def run(cfg):
    """Execute a config; returns ``(exit code, output text)``."""
    code, out, rows = COMMANDS[cfg.command](cfg)
    if cfg.json:
        return code, _dump(out)
    return code, _table([(k, _fmt(v)) for k, v in rows])


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return exc.code or 0
    try:
        code, text = run(cfg)
    except (LatticeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
