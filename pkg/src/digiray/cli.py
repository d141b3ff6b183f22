"""Command line interface: ``digiray <command> ...``.

Exit codes: 0 success, 1 a check failed, 2 usage or invalid parameters,
3 an input file violates its schema.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .constructions import CONSTRUCTIONS, BadScale, NotPowerOfTwo, build_construction
from .discrepancy import NonPositiveM, discrepancy_star
from .grid import PROPER, WEAK, SchemaError, TreeError, census, tree_from_json, tree_to_json, verify_axioms
from .highdim import OddN, probe_report_json
from .mapping import NotDecomposable, compute_aux, staircase_decompose, transform_pi, validate_mapping
from .metrics import POLYLINE, VERTICES, frontier, frontier_to_csv, hausdorff_tree, kappa2
from .points import EXACT, FLOAT, BicoloredPointSet, pointset_from_csv, pointset_to_csv
from .render import POINTSET, SUBJECTS, TREE, RenderSpec, render_heatmap, render_pointset, render_tree
from .staircase import greedy_band_k, greedy_stair_between, symmetric_staircases

EXIT_OK = 0
EXIT_CHECK = 1
EXIT_USAGE = 2
EXIT_SCHEMA = 3


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError("cannot read %s: %s" % (path, exc.strerror)) from None


def _write(path, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError("cannot write %s: %s" % (path, exc.strerror)) from None


def _fraction_json(v) -> str:
    return str(Fraction(v)) if not isinstance(v, float) else repr(v)


def cmd_build(args) -> int:
    if args.n < 0:
        raise UsageError("--n must be nonnegative")
    tree = build_construction(args.construction, args.n, dim=args.dim, c=args.c, seed=args.seed, leaf_rate=args.leaf_rate)
    _write(args.out, tree_to_json(tree))
    return EXIT_OK


def cmd_verify(args) -> int:
    tree = tree_from_json(_read(args.tree))
    rep = verify_axioms(tree, args.mode)
    flags = " ".join("S%d=%s" % (k, "ok" if getattr(rep, "s%d_ok" % k) else "FAIL") for k in range(1, 6))
    print("mode: %s  vertices: %d  %s" % (rep.mode, rep.n_vertices, flags))
    if rep.passed:
        if rep.s4_violators:
            print("inner leaves (allowed in weak mode): %d" % rep.n_violators)
        print("verify: ok")
        return EXIT_OK
    if not rep.s4_ok and args.mode == PROPER:
        print("S4 violators (%d):" % rep.n_violators)
        for v in rep.s4_violators:
            print("  %s" % (v,))
    print("verify: FAILED")
    return EXIT_CHECK


def cmd_metrics(args) -> int:
    tree = tree_from_json(_read(args.tree))
    res = hausdorff_tree(tree, args.scope, args.kind)
    cen = census(tree)
    doc = {
        "construction": tree.meta.get("construction", "unknown"),
        "n": tree.n_max,
        "dim": tree.dim,
        "kind": args.kind,
        "scope": args.scope,
        "error": str(res.value),
        "error_float": float(res.value),
        "witness_ray": list(res.witness_ray),
        "witness_location": res.witness_location,
        "kappa1": len(cen.inner_leaves),
        "kappa2": kappa2(tree, cen.inner_leaves),
    }
    _write(args.out, json.dumps(doc, indent=2) + "\n")
    return EXIT_OK


def cmd_map(args) -> int:
    tree = tree_from_json(_read(args.tree))
    if tree.dim != 2:
        raise UsageError("map needs a 2D tree, got dim=%d" % tree.dim)
    aux = compute_aux(tree)
    ps = transform_pi(tree, aux)
    if args.float:
        ps = ps.as_float()
    _write(args.out, pointset_to_csv(ps, FLOAT if args.float else EXACT))
    if args.check:
        rep = validate_mapping(tree, aux)
        for name in rep.CHECKS:
            print("%-16s %s" % (name, "ok" if getattr(rep, name) else "FAIL"), file=sys.stderr)
        if not rep.passed:
            for name, found in sorted(rep.counterexamples.items()):
                for c in found:
                    print("counterexample %s: %s" % (name, c), file=sys.stderr)
            return EXIT_CHECK
    return EXIT_OK


def cmd_discrepancy(args) -> int:
    ps = pointset_from_csv(_read(args.pointset))
    res = discrepancy_star(ps.blue, ps.red)
    x, y, closure = res.witness
    if args.json:
        doc = {
            "m": ps.m,
            "value": _fraction_json(res.value),
            "value_float": float(res.value),
            "sign": res.sign,
            "witness": [_fraction_json(x), _fraction_json(y)],
            "closure": list(closure),
        }
        print(json.dumps(doc, indent=2))
    else:
        print("m: %d" % ps.m)
        print("D*: %s (%.12g)" % (_fraction_json(res.value), float(res.value)))
        print("witness: x=%s y=%s sign=%+d" % (_fraction_json(x), _fraction_json(y), res.sign))
        print("closure: x %s, y %s" % closure)
    return EXIT_OK


def cmd_staircase(args) -> int:
    if args.m < 1:
        raise UsageError("--m must be at least 1")
    if args.xi is None:
        ps = symmetric_staircases(args.m)
    else:
        if args.xi < 1:
            raise UsageError("--xi must be at least 1")
        blue, red = [], []
        for i in range(args.xi + 1, args.m + 1):
            if greedy_band_k(args.m, i, args.xi) == 0:
                continue
            st = greedy_stair_between(args.m, i, args.xi)
            blue.extend(st.blue)
            red.extend(st.red)
        ps = BicoloredPointSet(tuple(blue), tuple(red), FLOAT)
    _write(args.out, pointset_to_csv(ps, FLOAT))
    return EXIT_OK


def cmd_frontier(args) -> int:
    trees = [tree_from_json(_read(p)) for p in args.trees]
    _write(args.out, frontier_to_csv(frontier(trees, args.kind)))
    return EXIT_OK


def cmd_render(args) -> int:
    spec = RenderSpec(args.subject, size=args.size, heat_cells=args.cells)
    text = _read(args.input)
    if args.subject == TREE:
        svg = render_tree(tree_from_json(text), spec)
    else:
        ps = pointset_from_csv(text)
        if args.subject == POINTSET:
            try:
                stairs = staircase_decompose(ps)
            except NotDecomposable:
                stairs = []
            svg = render_pointset(ps, spec, stairs)
        else:
            svg = render_heatmap(ps, spec)
    _write(args.out, svg)
    return EXIT_OK


def cmd_probe(args) -> int:
    tree = tree_from_json(_read(args.tree))
    if tree.dim < 3:
        raise UsageError("probe needs a tree of dimension at least 3")
    _write(args.out, probe_report_json(tree))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="digiray", description="Consistent digital rays, their error and discrepancy.")
    p.add_argument("--version", action="version", version="%(prog)s " + __version__)
    sub = p.add_subparsers(dest="command", metavar="command")
    sub.required = True

    b = sub.add_parser("build", help="construct a tree and write it as JSON")
    b.add_argument("construction", choices=CONSTRUCTIONS)
    b.add_argument("--n", type=int, required=True, help="outer layer N")
    b.add_argument("--dim", type=int, default=2)
    b.add_argument("--c", type=int, default=1, help="scale for the tradeoff construction")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--leaf-rate", type=float, default=0.5, help="inner-leaf rate for random-weak")
    b.add_argument("--out", "-o")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="check the axioms of a tree")
    v.add_argument("tree")
    v.add_argument("--mode", choices=(PROPER, WEAK), default=PROPER)
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("metrics", help="exact Hausdorff error and inner-leaf counts")
    m.add_argument("tree")
    m.add_argument("--kind", choices=(POLYLINE, VERTICES), default=POLYLINE)
    m.add_argument("--scope", choices=("all", "boundary"), default="all")
    m.add_argument("--out", "-o")
    m.set_defaults(func=cmd_metrics)

    mp = sub.add_parser("map", help="map a 2D tree to a bicolored point set (CSV)")
    mp.add_argument("tree")
    mp.add_argument("--float", action="store_true", help="write float coordinates")
    mp.add_argument("--check", action="store_true", help="validate the mapping")
    mp.add_argument("--out", "-o")
    mp.set_defaults(func=cmd_map)

    d = sub.add_parser("discrepancy", help="exact bichromatic star discrepancy of a point set")
    d.add_argument("pointset")
    d.add_argument("--json", action="store_true")
    d.set_defaults(func=cmd_discrepancy)

    s = sub.add_parser("staircase", help="staircase point sets")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--xi", type=int, help="greedy stairs in bands of width 2*xi-1 instead of the symmetric set")
    s.add_argument("--out", "-o")
    s.set_defaults(func=cmd_staircase)

    f = sub.add_parser("frontier", help="error versus inner leaves for several trees (CSV)")
    f.add_argument("trees", nargs="+")
    f.add_argument("--kind", choices=(POLYLINE, VERTICES), default=POLYLINE)
    f.add_argument("--out", "-o")
    f.set_defaults(func=cmd_frontier)

    r = sub.add_parser("render", help="SVG figure of a tree, point set or discrepancy heatmap")
    r.add_argument("subject", choices=SUBJECTS)
    r.add_argument("input")
    r.add_argument("--size", type=int, default=512)
    r.add_argument("--cells", type=int, default=128, help="heatmap resolution")
    r.add_argument("--out", "-o")
    r.set_defaults(func=cmd_render)

    pr = sub.add_parser("probe", help="plane restriction and packing witness of a d-dimensional tree (JSON)")
    pr.add_argument("tree")
    pr.add_argument("--out", "-o")
    pr.set_defaults(func=cmd_probe)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SchemaError as exc:
        print("digiray: schema error: %s" % exc, file=sys.stderr)
        return EXIT_SCHEMA
    except (UsageError, NotPowerOfTwo, BadScale, OddN, NonPositiveM, TreeError, ValueError) as exc:
        print("digiray: %s: %s" % (type(exc).__name__, exc), file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
