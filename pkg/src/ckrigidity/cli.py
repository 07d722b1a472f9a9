"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from . import action as act_mod
from . import coxeter, geodesic, rigidity, treedomain
from .complex import (MAX_DEPTH, MAX_RANGE, GeomData, GeometryError, GluingLine, block_dot,
                      blocks, build_nerve, link_girth, nerve_dot)

SCHEMA = "ckrigidity-report/1"
OK, FAILED, BAD_INPUT = 0, 1, 2
MAX_WORD_LEN = 6


class InputError(ValueError):
    pass


def _load_geom(path):
    if path is None:
        return GeomData()
    p = Path(path)
    if not p.exists():
        raise InputError(f"geometry file {path} not found")
    try:
        return GeomData.from_json(json.loads(p.read_text()))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc})") from exc


def _caps(depth, line_range):
    if not 0 <= depth <= MAX_DEPTH:
        raise InputError(f"depth {depth} exceeds the cap {MAX_DEPTH}")
    if not 0 <= line_range <= MAX_RANGE:
        raise InputError(f"range {line_range} exceeds the cap {MAX_RANGE}")


def _positive(value, name):
    if value <= 0:
        raise InputError(f"{name} must be positive")


def _json_default(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if isinstance(obj, tuple):
        return list(obj)
    if hasattr(obj, "item"):
        return obj.item()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _emit(args, command, config, result, summary):
    doc = {"schema": SCHEMA, "command": command, "version": __version__,
           "config": config, "result": result}
    text = json.dumps(doc, indent=2, sort_keys=True, default=_json_default) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    if args.json:
        sys.stdout.write(text)
    else:
        for line in summary:
            print(line)


def _write_dot(path, text):
    if path:
        Path(path).write_text(text)


# -- subcommands ---------------------------------------------------------------

def cmd_group(args):
    graph = coxeter.DefiningGraph.from_json(args.graph) if args.graph else coxeter.fig7_graph()
    if args.ball > MAX_WORD_LEN + 2:
        raise InputError(f"ball radius is capped at {MAX_WORD_LEN + 2}")
    sizes = coxeter.ball_sizes(graph, args.ball)
    result = {"graph": graph.to_json(), "ball_sizes": sizes,
              "finite": coxeter.is_finite(graph),
              "chordless_four_cycles": len(coxeter.chordless_four_cycles(graph)),
              "diamonds": [list(d) for d in act_mod.diamonds(graph)]}
    if args.word is not None:
        w = coxeter.parse_word(args.word)
        result["word"] = list(w)
        result["normal_form"] = list(coxeter.normal_form(graph, w))
    _emit(args, "group", {"graph": args.graph, "ball": args.ball, "word": args.word}, result,
          [f"ball sizes: {sizes}"] + ([f"normal form: {','.join(result['normal_form']) or '1'}"]
                                      if args.word is not None else []))
    return OK


def cmd_nerve(args):
    _caps(args.depth, args.range)
    geom = _load_geom(args.geom)
    nerve = build_nerve(geom, args.depth, args.range)
    bt = blocks(nerve)
    labels = {}
    for n in nerve.nodes.values():
        labels[n.label] = labels.get(n.label, 0) + 1
    result = {"nodes": len(nerve), "labels": labels, "blocks": len(bt.blocks),
              "barriers": len(bt.barriers), "block_tree_is_tree": bt.is_tree(),
              "link_girth_pi": {"line": str(link_girth(geom, GluingLine(nerve.root, "b", 0))),
                                "vertex": str(link_girth(geom, "vertex"))}}
    _write_dot(args.dot, nerve_dot(nerve))
    _write_dot(args.blocks_dot, block_dot(bt))
    _emit(args, "nerve", {"geom": geom.to_json(), "depth": args.depth, "range": args.range}, result,
          [f"{result['nodes']} flats, {result['blocks']} blocks, {result['barriers']} barriers"])
    return OK if bt.is_tree() and result["link_girth_pi"]["vertex"] == "2" else FAILED


def cmd_rigidity(args):
    _positive(args.tol, "tol")
    _positive(args.samples, "samples")
    result, ok, summary = {}, True, []
    if args.case_matrix:
        cm = rigidity.key_lemma_case_matrix(args.samples, args.seed, args.tol)
        result["case_matrix"] = cm
        ok &= cm["consistent"] and cm["feasible_cells"] == [[2, 2]]
        summary.append(f"feasible cells: {cm['feasible_cells']}")
    thetas = [Fraction(k, 12) for k in range(1, 7)] if args.sweep else []
    if args.theta is not None:
        thetas.append(rigidity.check_angle(args.theta))
    if not thetas and not args.case_matrix:
        thetas = [Fraction(1, 2)]
    reports = [rigidity.rigidity_report(t, samples=min(args.samples, 10_000), seed=args.seed,
                                        tol=args.tol) for t in thetas]
    for r in reports:
        right = Fraction(r["theta_pi"]) == Fraction(1, 2)
        ok &= r["feasible"] == right and r["exact_scan_matches"]
        summary.append(f"theta = {r['theta_pi']} pi: {'feasible' if r['feasible'] else 'infeasible'}")
    if reports:
        result["reports"] = reports
        result["feasible_thetas"] = [r["theta_pi"] for r in reports if r["feasible"]]
    _emit(args, "rigidity", {"seed": args.seed, "samples": args.samples, "tol": args.tol,
                             "sweep": args.sweep, "theta": args.theta,
                             "case_matrix": args.case_matrix}, result, summary)
    return OK if ok else FAILED


def cmd_action(args):
    _caps(args.depth, args.range)
    geom = _load_geom(args.geom)
    action = act_mod.build_w_action(geom, depth=args.depth, line_range=args.range)
    result, ok, summary = {"flats": len(action.reps)}, True, []
    if args.verify:
        rel = act_mod.verify_relations(action, per_axis=args.points)
        inv = act_mod.invariants_report(action)
        result["relations"] = rel
        result["invariants"] = {"ok": inv["ok"], "violations": [list(v) for v in inv["violations"]]}
        good = rel["holds"] and rel["gluing"]["failures"] == 0 and inv["ok"]
        ok &= good
        summary.append(f"relations hold: {rel['holds']} (max discrepancy {rel['max_discrepancy']})")
    if args.stabilizer is not None:
        if args.stabilizer not in action.nerve.nodes:
            raise InputError(f"flat {args.stabilizer} is not in the truncation")
        if args.maxlen > MAX_WORD_LEN:
            raise InputError(f"maxlen is capped at {MAX_WORD_LEN}")
        st = act_mod.flat_stabilizer(action, args.stabilizer, args.maxlen)
        cfg = act_mod.stabilizer_configuration(action, args.stabilizer)
        result["stabilizer"] = {k: v for k, v in st.items() if k != "elements"}
        result["stabilizer"]["configuration"] = cfg.describe()
        result["stabilizer"]["configuration_valid"] = cfg.is_valid()
        summary.append(f"stabilizer of flat {args.stabilizer}: <{', '.join(st['special_subgroup'])}>"
                       f" ({st['count']} elements up to length {args.maxlen})")
    if args.geometricity:
        if args.maxlen > MAX_WORD_LEN:
            raise InputError(f"maxlen is capped at {MAX_WORD_LEN}")
        deep = act_mod.build_w_action(geom, depth=max(args.depth, 3), line_range=args.range)
        gc = act_mod.geometricity_check(deep, max_len=args.maxlen)
        result["geometricity"] = gc
        ok &= gc["cocompact"] and gc["proper"]
        summary.append(f"cocompact: {gc['cocompact']}, overlap counts {gc['overlap_counts']}")
    if args.dual is not None:
        if not 0 <= args.dual <= 3:
            raise InputError("dual radius must be in 0..3")
        deep = act_mod.build_w_action(geom, depth=max(args.depth, args.dual + 1),
                                      line_range=max(args.range, 1))
        cmp = act_mod.compare_dual_with_cayley(deep, args.dual)
        result["dual"] = cmp
        ok &= cmp["isomorphic"] and cmp["multiplicities"] in ([2], [])
        summary.append(f"dual ball of radius {args.dual} isomorphic to Cayley ball: {cmp['isomorphic']}")
    _emit(args, "action", {"geom": geom.to_json(), "depth": args.depth, "range": args.range,
                           "maxlen": args.maxlen}, result, summary)
    return OK if ok else FAILED


def cmd_geodesic(args):
    _caps(args.depth, args.range)
    _positive(args.tol, "tol")
    geom = _load_geom(args.geom)
    nerve = build_nerve(geom, args.depth, args.range)
    bt = blocks(nerve)
    p = geodesic.PointRef.parse(args.source)
    result, summary = {}, []
    if args.pole:
        _positive(args.radius, "radius")
        kind = args.pole[0]
        if kind not in "bc" or p.flat not in nerve.nodes:
            raise InputError(f"pole {args.pole} or flat {p.flat} unavailable")
        try:
            block = bt.block_of(p.flat, kind)
        except KeyError as exc:
            raise InputError(str(exc)) from exc
        ray = geodesic.ray_toward_pole(nerve, bt, p, block, args.pole)
        result["ray"] = ray.to_json()
        result["itinerary"] = geodesic.itinerary(nerve, bt, ray, args.radius)
        summary.append(f"ray itinerary: {result['itinerary']}")
    if args.target:
        q = geodesic.PointRef.parse(args.target)
        path = geodesic.geodesic(nerve, p, q, args.tol)
        result.update(length=path.length, crossings=list(path.crossings),
                      flats=list(path.chain.flats),
                      itinerary=geodesic.itinerary(nerve, bt, path))
        summary.append(f"length {path.length:.12g} through flats {list(path.chain.flats)}")
        if args.mesh:
            _positive(args.mesh, "mesh")
            m = geodesic.mesh_length(nerve, p, q, args.mesh)
            result["mesh"] = {"h": args.mesh, "length": m, "gap": m - path.length}
            summary.append(f"mesh length {m:.12g} (h = {args.mesh})")
    if not result:
        raise InputError("give --to and/or --pole")
    ok = "mesh" not in result or (-3 * args.tol <= result["mesh"]["gap"] <= 2 * args.mesh)
    _emit(args, "geodesic", {"geom": geom.to_json(), "depth": args.depth, "range": args.range,
                             "from": args.source, "to": args.target, "tol": args.tol,
                             "mesh": args.mesh, "pole": args.pole, "radius": args.radius},
          result, summary)
    return OK if ok else FAILED


def cmd_domain(args):
    _caps(args.depth, args.range)
    if args.maxlen > MAX_WORD_LEN:
        raise InputError(f"maxlen is capped at {MAX_WORD_LEN}")
    geom = _load_geom(args.geom)
    action = act_mod.build_w_action(geom, depth=args.depth, line_range=args.range)
    ta = treedomain.induced_tree_action(action)
    K = treedomain.strict_fundamental_domain(ta, args.maxlen)
    result = K.to_json()
    result["fixed_sets"] = {s: sorted(treedomain.fixed_set(ta, (s,)).nodes) for s in ta.generators}
    result["fixed_sets_meet_domain"] = treedomain.fixed_sets_meet_domain(ta, K)
    _write_dot(args.dot, nerve_dot(action.nerve, highlight=K.nodes, name="domain"))
    _emit(args, "domain", {"geom": geom.to_json(), "depth": args.depth, "range": args.range,
                           "maxlen": args.maxlen}, result,
          [f"fundamental domain: {result['labels']} (nodes {result['nodes']})"])
    return OK if K.ok else FAILED


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--geom", help="geometry JSON: {\"theta\": [...], \"lengths\": [...]}")
    common.add_argument("--out", help="write the JSON report here")
    common.add_argument("--seed", type=int, default=rigidity.DEFAULT_SEED)
    common.add_argument("--json", action="store_true", help="print the JSON report")

    trunc = argparse.ArgumentParser(add_help=False)
    trunc.add_argument("--depth", type=int, default=2)
    trunc.add_argument("--range", type=int, default=1)

    parser = argparse.ArgumentParser(prog="ckrigidity", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group", parents=[common], help="word problem and ball sizes")
    p.add_argument("--graph", help="defining graph JSON (default: the eight-generator graph)")
    p.add_argument("--ball", type=int, default=6)
    p.add_argument("--word", help="comma-separated word to normalize")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("nerve", parents=[common, trunc], help="truncated nerve and block tree")
    p.add_argument("--dot", help="write the nerve as DOT")
    p.add_argument("--blocks-dot", help="write the block tree as DOT")
    p.set_defaults(func=cmd_nerve)

    p = sub.add_parser("rigidity", parents=[common], help="case matrix and angle sweep")
    p.add_argument("--theta", help="angle in units of pi, e.g. 1/3")
    p.add_argument("--sweep", action="store_true", help="theta = k pi/12, k = 1..6")
    p.add_argument("--case-matrix", action="store_true")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--tol", type=float, default=rigidity.DEFAULT_TOL)
    p.set_defaults(func=cmd_rigidity)

    p = sub.add_parser("action", parents=[common, trunc], help="the group action on the complex")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--points", type=int, default=10, help="sample grid per axis")
    p.add_argument("--stabilizer", type=int, metavar="FLAT")
    p.add_argument("--maxlen", type=int, default=4)
    p.add_argument("--geometricity", action="store_true")
    p.add_argument("--dual", type=int, metavar="R")
    p.set_defaults(func=cmd_action)

    p = sub.add_parser("geodesic", parents=[common, trunc], help="geodesics and rays")
    p.add_argument("--from", dest="source", required=True, metavar="FLAT:s,t")
    p.add_argument("--to", dest="target", metavar="FLAT:s,t")
    p.add_argument("--tol", type=float, default=geodesic.DEFAULT_TOL)
    p.add_argument("--mesh", type=float, metavar="H")
    p.add_argument("--pole", choices=geodesic.POLES)
    p.add_argument("--radius", type=float, default=1.0)
    p.set_defaults(func=cmd_geodesic)

    p = sub.add_parser("domain", parents=[common, trunc], help="strict fundamental domain on the nerve")
    p.add_argument("--maxlen", type=int, default=6)
    p.add_argument("--dot", help="write the nerve with the domain highlighted")
    p.set_defaults(func=cmd_domain)
    return parser


_INPUT_ERRORS = (InputError, GeometryError, coxeter.GraphError, act_mod.ActionError,
                 geodesic.GeodesicInputError, geodesic.GeodesicRangeError, rigidity.AngleError,
                 treedomain.PreconditionError, treedomain.RangeError)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except (AssertionError, geodesic.ConvergenceError) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return FAILED


if __name__ == "__main__":
    sys.exit(main())
