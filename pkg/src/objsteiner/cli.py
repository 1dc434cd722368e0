"""Command-line interface: gen / reduce / solve / verify / render / bench.

Exit codes: 0 solved or verified, 1 infeasible or failed check, 2 usage
error, 3 size cap exceeded.  All commands are deterministic given --seed.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
import time

from . import gridtiling, io, pipeline, randgen, rects, separators, solvers, squares, svg


class UsageError(Exception):
    pass


def _read(path):
    with open(path) as fh:
        return fh.read()


def _write(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _load_any(path):
    text = _read(path)
    kind, _ = io.loads(text)
    if kind == "geometric":
        return kind, io.geometric_from_json(text)
    if kind == "planar-object":
        return kind, io.planar_from_json(text)
    if kind == "grid-tiling":
        return kind, io.tiling_from_json(text)
    if kind == "rect-steiner":
        return kind, io.rect_from_json(text)
    if kind == "square-steiner":
        return kind, io.square_squares_from_json(text)
    if kind == "cnf":
        return kind, io.cnf_from_json(text)
    raise UsageError(f"cannot load kind {kind}")


def cmd_gen(args):
    if args.kind == "geometric":
        inst = None
        seed = args.seed
        while inst is None:
            inst = randgen.random_geometric_instance(
                seed, n_objects=args.objects, n_terminals=args.terminals, alpha=args.alpha
            )
            seed += 1
        _write(args.out, io.geometric_to_json(inst))
    elif args.kind == "grid-tiling":
        import random

        rng = random.Random(f"gen-tiling-{args.seed}")
        inst = gridtiling.random_instance(rng, args.x, args.y, args.N, args.variant)
        _write(args.out, io.tiling_to_json(inst))
    else:
        raise UsageError(f"unknown generator kind {args.kind}")
    return 0


def cmd_reduce(args):
    kind, inst = _load_any(args.input)
    how = args.how
    if how == "geo2planar":
        if kind != "geometric":
            raise UsageError("geo2planar expects a geometric instance")
        pinst, _info = pipeline.geo_pipeline(inst, args.alpha)
        _write(args.out, io.planar_to_json(pinst))
    elif how == "longred":
        if kind != "planar-object":
            raise UsageError("longred expects a planar-object instance")
        red = pipeline.long_reduction(inst, args.alpha)
        _write(args.out, io.planar_to_json(red))
    elif how == "sat2ngt":
        if kind != "cnf":
            raise UsageError("sat2ngt expects a cnf instance")
        clauses, n_vars = inst
        out = gridtiling.sat_to_ngt(clauses, n_vars, args.groups)
        if out is None:
            print("unsatisfiable group: immediate NO", file=sys.stderr)
            return 1
        _write(args.out, io.tiling_to_json(out))
    elif how == "ngt2mngt":
        if kind != "grid-tiling" or inst.variant != "exact":
            raise UsageError("ngt2mngt expects an exact grid-tiling instance")
        _write(args.out, io.tiling_to_json(gridtiling.ngt_to_mngt(inst)))
    elif how == "mngt2squares":
        if kind != "grid-tiling" or inst.variant != "monotone":
            raise UsageError("mngt2squares expects a monotone grid-tiling instance")
        sq = squares.build_instance(inst)
        _write(args.out, io.square_to_json(sq))
    elif how == "vc23sc":
        raise UsageError("vc23sc consumes an edge list; use the library API")
    elif how == "3sc2rects":
        raise UsageError("3sc2rects consumes a set system; use the library API")
    else:
        raise UsageError(f"unknown reduction {how}")
    return 0


def cmd_solve(args):
    kind, inst = _load_any(args.input)
    if kind == "grid-tiling":
        w = gridtiling.dp_solve(inst)
        if w is None:
            print("no consistent tiling")
            return 1
        print("consistent tiling found")
        return 0
    if kind == "geometric":
        osi = inst
        pinst = None
    elif kind == "planar-object":
        pinst = inst
        osi = inst.steiner()
    elif kind == "rect-steiner":
        osi = rects.rect_steiner_instance(inst)
        pinst = None
    else:
        raise UsageError(f"cannot solve kind {kind}")
    if args.engine == "brute":
        sol = solvers.brute_force_optimum(osi, cap=args.cap)
    elif args.engine == "dw":
        sol = solvers.dreyfus_wagner(osi)
    elif args.engine == "recursion":
        if pinst is None:
            raise UsageError("the recursion engine needs a planar-object instance")
        sol = separators.recursion_solve(pinst, args.alpha)
    else:
        raise UsageError(f"unknown engine {args.engine}")
    if sol is None:
        print("infeasible")
        return 1
    print(f"optimum weight {sol.total_weight} with {sol.cardinality} objects: {list(sol.chosen)}")
    return 0


def cmd_verify(args):
    kind, inst = _load_any(args.input)
    check = args.check
    if check == "assumptionG":
        if kind != "geometric":
            raise UsageError("assumptionG expects a geometric instance")
        rep = __import__("objsteiner.geometry", fromlist=["validate_assumption_G"]).validate_assumption_G(
            inst.objects, args.alpha
        )
        for idx, msg in rep.violations:
            print(f"object {idx}: {msg}")
        print("pass" if rep.ok else "fail")
        return 0 if rep.ok else 1
    if check in ("assumptionP", "assumptionPL"):
        if kind != "planar-object":
            raise UsageError(f"{check} expects a planar-object instance")
        sol = solvers.brute_force_optimum(inst.steiner(), cap=args.cap)
        if sol is None:
            print("infeasible instance")
            return 1
        fn = pipeline.validate_assumption_P if check == "assumptionP" else pipeline.validate_assumption_PL
        ok, report = fn(inst, sol, args.alpha)
        for line in report:
            print(line)
        print("pass" if ok else "fail")
        return 0 if ok else 1
    if check == "representation":
        if kind != "planar-object":
            raise UsageError("representation expects a planar-object instance")
        from . import representation

        sol = solvers.brute_force_optimum(inst.steiner(), cap=args.cap)
        if sol is None:
            print("infeasible instance")
            return 1
        rep = representation.construct_representation(inst, sol, args.alpha)
        verdicts = representation.verify_representation(rep, sol, inst, args.alpha)
        ok = all(v[0] for v in verdicts.values())
        for num in sorted(verdicts):
            print(f"property {num}: {'pass' if verdicts[num][0] else verdicts[num][1]}")
        return 0 if ok else 1
    if check == "deg3":
        if kind != "planar-object":
            raise UsageError("deg3 expects a planar-object instance")
        from .graphs import WeightedGraph, check_deg3_bound

        osi = inst.steiner()
        sol = solvers.brute_force_optimum(osi, cap=args.cap)
        if sol is None:
            print("infeasible instance")
            return 1
        active = sorted(set(sol.chosen) | set(osi.terminals))
        pos = {v: i for i, v in enumerate(active)}
        pairs = [
            (pos[i], pos[j]) for i in active for j in osi.adj[i] if j in active and i < j
        ]
        h = WeightedGraph.from_pairs(len(active), pairs)
        count, bound, holds = check_deg3_bound(h, [pos[t] for t in osi.terminals])
        print(f"deg>=3 count {count}, bound {bound}")
        print("pass" if holds else "fail")
        return 0 if holds else 1
    if check == "witness":
        if kind != "square-steiner":
            raise UsageError("witness expects a square-steiner instance")
        sqs, k = inst
        chosen = [i for i, s in enumerate(sqs) if False]  # no selection stored in files
        print("square instances carry no selection; structural check only")
        ok = squares.connected([s for s in sqs if s.is_terminal])
        print("pass" if ok else "fail")
        return 0 if ok else 1
    if check == "triple":
        raise UsageError("triple verification is a library API (needs a solution object)")
    if check == "guarded":
        raise UsageError("guarded verification is a library API (needs a separation object)")
    raise UsageError(f"unknown check {check}")


def cmd_render(args):
    kind, inst = _load_any(args.input)
    if kind == "geometric":
        out = svg.render_geometric(inst.objects)
    elif kind == "square-steiner":
        sqs, _k = inst
        out = svg.render_squares(sqs)
    elif kind == "rect-steiner":
        out = svg.render_rects(inst)
    else:
        raise UsageError(f"cannot render kind {kind}")
    _write(args.out, out)
    return 0


def cmd_bench(args):
    rows = []
    for seed in range(args.seed, args.seed + args.count):
        inst = randgen.random_geometric_instance(
            seed, n_objects=args.objects, n_terminals=args.terminals, alpha=args.alpha
        )
        if inst is None:
            continue
        row = {"seed": seed, "objects": inst.n, "terminals": len(inst.terminals)}
        for engine, fn in (
            ("brute", lambda: solvers.brute_force_optimum(inst)),
            ("dw", lambda: solvers.dreyfus_wagner(inst)),
        ):
            t0 = time.perf_counter()
            sol = fn()
            row[f"{engine}_ms"] = round(1000 * (time.perf_counter() - t0), 3)
            row[f"{engine}_weight"] = None if sol is None else sol.total_weight
        rows.append(row)
    fieldnames = ["seed", "objects", "terminals", "brute_ms", "brute_weight", "dw_ms", "dw_weight"]
    out = sys.stdout if args.out in (None, "-") else open(args.out, "w", newline="")
    try:
        w = csv.DictWriter(out, fieldnames=fieldnames)
        w.writeheader()
        for row in rows:
            w.writerow(row)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="objsteiner", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate random instances")
    g.add_argument("kind", choices=["geometric", "grid-tiling"])
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--objects", type=int, default=8)
    g.add_argument("--terminals", type=int, default=3)
    g.add_argument("--alpha", type=float, default=8.0)
    g.add_argument("--x", type=int, default=2)
    g.add_argument("--y", type=int, default=2)
    g.add_argument("--N", type=int, default=2)
    g.add_argument("--variant", choices=["exact", "monotone"], default="exact")
    g.add_argument("--out", default="-")
    g.set_defaults(func=cmd_gen)

    r = sub.add_parser("reduce", help="apply a reduction")
    r.add_argument("how", choices=["geo2planar", "longred", "sat2ngt", "ngt2mngt", "mngt2squares", "vc23sc", "3sc2rects"])
    r.add_argument("input")
    r.add_argument("--alpha", type=float, default=8.0)
    r.add_argument("--groups", type=int, default=1)
    r.add_argument("--out", default="-")
    r.set_defaults(func=cmd_reduce)

    s = sub.add_parser("solve", help="solve an instance")
    s.add_argument("input")
    s.add_argument("--engine", choices=["brute", "dw", "recursion"], default="dw")
    s.add_argument("--alpha", type=float, default=1.0)
    s.add_argument("--cap", type=int, default=20)
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="run a structural check")
    v.add_argument("input")
    v.add_argument(
        "--check",
        required=True,
        choices=["assumptionG", "assumptionP", "assumptionPL", "representation", "guarded", "triple", "witness", "deg3"],
    )
    v.add_argument("--alpha", type=float, default=1.0)
    v.add_argument("--cap", type=int, default=20)
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("render", help="render an instance as SVG")
    d.add_argument("input")
    d.add_argument("--out", default="-")
    d.set_defaults(func=cmd_render)

    b = sub.add_parser("bench", help="seeded solver sweep, CSV output")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--count", type=int, default=20)
    b.add_argument("--objects", type=int, default=8)
    b.add_argument("--terminals", type=int, default=3)
    b.add_argument("--alpha", type=float, default=8.0)
    b.add_argument("--out", default="-")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except solvers.CapExceeded as e:
        print(f"cap exceeded: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
