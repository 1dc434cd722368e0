"""Instance file formats: canonical JSON envelopes plus a DIMACS CNF reader.

Every payload is wrapped as {"schema_version": 1, "kind": ..., "payload":
...} and serialized canonically (sorted keys, fixed separators), so a
read-write cycle is byte-identical.  Gadget and rectangle coordinates are
rationals encoded as "p/q" strings; other coordinates are doubles.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction

from . import geometry, gridtiling, rects, squares
from .geometry import AxisSquare, Disk, GeometricObject, Point, PointShape, RotatedSquare, SimplePolygon
from .graphs import GraphObject, WeightedGraph, geometric_instance
from .pipeline import PlanarObjectInstance

SCHEMA_VERSION = 1
KINDS = ("geometric", "planar-object", "grid-tiling", "square-steiner", "rect-steiner", "cnf")


def dumps(kind, payload) -> str:
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind}")
    doc = {"schema_version": SCHEMA_VERSION, "kind": kind, "payload": payload}
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def loads(text: str):
    doc = json.loads(text)
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ValueError("unsupported schema version")
    if doc.get("kind") not in KINDS:
        raise ValueError(f"unknown kind {doc.get('kind')}")
    return doc["kind"], doc["payload"]


def _frac_str(f) -> str:
    f = Fraction(f)
    return f"{f.numerator}/{f.denominator}"


def _parse_frac(s) -> Fraction:
    num, den = s.split("/")
    return Fraction(int(num), int(den))


# ---------------------------------------------------------------------------
# geometric instances


def _shape_to_json(shape):
    if isinstance(shape, Disk):
        return {"type": "disk", "center": [float(shape.center.x), float(shape.center.y)], "radius": float(shape.radius)}
    if isinstance(shape, AxisSquare):
        return {"type": "axis_square", "lower_left": [float(shape.lower_left.x), float(shape.lower_left.y)], "side": float(shape.side)}
    if isinstance(shape, RotatedSquare):
        return {"type": "rotated_square", "center": [float(shape.center.x), float(shape.center.y)], "l1_radius": float(shape.l1_radius)}
    if isinstance(shape, SimplePolygon):
        return {"type": "polygon", "vertices": [[float(p.x), float(p.y)] for p in shape.vertices]}
    if isinstance(shape, PointShape):
        return {"type": "point", "point": [float(shape.point.x), float(shape.point.y)]}
    raise TypeError(f"unknown shape {shape!r}")


def _shape_from_json(d):
    t = d["type"]
    if t == "disk":
        return Disk(Point(*d["center"]), d["radius"])
    if t == "axis_square":
        return AxisSquare(Point(*d["lower_left"]), d["side"])
    if t == "rotated_square":
        return RotatedSquare(Point(*d["center"]), d["l1_radius"])
    if t == "polygon":
        return SimplePolygon(tuple(Point(*p) for p in d["vertices"]))
    if t == "point":
        return PointShape(Point(*d["point"]))
    raise ValueError(f"unknown shape type {t}")


def _weight_to_json(w):
    if isinstance(w, Fraction):
        return {"frac": _frac_str(w)}
    return w


def _weight_from_json(w):
    if isinstance(w, dict) and "frac" in w:
        return _parse_frac(w["frac"])
    return w


def geometric_to_json(inst) -> str:
    payload = {
        "objects": [
            {"shape": _shape_to_json(o.shape), "weight": _weight_to_json(o.weight), "terminal": o.is_terminal}
            for o in inst.objects
        ],
        "k": None if inst.k is math.inf else inst.k,
    }
    return dumps("geometric", payload)


def geometric_from_json(text: str):
    kind, payload = loads(text)
    if kind != "geometric":
        raise ValueError(f"expected a geometric instance, got {kind}")
    objs = [
        GeometricObject(_shape_from_json(o["shape"]), _weight_from_json(o["weight"]), o["terminal"])
        for o in payload["objects"]
    ]
    k = math.inf if payload["k"] is None else payload["k"]
    return geometric_instance(objs, k=k)


# ---------------------------------------------------------------------------
# planar object instances


def planar_to_json(pinst: PlanarObjectInstance) -> str:
    payload = {
        "n_vertices": pinst.graph.n,
        "edges": [[u, v, w] for u, v, w in pinst.graph.edges],
        "objects": [
            {
                "vertices": sorted(o.vertices),
                "weight": _weight_to_json(o.weight),
                "terminal": o.is_terminal,
                "class": pinst.classification[i] if pinst.classification else None,
                "tau": pinst.tau.get(i),
            }
            for i, o in enumerate(pinst.objects)
        ],
        "k": None if pinst.k is math.inf else pinst.k,
        "X": list(pinst.X),
        "F": [list(e) for e in pinst.F],
        "r": pinst.r,
    }
    return dumps("planar-object", payload)


def planar_from_json(text: str) -> PlanarObjectInstance:
    kind, payload = loads(text)
    if kind != "planar-object":
        raise ValueError(f"expected a planar-object instance, got {kind}")
    g = WeightedGraph(payload["n_vertices"], [tuple(e) for e in payload["edges"]])
    objs = []
    classification = []
    tau = {}
    for i, o in enumerate(payload["objects"]):
        objs.append(GraphObject(frozenset(o["vertices"]), _weight_from_json(o["weight"]), o["terminal"]))
        classification.append(o.get("class"))
        if o.get("tau") is not None:
            tau[i] = o["tau"]
    return PlanarObjectInstance(
        graph=g,
        objects=tuple(objs),
        k=math.inf if payload["k"] is None else payload["k"],
        X=tuple(payload["X"]),
        F=tuple(tuple(e) for e in payload["F"]),
        classification=tuple(classification),
        tau=tau,
        r=payload["r"],
    )


# ---------------------------------------------------------------------------
# grid tiling


def tiling_to_json(inst: gridtiling.GridTilingInstance) -> str:
    payload = {
        "x": inst.x,
        "y": inst.y,
        "N": inst.N,
        "variant": inst.variant,
        "sets": {f"{i},{j}": sorted(map(list, inst.sets[(i, j)])) for i, j in inst.cells()},
    }
    return dumps("grid-tiling", payload)


def tiling_from_json(text: str) -> gridtiling.GridTilingInstance:
    kind, payload = loads(text)
    if kind != "grid-tiling":
        raise ValueError(f"expected a grid-tiling instance, got {kind}")
    sets = {}
    for key, pairs in payload["sets"].items():
        i, j = map(int, key.split(","))
        sets[(i, j)] = frozenset(map(tuple, pairs))
    return gridtiling.GridTilingInstance(payload["x"], payload["y"], payload["N"], sets, payload["variant"])


# ---------------------------------------------------------------------------
# unit-square instances


def square_to_json(inst: squares.SquareSteinerInstance) -> str:
    payload = {
        "N": inst.params.N,
        "omega": inst.params.omega,
        "k": inst.k,
        "squares": [
            {"x": _frac_str(s.x), "y": _frac_str(s.y), "terminal": s.is_terminal, "tag": s.tag}
            for s in inst.squares
        ],
        "mngt": json.loads(tiling_to_json(inst.mngt))["payload"],
    }
    return dumps("square-steiner", payload)


def square_squares_from_json(text: str):
    """Square list (the instance body) from a serialized instance."""
    kind, payload = loads(text)
    if kind != "square-steiner":
        raise ValueError(f"expected a square-steiner instance, got {kind}")
    return [
        squares.UnitSquare(_parse_frac(s["x"]), _parse_frac(s["y"]), s["terminal"], s["tag"])
        for s in payload["squares"]
    ], payload["k"]


# ---------------------------------------------------------------------------
# rectangle instances


def rect_to_json(ri: rects.RectInstance) -> str:
    payload = {
        "epsilon": _frac_str(ri.epsilon),
        "delta": _frac_str(ri.delta),
        "terminals": [
            {"label": lbl, "x": _frac_str(px), "y": _frac_str(py)} for lbl, (px, py) in ri.terminals
        ],
        "rects": [
            {"set": si, "x1": _frac_str(r.x1), "y1": _frac_str(r.y1), "x2": _frac_str(r.x2), "y2": _frac_str(r.y2)}
            for si, r in ri.rects
        ],
    }
    return dumps("rect-steiner", payload)


def rect_from_json(text: str) -> rects.RectInstance:
    kind, payload = loads(text)
    if kind != "rect-steiner":
        raise ValueError(f"expected a rect-steiner instance, got {kind}")
    return rects.RectInstance(
        epsilon=_parse_frac(payload["epsilon"]),
        delta=_parse_frac(payload["delta"]),
        terminals=[(t["label"], (_parse_frac(t["x"]), _parse_frac(t["y"]))) for t in payload["terminals"]],
        rects=[
            (r["set"], rects.Rect(_parse_frac(r["x1"]), _parse_frac(r["y1"]), _parse_frac(r["x2"]), _parse_frac(r["y2"])))
            for r in payload["rects"]
        ],
    )


# ---------------------------------------------------------------------------
# CNF


def read_dimacs(text: str):
    """Parse DIMACS CNF; returns (clauses, n_vars)."""
    clauses = []
    n_vars = 0
    cur = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith(("c", "%")):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) < 4 or parts[1] != "cnf":
                raise ValueError(f"bad problem line: {line}")
            n_vars = int(parts[2])
            continue
        for tok in line.split():
            v = int(tok)
            if v == 0:
                if cur:
                    clauses.append(tuple(cur))
                    cur = []
            else:
                cur.append(v)
    if cur:
        clauses.append(tuple(cur))
    if n_vars == 0 and clauses:
        n_vars = max(abs(l) for c in clauses for l in c)
    return clauses, n_vars


def cnf_to_json(clauses, n_vars) -> str:
    return dumps("cnf", {"n_vars": n_vars, "clauses": [list(c) for c in clauses]})


def cnf_from_json(text: str):
    kind, payload = loads(text)
    if kind != "cnf":
        raise ValueError(f"expected a cnf instance, got {kind}")
    return [tuple(c) for c in payload["clauses"]], payload["n_vars"]
