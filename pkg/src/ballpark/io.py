"""File formats: point CSV, cover/function/pair JSON, diagram CSV, strips JSON.

All text output is byte-deterministic: UTF-8, LF line endings, shortest
round-trip float formatting, JSON with sorted keys.
"""

from __future__ import annotations

import json
import math
import os
from typing import Optional

import numpy as np

from .certify import BlindStripSet
from .compare import BoundCertificate
from .filtration import AdmissiblePair, FilteringFunction
from .geometry import BallCover, PointCloud
from .persistence import INF, PBNValue, PersistenceDiagram, Segment


def fmt(x: float) -> str:
    if x == INF:
        return "inf"
    if x == -INF:
        return "-inf"
    return repr(float(x))


def dumps_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# -- point clouds -----------------------------------------------------------


def points_to_csv(cloud: PointCloud) -> str:
    m = cloud.dim_ambient
    lines = [",".join(f"x{i + 1}" for i in range(m))]
    for row in cloud.points:
        lines.append(",".join(fmt(c) for c in row))
    return "\n".join(lines) + "\n"


def points_from_csv(text: str) -> PointCloud:
    lines = [ln for ln in text.strip().split("\n") if ln]
    header = lines[0].split(",")
    if not all(h.strip().startswith("x") for h in header):
        raise ValueError("point CSV must have header x1,...,xm")
    rows = [[float(c) for c in ln.split(",")] for ln in lines[1:]]
    return PointCloud(np.array(rows, dtype=np.float64))


def read_points(path: str) -> PointCloud:
    with open(path, "r", encoding="utf-8") as fh:
        return points_from_csv(fh.read())


# -- covers -----------------------------------------------------------------


def cover_to_json(cover: BallCover, points_path: str) -> str:
    return dumps_json({
        "radius": cover.radius,
        "offset": cover.offset,
        "tau": cover.tau,
        "points": points_path,
    })


def read_cover(path: str) -> BallCover:
    with open(path, "r", encoding="utf-8") as fh:
        spec = json.load(fh)
    pts_path = spec["points"]
    if not os.path.isabs(pts_path):
        pts_path = os.path.join(os.path.dirname(os.path.abspath(path)), pts_path)
    cloud = read_points(pts_path)
    return BallCover(cloud, radius=float(spec["radius"]), tau=float(spec["tau"]),
                     offset=None if spec.get("offset") is None else float(spec["offset"]))


# -- filtering functions and admissible pairs -------------------------------


def function_to_json(f: FilteringFunction) -> str:
    params: dict = {}
    if f.axis is not None:
        params["axis"] = f.axis
    if f.point is not None:
        params["point"] = list(f.point)
    if f.table is not None:
        params["table"] = {str(k): list(v) for k, v in f.table.items()}
    return dumps_json({
        "kind": f.kind,
        "params": params,
        "lipschitz": None if f.lipschitz is None else list(f.lipschitz),
    })


def function_from_json(text: str) -> FilteringFunction:
    spec = json.loads(text)
    kind = spec["kind"]
    params = spec.get("params", {})
    lip = spec.get("lipschitz")
    if kind == "abs-coordinate":
        return FilteringFunction.abs_coordinate(int(params["axis"]))
    if kind == "coordinate":
        return FilteringFunction.coordinate(int(params["axis"]))
    if kind == "distance-to-point":
        return FilteringFunction.distance_to_point(params["point"])
    if kind == "vertex-table":
        table = {int(k): tuple(v) for k, v in params["table"].items()}
        return FilteringFunction.vertex_table(table, lipschitz=lip)
    if kind == "color-plane":
        return FilteringFunction.color_plane()
    raise ValueError(f"unknown filtering kind {kind!r}")


def read_function(path: str) -> FilteringFunction:
    with open(path, "r", encoding="utf-8") as fh:
        return function_from_json(fh.read())


def pair_from_json(text: str) -> AdmissiblePair:
    spec = json.loads(text)
    return AdmissiblePair(tuple(spec["l"]), tuple(spec["b"]))


def read_pair(path: str) -> AdmissiblePair:
    with open(path, "r", encoding="utf-8") as fh:
        return pair_from_json(fh.read())


# -- diagrams ---------------------------------------------------------------


def diagram_to_csv(D: PersistenceDiagram) -> str:
    lines = ["degree,birth,death"]
    for deg in D.degrees:
        for b, d in D.pairs(deg):
            lines.append(f"{deg},{fmt(b)},{fmt(d)}")
    return "\n".join(lines) + "\n"


def diagram_from_csv(text: str) -> PersistenceDiagram:
    lines = [ln for ln in text.strip().split("\n") if ln]
    if lines[0] != "degree,birth,death":
        raise ValueError("diagram CSV must have header degree,birth,death")
    pairs: dict[int, list[tuple[float, float]]] = {}
    for ln in lines[1:]:
        deg, b, d = ln.split(",")
        death = INF if d == "inf" else float(d)
        pairs.setdefault(int(deg), []).append((float(b), death))
    return PersistenceDiagram.from_pairs(pairs, drop_zero=False)


def read_diagram(path: str) -> PersistenceDiagram:
    with open(path, "r", encoding="utf-8") as fh:
        return diagram_from_csv(fh.read())


# -- strips, queries, certificates ------------------------------------------


def strips_to_json(strips: BlindStripSet) -> str:
    segs = []
    for seg in strips.segments:
        segs.append({
            "axis": seg.axis,
            "value": seg.value,
            "lo": None if seg.lo == -INF else seg.lo,
            "hi": None if seg.hi == INF else seg.hi,
        })
    return dumps_json({
        "degree": strips.degree,
        "W": strips.W,
        "total_width": strips.total_width,
        "segments": segs,
    })


def strips_from_json(text: str) -> BlindStripSet:
    spec = json.loads(text)
    segs = tuple(
        Segment(s["axis"], float(s["value"]),
                -INF if s["lo"] is None else float(s["lo"]),
                INF if s["hi"] is None else float(s["hi"]))
        for s in spec["segments"]
    )
    return BlindStripSet(int(spec["degree"]), float(spec["W"]), segs)


def query_to_json(q: PBNValue) -> str:
    return dumps_json({
        "degree": q.degree,
        "u": list(q.u),
        "v": list(q.v),
        "value": q.value,
    })


def query_from_json(text: str) -> PBNValue:
    spec = json.loads(text)
    return PBNValue(int(spec["degree"]), tuple(spec["u"]), tuple(spec["v"]),
                    int(spec["value"]))


def certificate_to_json(cert: Optional[BoundCertificate],
                        extra: Optional[dict] = None) -> str:
    if cert is None:
        return dumps_json({"certificate": None})
    payload = {
        "degree": cert.degree,
        "witness_a": {"u": list(cert.witness_a[0]), "v": list(cert.witness_a[1])},
        "witness_b": {"u": list(cert.witness_b[0]), "v": list(cert.witness_b[1])},
        "value_a": cert.value_a,
        "value_b": cert.value_b,
        "bound": cert.bound,
        "useful": cert.useful,
    }
    if extra:
        payload.update(extra)
    return dumps_json({"certificate": payload})
