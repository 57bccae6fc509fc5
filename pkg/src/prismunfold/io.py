"""JSON instance and net files.

Instance files look like::

    {"format": "prismatoid/1", "base": [[x, y], ...], "top": [[x, y], ...], "height": h}

Numbers are written with 17 significant digits so a round trip is exact.
"""
from __future__ import annotations

import json
from typing import Any, Dict

import numpy as np

from .exceptions import ParseError
from .geom import DEFAULT_TOL, Tolerances
from .prismatoid import Prismatoid, validate
from .rmcut import CaseTag
from .unfold import ConeFrame, Hinge, Net, Patch, PlacedFacet

INSTANCE_FORMAT = "prismatoid/1"
NET_FORMAT = "net/1"


def _num(x: float) -> str:
    return format(float(x), ".17g")


def _points(pts) -> str:
    return "[" + ", ".join(f"[{_num(x)}, {_num(y)}]" for x, y in pts) + "]"


def serialize_instance(P: Prismatoid) -> bytes:
    text = (
        "{\n"
        f'  "format": "{INSTANCE_FORMAT}",\n'
        f'  "base": {_points(P.base.vertices)},\n'
        f'  "top": {_points(P.top.vertices)},\n'
        f'  "height": {_num(P.height)}\n'
        "}\n"
    )
    return text.encode("utf-8")


def _loads(data) -> Any:
    if isinstance(data, (bytes, bytearray)):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not UTF-8: {exc}") from None
    try:
        return json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None


def _read_points(doc: dict, key: str):
    pts = doc.get(key)
    if not isinstance(pts, list):
        raise ParseError("expected a list of [x, y] pairs", field=key)
    out = []
    for k, p in enumerate(pts):
        if (not isinstance(p, list) or len(p) != 2
                or not all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in p)):
            raise ParseError("expected [x, y] numbers", field=f"{key}[{k}]")
        out.append((float(p[0]), float(p[1])))
    return out


def instance_from_dict(doc: Dict[str, Any], tol: Tolerances = DEFAULT_TOL) -> Prismatoid:
    if not isinstance(doc, dict):
        raise ParseError("top-level JSON value must be an object")
    if doc.get("format") != INSTANCE_FORMAT:
        raise ParseError(f"expected format {INSTANCE_FORMAT!r}", field="format")
    base, top = _read_points(doc, "base"), _read_points(doc, "top")
    h = doc.get("height")
    if not isinstance(h, (int, float)) or isinstance(h, bool):
        raise ParseError("expected a number", field="height")
    return validate(base, top, h, tol)


def parse_instance(data, tol: Tolerances = DEFAULT_TOL) -> Prismatoid:
    """Parse and validate an instance file (bytes or str)."""
    return instance_from_dict(_loads(data), tol)


def instance_to_dict(P: Prismatoid) -> dict:
    return json.loads(serialize_instance(P))


def net_to_dict(net: Net) -> dict:
    doc = {
        "format": NET_FORMAT,
        "facets": [{"id": pf.facet_id, "patch": pf.patch.value, "labels": list(pf.labels),
                    "points": pf.points.tolist()} for pf in net.placed],
        "attach_tree": [{"parent": h.parent, "child": h.child, "edge": list(h.edge)}
                        for h in net.attach_tree],
        "cut_edges": [list(e) for e in net.cut_edges],
        "top_attach_index": net.top_attach_index,
    }
    if net.cone_frame is not None:
        cf = net.cone_frame
        doc["cone_frame"] = {"e_plus": [list(p) for p in cf.e_plus],
                             "e_minus": [list(p) for p in cf.e_minus],
                             "apex": list(cf.apex), "case_tag": cf.case_tag.value}
    if net.plan is not None:
        doc["plan"] = net.plan.to_dict()
    return doc


def serialize_net(net: Net) -> bytes:
    return (json.dumps(net_to_dict(net), indent=1) + "\n").encode("utf-8")


def parse_net(data) -> Net:
    """Read a net file. The embedded plan is left as JSON, see :func:`net_plan_dict`."""
    doc = _loads(data)
    if not isinstance(doc, dict) or doc.get("format") != NET_FORMAT:
        raise ParseError(f"expected format {NET_FORMAT!r}", field="format")
    try:
        placed = tuple(
            PlacedFacet(f["id"], tuple(f["labels"]), np.array(f["points"], dtype=float),
                        Patch(f["patch"]))
            for f in doc["facets"])
        tree = tuple(Hinge(h["parent"], h["child"], tuple(h["edge"])) for h in doc["attach_tree"])
        cuts = tuple(tuple(e) for e in doc["cut_edges"])
        frame = None
        if "cone_frame" in doc:
            cf = doc["cone_frame"]
            frame = ConeFrame(tuple(map(tuple, cf["e_plus"])), tuple(map(tuple, cf["e_minus"])),
                              tuple(cf["apex"]), CaseTag(cf["case_tag"]))
        top_index = int(doc["top_attach_index"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed net: {exc!r}") from None
    return Net(placed, tree, cuts, top_index, frame, plan=None)


def net_plan_dict(data) -> dict:
    return _loads(data).get("plan", {})
