"""Machine checks for unfolded nets.

Every check returns a :class:`CheckResult` whose ``witness`` pinpoints the
first violation (facet pair, vertex or edge with coordinates). A net is a
certified edge-unfolding when every check in :func:`verify_net` passes.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from .geom import DEFAULT_TOL, Tolerances, convex_overlap, cross2, penetration_depth, signed_area
from .prismatoid import (Band, FacetKind, Prismatoid, is_prismoid, parse_label, v,
                         vertex_curvature, w)
from .rmcut import CutPlan
from .unfold import Net, Patch, polytope_edges, top_path

ISOMETRY_RTOL = 1e-9


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    witness: Optional[dict] = None
    warning: bool = False
    value: Optional[float] = None

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "warning": self.warning,
                "value": self.value, "witness": self.witness}


@dataclass(frozen=True)
class VerifyReport:
    checks: tuple
    tolerances: Tolerances = field(default=DEFAULT_TOL)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def first_failure(self) -> Optional[CheckResult]:
        return next((c for c in self.checks if not c.passed), None)

    def to_dict(self) -> dict:
        t = self.tolerances
        return {"passed": self.passed,
                "tolerances": {"eps_geom": t.eps_geom, "eps_verify": t.eps_verify,
                               "eps_angle": t.eps_angle},
                "checks": [c.to_dict() for c in self.checks]}


def _net_scale(net: Net) -> float:
    return max(1.0, max(float(np.abs(pf.points).max()) for pf in net.placed))


def _pt(p) -> List[float]:
    return [float(p[0]), float(p[1])]


def check_simple(net: Net, tol: Tolerances = DEFAULT_TOL) -> CheckResult:
    """No two placed facets overlap in their open interiors."""
    slack = tol.eps_verify * _net_scale(net)
    boxes = [(pf.points.min(0) - slack, pf.points.max(0) + slack) for pf in net.placed]
    worst = -math.inf
    for (a, pa), (b, pb) in itertools.combinations(enumerate(net.placed), 2):
        (lo1, hi1), (lo2, hi2) = boxes[a], boxes[b]
        if (hi1 < lo2).any() or (hi2 < lo1).any():
            continue
        depth = penetration_depth(pa.points, pb.points)
        worst = max(worst, depth)
        if convex_overlap(pa.points, pb.points, tol, check=False):
            return CheckResult("simple", False, {
                "facets": [pa.facet_id, pb.facet_id], "depth": depth,
                "points": [[_pt(p) for p in pa.points], [_pt(p) for p in pb.points]]}, value=depth)
    return CheckResult("simple", True, value=worst if worst > -math.inf else None)


def check_isometry(P: Prismatoid, band: Band, net: Net, tol: Tolerances = DEFAULT_TOL,
                   rtol: float = ISOMETRY_RTOL) -> CheckResult:
    """Placed facets are congruent, orientation included, to their 3D originals."""
    worst = 0.0
    for pf in net.placed:
        p3 = np.array([P.point3(lab) for lab in pf.labels])
        d3 = np.linalg.norm(p3[:, None] - p3[None], axis=-1)
        d2 = np.linalg.norm(pf.points[:, None] - pf.points[None], axis=-1)
        iu = np.triu_indices(len(p3), 1)
        # coincident originals only arise when the net names vertices the instance lacks
        rel = np.abs(d2[iu] - d3[iu]) / np.maximum(d3[iu], np.finfo(float).tiny)
        k = int(np.argmax(rel))
        worst = max(worst, float(rel[k]))
        if rel[k] > rtol:
            a, b = iu[0][k], iu[1][k]
            return CheckResult("isometry", False, {
                "facet": pf.facet_id, "edge": [pf.labels[a], pf.labels[b]],
                "placed": float(d2[a, b]), "original": float(d3[a, b])}, value=float(rel[k]))
        if signed_area(pf.points) <= 0:
            return CheckResult("isometry", False, {"facet": pf.facet_id, "reason": "mirrored"},
                               value=worst)
    return CheckResult("isometry", True, value=worst)


def check_hinges(net: Net, tol: Tolerances = DEFAULT_TOL) -> CheckResult:
    """Both facets of every hinge place the shared edge at the same spot."""
    lim = ISOMETRY_RTOL * _net_scale(net)
    worst = 0.0
    for h in net.attach_tree:
        pa, pc = net.facet(h.parent), net.facet(h.child)
        for lab in h.edge:
            gap = float(np.linalg.norm(pa.point(lab) - pc.point(lab)))
            worst = max(worst, gap)
            if gap > lim:
                return CheckResult("hinges", False, {"hinge": [h.parent, h.child], "vertex": lab,
                                                     "gap": gap}, value=gap)
    return CheckResult("hinges", True, value=worst)


def _is_spanning_tree(nodes, edges) -> bool:
    parent = {n: n for n in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return len(edges) == len(nodes) - 1


def check_structure(P: Prismatoid, band: Band, net: Net) -> CheckResult:
    """Hinges span the facets as a tree; cut edges span the vertices as a tree."""
    facets = [pf.facet_id for pf in net.placed]
    if not _is_spanning_tree(facets, [(h.parent, h.child) for h in net.attach_tree]):
        return CheckResult("structure", False, {"reason": "attach_tree is not a spanning tree"})
    all_edges = {frozenset(e) for e in polytope_edges(P, band)}
    hinge_edges = {frozenset(h.edge) for h in net.attach_tree}
    cuts = {frozenset(e) for e in net.cut_edges}
    if hinge_edges | cuts != all_edges or hinge_edges & cuts:
        return CheckResult("structure", False, {"reason": "cut edges are not the hinge complement"})
    verts = [w(j) for j in range(P.n_base)] + [v(i) for i in range(P.n_top)]
    if not _is_spanning_tree(verts, [tuple(e) for e in net.cut_edges]):
        return CheckResult("structure", False, {"reason": "cut edges do not span the vertices"})
    return CheckResult("structure", True)


def _signed_dist(seg, p) -> float:
    a, b = seg
    return cross2(a, b, p) / math.dist(a, b)


def check_cones(net: Net, tol: Tolerances = DEFAULT_TOL) -> CheckResult:
    """M- stays in the cone beyond e_minus; M+ and the top beyond e_plus.

    Distances are signed so the base side of each attachment line is
    positive; the closed cones get ``eps_verify`` times the net scale.
    """
    frame = net.cone_frame
    if frame is None:
        return CheckResult("cones", False, {"reason": "net has no cone frame"})
    slack = tol.eps_verify * _net_scale(net)
    worst = -math.inf
    for pf in net.placed:
        if pf.patch is Patch.BASE:
            continue
        for lab, p in zip(pf.labels, pf.points):
            dp, dm = _signed_dist(frame.e_plus, p), _signed_dist(frame.e_minus, p)
            if pf.patch is Patch.MMINUS:
                excess = max(dm, -dp)
            else:
                excess = dp
            worst = max(worst, excess)
            if excess > slack:
                return CheckResult("cones", False, {"facet": pf.facet_id, "vertex": lab,
                                                    "point": _pt(p), "excess": excess}, value=excess)
    return CheckResult("cones", True, value=worst)


def check_radially_monotone(path, eps: float = 1e-12) -> bool:
    """Distance to ``path[0]`` never decreases along the polygonal path.

    Along an edge p->q the squared distance is a convex quadratic, so it is
    non-decreasing iff its derivative is non-negative at both ends.
    """
    pts = np.asarray(path, dtype=float)
    if len(pts) < 2:
        return True
    s = pts[0]
    lim = eps * max(1.0, float(np.abs(pts - s).max())) ** 2
    e = pts[1:] - pts[:-1]
    d0 = np.einsum("ij,ij->i", e, pts[:-1] - s)
    d1 = np.einsum("ij,ij->i", e, pts[1:] - s)
    return bool((d0 >= -lim).all() and (d1 >= -lim).all())


def _angle_at(points: np.ndarray, k: int) -> float:
    p, a, b = points[k], points[k - 1], points[(k + 1) % len(points)]
    u, t = a - p, b - p
    return math.atan2(abs(u[0] * t[1] - u[1] * t[0]), float(u @ t))


def _cyclic(start: int, end: int, n: int) -> List[int]:
    return [(start + t) % n for t in range((end - start) % n + 1)]


def _developed_turns(facets, label: str, top: bool) -> float:
    total = sum(_angle_at(pf.points, pf.labels.index(label)) for pf in facets if label in pf.labels)
    return total - math.pi if top else math.pi - total


def stretch_profile(P: Prismatoid, band: Band, plan: CutPlan, net: Net) -> List[dict]:
    """Developed and projected turn at every interior boundary vertex of M±."""
    rows = []
    pieces = ((Patch.MPLUS, (plan.w0, plan.wk), (plan.top_start, plan.top_end)),
              (Patch.MMINUS, (plan.wk, plan.w0), (plan.top_end, plan.top_start)))
    for patch, (b0, b1), (t0, t1) in pieces:
        facets = net.patch(patch)
        for j in _cyclic(b0, b1, P.n_base)[1:-1]:
            rows.append({"patch": patch.value, "vertex": w(j),
                         "developed": _developed_turns(facets, w(j), top=False),
                         "projected": vertex_curvature(P.base, j)})
        for i in _cyclic(t0, t1, P.n_top)[1:-1]:
            rows.append({"patch": patch.value, "vertex": v(i),
                         "developed": _developed_turns(facets, v(i), top=True),
                         "projected": vertex_curvature(P.top, i)})
    return rows


def check_stretch(P: Prismatoid, band: Band, plan: CutPlan, net: Net,
                  tol: Tolerances = DEFAULT_TOL) -> CheckResult:
    """Unrolling stretches both boundary paths of each band piece.

    At every interior vertex 0 < developed turn < projected turn. On
    prismoids the developed turns at partner vertices agree and partner
    edges stay parallel.
    """
    rows = stretch_profile(P, band, plan, net)
    margin = math.inf
    for r in rows:
        m = min(r["developed"], r["projected"] - r["developed"])
        margin = min(margin, m)
        if m <= 0:
            return CheckResult("stretch", False, dict(r, reason="turn outside (0, projected)"), value=m)
    if is_prismoid(band):
        turn = {(r["patch"], r["vertex"]): r["developed"] for r in rows}
        for (patch, lab), dev in turn.items():
            kind, j = parse_label(lab)
            if kind != "w":
                continue
            partner = (patch, v(band.partner(j)))
            if partner in turn and abs(turn[partner] - dev) > ISOMETRY_RTOL:
                return CheckResult("stretch", False, {"vertex": lab, "partner": partner[1],
                                                      "base_turn": dev, "top_turn": turn[partner]},
                                   value=margin)
        for pf in net.placed:
            if not pf.facet_id.startswith("L"):
                continue
            facet = band[int(pf.facet_id[1:])]
            if facet.kind is not FacetKind.QUAD:
                continue
            dt = pf.point(v(facet.top_indices[1])) - pf.point(v(facet.top_indices[0]))
            db = pf.point(w(facet.base_indices[1])) - pf.point(w(facet.base_indices[0]))
            ang = abs(math.atan2(dt[0] * db[1] - dt[1] * db[0], float(dt @ db)))
            if ang > tol.eps_angle:
                return CheckResult("stretch", False, {"facet": pf.facet_id, "angle": ang},
                                   value=margin)
    margin = margin if rows else None
    warn = margin is not None and margin <= tol.eps_angle
    return CheckResult("stretch", True, None, warning=warn, value=margin)


def check_top_monotone(P: Prismatoid, plan: CutPlan, net: Net) -> CheckResult:
    """Both top boundary arcs leaving the attachment edge are radially monotone."""
    path = top_path(P, plan)
    i = path.index(net.top_attach_index)
    top = net.facet("A")
    arcs = {"forward": path[i:], "backward": path[i - 1::-1]}
    for name, arc in arcs.items():
        pts = [top.point(v(k)) for k in arc]
        if not check_radially_monotone(pts):
            return CheckResult("radial_monotone", False, {"arc": name, "vertices": [v(k) for k in arc]})
    return CheckResult("radial_monotone", True)


def check_shadow(P: Prismatoid, band: Band, plan: CutPlan) -> CheckResult:
    """Facets on the Γ0 and Γk arcs are triangles hanging off w0 and wk."""
    s = plan.shadow
    if s is None:
        return CheckResult("shadow", True)
    for root, (a, b) in ((plan.w0, s.gamma0), (plan.wk, s.gamma_k)):
        arc = _cyclic(a, b, P.n_top)
        for i0, i1 in zip(arc, arc[1:]):
            facet = band[band.facet_with_top_edge(i0, P.n_top)]
            if facet.kind is not FacetKind.TRIANGLE or facet.base_indices != (root,):
                return CheckResult("shadow", False, {"root": w(root), "top_edge": [v(i0), v(i1)]})
    return CheckResult("shadow", True, warning=not s.rules_agree)


def verify_net(P: Prismatoid, band: Band, plan: CutPlan, net: Net,
               tol: Tolerances = DEFAULT_TOL) -> VerifyReport:
    checks = (
        check_structure(P, band, net),
        check_hinges(net, tol),
        check_isometry(P, band, net, tol),
        check_simple(net, tol),
        check_cones(net, tol),
        check_stretch(P, band, plan, net, tol),
        check_top_monotone(P, plan, net),
        check_shadow(P, band, plan),
    )
    return VerifyReport(checks, tol)
