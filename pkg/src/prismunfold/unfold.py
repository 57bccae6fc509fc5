"""Planar development of a planned cut into a net.

The base keeps its input coordinates. M- is hinged to the base at e_minus,
M+ at e_plus, and each band piece is unrolled facet-by-facet in both
directions from its anchor facet. The top is hinged to M+ across the top
edge picked by :func:`choose_top_attachment`.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .exceptions import ChainBroken, NonPlanarFacet
from .geom import (DEFAULT_TOL, Side, Tolerances, cross2, hinge_transform,
                   line_intersection, turn_angle_2d)
from .prismatoid import Band, Prismatoid, all_facet_ids, facet_labels, facet_points3, v, w
from .rmcut import CaseTag, CutPlan

HALF_PI = 0.5 * math.pi


class Patch(enum.Enum):
    BASE = "base"
    MPLUS = "mplus"
    MMINUS = "mminus"
    TOP = "top"


class TopRule(enum.Enum):
    PROJECTED = "projected"
    DEVELOPED = "developed"


@dataclass(frozen=True)
class PlacedFacet:
    facet_id: str
    labels: Tuple[str, ...]
    points: np.ndarray
    patch: Patch

    def point(self, label: str) -> np.ndarray:
        return self.points[self.labels.index(label)]


@dataclass(frozen=True)
class Hinge:
    parent: str
    child: str
    edge: Tuple[str, str]


@dataclass(frozen=True)
class ConeFrame:
    """Lines through the placed attachment edges and their crossing point."""

    e_plus: Tuple[Tuple[float, float], Tuple[float, float]]
    e_minus: Tuple[Tuple[float, float], Tuple[float, float]]
    apex: Tuple[float, float]
    case_tag: CaseTag


@dataclass(frozen=True)
class Net:
    placed: Tuple[PlacedFacet, ...]
    attach_tree: Tuple[Hinge, ...]
    cut_edges: Tuple[Tuple[str, str], ...]
    top_attach_index: int
    cone_frame: Optional[ConeFrame]
    plan: Optional[CutPlan] = None

    def facet(self, facet_id: str) -> PlacedFacet:
        for pf in self.placed:
            if pf.facet_id == facet_id:
                return pf
        raise KeyError(facet_id)

    def patch(self, patch: Patch) -> List[PlacedFacet]:
        return [pf for pf in self.placed if pf.patch is patch]

    def bounds(self) -> Tuple[float, float, float, float]:
        pts = np.vstack([pf.points for pf in self.placed])
        lo, hi = pts.min(0), pts.max(0)
        return float(lo[0]), float(lo[1]), float(hi[0]), float(hi[1])


def embed_facet(points3, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Isometric planar copy of a planar 3D polygon, listed CCW.

    The vertex order is kept; the frame is chosen so that order turns
    counterclockwise. First vertex at the origin, first edge along +x.
    """
    pts = np.asarray(points3, dtype=float)
    nxt = np.roll(pts, -1, axis=0)
    normal = np.array([
        np.sum((pts[:, 1] - nxt[:, 1]) * (pts[:, 2] + nxt[:, 2])),
        np.sum((pts[:, 2] - nxt[:, 2]) * (pts[:, 0] + nxt[:, 0])),
        np.sum((pts[:, 0] - nxt[:, 0]) * (pts[:, 1] + nxt[:, 1])),
    ])
    nn = np.linalg.norm(normal)
    extent = float(np.ptp(pts, axis=0).max())
    if nn <= tol.eps_geom * extent * extent:
        raise NonPlanarFacet("facet has no area")
    normal /= nn
    rel = pts - pts[0]
    off = np.abs(rel @ normal).max()
    if off > tol.eps_angle * max(extent, 1.0):
        raise NonPlanarFacet(f"facet deviates from its plane by {off:.3g}")
    e1 = rel[1] / np.linalg.norm(rel[1])
    e2 = np.cross(normal, e1)
    return np.column_stack([rel @ e1, rel @ e2])


def _edges(labels: Sequence[str]):
    n = len(labels)
    return [(labels[k], labels[(k + 1) % n]) for k in range(n)]


def _shared_edge(la: Sequence[str], lb: Sequence[str]) -> Optional[Tuple[str, str]]:
    eb = {frozenset(e) for e in _edges(lb)}
    for e in _edges(la):
        if frozenset(e) in eb:
            return e
    return None


def _away_side(points: np.ndarray, a, b) -> Side:
    """Side of directed segment a->b *opposite* to the polygon ``points``."""
    c = points.mean(axis=0)
    return Side.RIGHT if cross2(a, b, c) > 0 else Side.LEFT


def develop_chain(facets, first_hinge, side: Side, tol: Tolerances = DEFAULT_TOL):
    """Place a chain of facets hinge by hinge.

    ``facets`` is a sequence of ``(facet_id, labels, points3)``; consecutive
    entries must share an edge, and the first must contain the hinge edge.
    ``first_hinge`` is ``((label_a, label_b), (point_a, point_b))`` in the
    plane; the first facet lands on ``side`` of the directed hinge, each
    later one on the far side of its predecessor.

    Returns a list of ``(facet_id, labels, placed_points)``.
    """
    placed = []
    (la, lb), (pa, pb) = first_hinge
    for n, (fid, labels, pts3) in enumerate(facets):
        labels = tuple(labels)
        if n:
            prev_labels, prev_pts = placed[-1][1], placed[-1][2]
            edge = _shared_edge(prev_labels, labels)
            if edge is None:
                raise ChainBroken(f"{placed[-1][0]} and {fid} share no edge")
            la, lb = edge
            pa, pb = prev_pts[prev_labels.index(la)], prev_pts[prev_labels.index(lb)]
            side = _away_side(prev_pts, pa, pb)
        if la not in labels or lb not in labels:
            raise ChainBroken(f"{fid} does not contain hinge edge ({la}, {lb})")
        emb = embed_facet(pts3, tol)
        ia, ib = labels.index(la), labels.index(lb)
        motion = hinge_transform((emb[ia], emb[ib]), (pa, pb), emb.mean(axis=0), side, tol)
        pts = motion.apply(emb)
        pts[ia], pts[ib] = pa, pb
        placed.append((fid, labels, pts))
    return placed


def path_turns(path) -> List[float]:
    pts = np.asarray(path, dtype=float)
    return [turn_angle_2d(pts[t - 1], pts[t], pts[t + 1]) for t in range(1, len(pts) - 1)]


def choose_top_attachment(path, tol: Tolerances = DEFAULT_TOL) -> int:
    """Largest i such that the subpath (path[0], path[i]) has curvature <= pi/2.

    The subpath curvature sums the turns at its interior vertices only, so
    i = 1 always qualifies.
    """
    turns = path_turns(path)
    best, total = 1, 0.0
    for i in range(2, len(path)):
        total += turns[i - 2]
        if total > HALF_PI + tol.eps_angle:
            break
        best = i
    return best


def top_path(P: Prismatoid, plan: CutPlan) -> List[int]:
    """Top vertex indices of M+, CCW from the cut vertex at w0."""
    m = P.n_top
    start, end = plan.top_start, plan.top_end
    return [(start + t) % m for t in range((end - start) % m + 1)]


def _develop_piece(P, band, ids, anchor, hinge, side, patch, tol):
    pos = ids.index(anchor)
    rec = {fid: (fid, facet_labels(P, band, fid), facet_points3(P, band, fid)) for fid in ids}
    fwd = develop_chain([rec[f] for f in ids[pos:]], hinge, side, tol)
    placed = {fid: (labels, pts) for fid, labels, pts in fwd}
    hinges = [Hinge("B", ids[pos], hinge[0])]
    hinges += [Hinge(ids[t - 1], ids[t], _shared_edge(rec[ids[t - 1]][1], rec[ids[t]][1]))
               for t in range(pos + 1, len(ids))]
    if pos:
        labels0, pts0 = placed[ids[pos]]
        back_ids = ids[pos - 1::-1]
        edge = _shared_edge(labels0, rec[back_ids[0]][1])
        pa, pb = pts0[labels0.index(edge[0])], pts0[labels0.index(edge[1])]
        back = develop_chain([rec[f] for f in back_ids], (edge, (pa, pb)),
                             _away_side(pts0, pa, pb), tol)
        placed.update({fid: (labels, pts) for fid, labels, pts in back})
        chain = [ids[pos]] + back_ids
        hinges += [Hinge(chain[t - 1], chain[t], _shared_edge(rec[chain[t - 1]][1], rec[chain[t]][1]))
                   for t in range(1, len(chain))]
    return {fid: PlacedFacet(fid, tuple(lab), pts, patch) for fid, (lab, pts) in placed.items()}, hinges


def polytope_edges(P: Prismatoid, band: Band) -> List[Tuple[str, str]]:
    edges = [(w(j), w((j + 1) % P.n_base)) for j in range(P.n_base)]
    edges += [(v(i), v((i + 1) % P.n_top)) for i in range(P.n_top)]
    edges += [(w(b), v(t)) for b, t in band.lateral_edges()]
    return edges


def unfold(P: Prismatoid, band: Band, plan: CutPlan, tol: Tolerances = DEFAULT_TOL,
           top_rule=TopRule.PROJECTED) -> Net:
    top_rule = TopRule(top_rule)
    base_pts = P.base.array.copy()
    base = PlacedFacet("B", tuple(facet_labels(P, band, "B")), base_pts, Patch.BASE)
    placed: Dict[str, PlacedFacet] = {"B": base}
    hinges: List[Hinge] = []

    for patch, ids, edge in ((Patch.MMINUS, plan.m_minus, plan.e_minus),
                             (Patch.MPLUS, plan.m_plus, plan.e_plus)):
        fids = [f"L{f}" for f in ids]
        anchor = f"L{band.facet_with_base_edge(edge[0], P.n_base)}"
        la, lb = w(edge[0]), w(edge[1])
        # base interior lies left of its CCW edges; band pieces fold outward
        hinge = ((la, lb), (base.point(la), base.point(lb)))
        got, hs = _develop_piece(P, band, fids, anchor, hinge, Side.RIGHT, patch, tol)
        placed.update(got)
        hinges += hs

    path = top_path(P, plan)
    if top_rule is TopRule.PROJECTED:
        coords = [P.top[i] for i in path]
    else:
        coords = [_placed_vertex(placed, Patch.MPLUS, v(i)) for i in path]
    i = choose_top_attachment(coords, tol) if len(path) > 1 else 1
    ta, tb = path[i - 1], path[i]
    host = placed[f"L{band.facet_with_top_edge(ta, P.n_top)}"]
    pa, pb = host.point(v(ta)), host.point(v(tb))
    (_, labels, pts), = develop_chain(
        [("A", facet_labels(P, band, "A"), facet_points3(P, band, "A"))],
        ((v(ta), v(tb)), (pa, pb)), _away_side(host.points, pa, pb), tol)
    placed["A"] = PlacedFacet("A", labels, pts, Patch.TOP)
    hinges.append(Hinge(host.facet_id, "A", (v(ta), v(tb))))

    hinge_set = {frozenset(h.edge) for h in hinges}
    cut_edges = tuple(e for e in polytope_edges(P, band) if frozenset(e) not in hinge_set)
    order = all_facet_ids(band)
    return Net(
        placed=tuple(placed[f] for f in order),
        attach_tree=tuple(hinges),
        cut_edges=cut_edges,
        top_attach_index=tb,
        cone_frame=cone_frame(P, plan, tol),
        plan=plan,
    )


def _placed_vertex(placed, patch, label):
    for pf in placed.values():
        if pf.patch is patch and label in pf.labels:
            return pf.point(label)
    raise KeyError(label)


def cone_frame(P: Prismatoid, plan: CutPlan, tol: Tolerances = DEFAULT_TOL) -> ConeFrame:
    ep = (tuple(map(float, P.base[plan.e_plus[0]])), tuple(map(float, P.base[plan.e_plus[1]])))
    em = (tuple(map(float, P.base[plan.e_minus[0]])), tuple(map(float, P.base[plan.e_minus[1]])))
    if plan.case_tag is CaseTag.CASE1:
        apex = tuple(map(float, P.base[plan.w0]))
    else:
        dp = (ep[1][0] - ep[0][0], ep[1][1] - ep[0][1])
        dm = (em[1][0] - em[0][0], em[1][1] - em[0][1])
        apex = line_intersection(ep[0], dp, em[0], dm, tol)
    return ConeFrame(ep, em, apex, plan.case_tag)
