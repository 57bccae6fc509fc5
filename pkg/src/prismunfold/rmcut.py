"""Cut planning for the radially monotone band cut.

A plan fixes a root vertex ``w0`` and a second base vertex ``wk``, cuts the
two lateral edges leaving them, and splits the band into the piece M+ (over
the CCW base path w0 -> wk) and M- (over wk -> w0). M- hangs off the base
at ``e_minus = (w_{l-1}, w0)`` and M+ at ``e_plus``.

Two schemes choose ``wk``: the prismoid scheme walks base curvature up to
pi, the general scheme takes the far contact of the base supporting line
parallel to ``e_minus``. Indices in plans are absolute input indices.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from .exceptions import CutEdgeMissing, GeometryError
from .geom import DEFAULT_TOL, Tolerances, line_intersection
from .prismatoid import Band, ConvexPolygon2, Prismatoid, is_prismoid, path_curvature, vertex_curvature

HALF_PI = 0.5 * math.pi


class Scheme(enum.Enum):
    PRISMOID = "prismoid"
    GENERAL = "general"
    AUTO = "auto"


class CaseTag(enum.Enum):
    CASE1 = "case1"
    CASE2 = "case2"


Line = Tuple[Tuple[float, float], Tuple[float, float]]


@dataclass(frozen=True)
class ShadowFrame:
    """Lines cut from the top plane by the four facets around w0 and wk.

    Each ``t*`` line is ``(point, direction)``. ``v_star_*`` is None when the
    two lines at a root are parallel. The Γ paths are CCW top index pairs.
    """

    t0_minus: Line
    t0_plus: Line
    tk_minus: Line
    tk_plus: Line
    v_star_0: Optional[Tuple[float, float]]
    v_star_k: Optional[Tuple[float, float]]
    v0_minus: int
    v0_plus: int
    vk_minus: int
    vk_plus: int
    rules_agree: bool = True

    @property
    def gamma0(self) -> Tuple[int, int]:
        return self.v0_minus, self.v0_plus

    @property
    def gamma_plus(self) -> Tuple[int, int]:
        return self.v0_plus, self.vk_minus

    @property
    def gamma_k(self) -> Tuple[int, int]:
        return self.vk_minus, self.vk_plus

    @property
    def gamma_minus(self) -> Tuple[int, int]:
        return self.vk_plus, self.v0_minus


@dataclass(frozen=True)
class CutPlan:
    scheme: Scheme
    w0: int
    wk: int
    cut_edge_0: Tuple[int, int]
    cut_edge_k: Tuple[int, int]
    e_minus: Tuple[int, int]
    e_plus: Tuple[int, int]
    case_tag: CaseTag
    m_plus: Tuple[int, ...]
    m_minus: Tuple[int, ...]
    shadow: Optional[ShadowFrame] = None
    diagnostics: dict = field(default_factory=dict, compare=False)

    @property
    def top_start(self) -> int:
        """First top vertex of M+ (the cut vertex at w0)."""
        return self.cut_edge_0[1]

    @property
    def top_end(self) -> int:
        return self.cut_edge_k[1]

    def to_dict(self) -> dict:
        out = {
            "scheme": self.scheme.value, "w0": self.w0, "wk": self.wk,
            "cut_edge_0": list(self.cut_edge_0), "cut_edge_k": list(self.cut_edge_k),
            "e_minus": list(self.e_minus), "e_plus": list(self.e_plus),
            "case_tag": self.case_tag.value,
            "m_plus": list(self.m_plus), "m_minus": list(self.m_minus),
        }
        if self.shadow is not None:
            s = self.shadow
            out["shadow"] = {"v0_minus": s.v0_minus, "v0_plus": s.v0_plus,
                             "vk_minus": s.vk_minus, "vk_plus": s.vk_plus,
                             "v_star_0": s.v_star_0, "v_star_k": s.v_star_k}
        return out


def select_base_root(base: ConvexPolygon2, tol: Tolerances = DEFAULT_TOL) -> Tuple[int, CaseTag]:
    """Pick w0: the sharpest vertex if some curvature reaches pi/2, else index 0."""
    curv = [vertex_curvature(base, j) for j in range(len(base))]
    top = max(curv)
    if top < HALF_PI - tol.eps_angle:
        return 0, CaseTag.CASE2
    # ties within eps_angle go to the lowest index
    return next(j for j, c in enumerate(curv) if c >= top - tol.eps_angle), CaseTag.CASE1


def select_wk_prismoid(base: ConvexPolygon2, w0: int, tol: Tolerances = DEFAULT_TOL) -> int:
    """Largest k with curvature(w0, w_k) < pi; then curvature(w0, w_k+1) >= pi."""
    n = len(base)
    prefix, k = 0.0, 1
    for t in range(1, n):
        # prefix == curvature of (w0, w_t)
        if prefix >= math.pi - tol.eps_angle:
            break
        k = t
        prefix += vertex_curvature(base, w0 + t)
    return (w0 + k) % n


def _support(points: np.ndarray, direction, tol: Tolerances):
    """Indices of the vertices touching the supporting line in ``direction``."""
    vals = points @ np.asarray(direction, dtype=float)
    scale = max(float(np.abs(points).max()), 1.0) * math.hypot(*direction)
    best = vals.max()
    return [int(j) for j in np.flatnonzero(vals >= best - tol.eps_geom * scale)]


def _farthest_back(candidates, anchor: int, n: int) -> int:
    """Candidate whose CCW path to ``anchor`` has the most edges."""
    return max(candidates, key=lambda j: ((anchor - j) % n, -j))


def select_cut_general(P: Prismatoid, band: Band, w0: int,
                       tol: Tolerances = DEFAULT_TOL) -> Tuple[int, int, int]:
    """Return ``(wk, vk_plus, v0_minus)`` from the parallel supporting lines.

    ``b`` is the base line through e_minus; ``b'`` its parallel support on
    the far side, whose contact gives wk. ``a`` is the top-plane trace of
    the facet over e_minus (parallel to ``b``) and ``a'`` its far support on
    the top, whose contact gives vk_plus. Edge contacts resolve to the
    endpoint with the longer CCW path back to w0 (resp. v0_minus).
    """
    nb, nt = P.n_base, P.n_top
    w0 = w0 % nb
    wl = (w0 - 1) % nb
    d = np.subtract(P.base[w0], P.base[wl])
    outward = (d[1], -d[0])
    far = (-outward[0], -outward[1])
    base_contact = _support(P.base.array, far, tol)
    wk = _farthest_back(base_contact, w0, nb)
    t0m = band[band.facet_with_base_edge(wl, nb)]
    v0_minus = t0m.end_edge[1]
    top_contact = _support(P.top.array, far, tol)
    vk_plus = _farthest_back(top_contact, v0_minus, nt)
    diagnostics = {"w0": w0, "base_contact": base_contact, "top_contact": top_contact,
                   "wk": wk, "vk_plus": vk_plus, "v0_minus": v0_minus}
    for edge in ((w0, v0_minus), (wk, vk_plus)):
        if band.lateral_edge_index(edge) < 0:
            raise CutEdgeMissing(f"cut edge (w{edge[0]}, v{edge[1]}) is not a lateral edge",
                                 diagnostics)
    return wk, vk_plus, v0_minus


def _trace_line(P: Prismatoid, band: Band, f: int) -> Line:
    facet = band[f]
    a, b = facet.base_edge
    d = np.subtract(P.base[b], P.base[a])
    return tuple(map(float, P.top[facet.top_indices[0]])), (float(d[0]), float(d[1]))


def identify_shadow(P: Prismatoid, band: Band, w0: int, wk: int,
                    tol: Tolerances = DEFAULT_TOL) -> ShadowFrame:
    """Shadow-prismoid frame around the two roots.

    ``v_i^±`` is the top vertex of T_i^± closer to the crossing point of
    the two traces, falling back to the vertex sharing a lateral edge with
    w_i when the traces are parallel. ``rules_agree`` records whether both
    rules pick the same vertices.
    """
    nb, nt = P.n_base, P.n_top
    if w0 % nb == wk % nb:
        raise ValueError("identify_shadow needs w0 != wk")
    lines, picks, agree = {}, {}, True
    stars = {}
    for root, tag in ((w0 % nb, "0"), (wk % nb, "k")):
        f_minus = band.facet_with_base_edge(root - 1, nb)
        f_plus = band.facet_with_base_edge(root, nb)
        lm, lp = _trace_line(P, band, f_minus), _trace_line(P, band, f_plus)
        star = line_intersection(lm[0], lm[1], lp[0], lp[1], tol)
        stars[tag] = star
        lines[tag] = (lm, lp)
        adj = {"minus": band[f_minus].end_edge[1], "plus": band[f_plus].start_edge[1]}
        for side, f in (("minus", f_minus), ("plus", f_plus)):
            cand = band[f].top_indices
            if len(cand) == 1 or star is None:
                pick = cand[0] if len(cand) == 1 else adj[side]
            else:
                pick = min(cand, key=lambda i: math.dist(P.top[i], star))
            agree = agree and pick == adj[side]
            picks[tag + side] = pick
    return ShadowFrame(
        t0_minus=lines["0"][0], t0_plus=lines["0"][1],
        tk_minus=lines["k"][0], tk_plus=lines["k"][1],
        v_star_0=stars["0"], v_star_k=stars["k"],
        v0_minus=picks["0minus"], v0_plus=picks["0plus"],
        vk_minus=picks["kminus"], vk_plus=picks["kplus"],
        rules_agree=agree,
    )


def select_eplus(base: ConvexPolygon2, w0: int, case_tag: CaseTag,
                 tol: Tolerances = DEFAULT_TOL) -> Tuple[int, int]:
    """Base edge where M+ is re-attached.

    Case 1 uses (w0, w1). Case 2 uses (w_{j-1}, w_j) for the smallest j whose
    path (w_{l-1}, w_j) reaches curvature pi/2.
    """
    n = len(base)
    if case_tag is CaseTag.CASE1:
        return w0 % n, (w0 + 1) % n
    for j in range(1, n):
        if path_curvature(base, w0 - 1, w0 + j) >= HALF_PI - tol.eps_angle:
            return (w0 + j - 1) % n, (w0 + j) % n
    raise GeometryError("no base path reaches curvature pi/2")


def _facet_range(band: Band, start: int, stop: int) -> Tuple[int, ...]:
    n = len(band)
    count = (stop - start) % n
    return tuple((start + t) % n for t in range(count))


def plan_cut(P: Prismatoid, band: Band, scheme=Scheme.AUTO,
             tol: Tolerances = DEFAULT_TOL) -> CutPlan:
    scheme = Scheme(scheme)
    prismoid = is_prismoid(band)
    if scheme is Scheme.AUTO:
        scheme = Scheme.PRISMOID if prismoid else Scheme.GENERAL
    if scheme is Scheme.PRISMOID and not prismoid:
        raise ValueError("prismoid scheme needs an all-quad band")
    nb = P.n_base
    w0, case_tag = select_base_root(P.base, tol)
    shadow = None
    if scheme is Scheme.PRISMOID:
        wk = select_wk_prismoid(P.base, w0, tol)
        cut0, cutk = (w0, band.partner(w0)), (wk, band.partner(wk))
    else:
        wk, vk_plus, v0_minus = select_cut_general(P, band, w0, tol)
        cut0, cutk = (w0, v0_minus), (wk, vk_plus)
        shadow = identify_shadow(P, band, w0, wk, tol)
    i0, ik = band.lateral_edge_index(cut0), band.lateral_edge_index(cutk)
    if i0 < 0 or ik < 0:
        raise CutEdgeMissing("cut edge not found in band", {"cut0": cut0, "cutk": cutk})
    m_plus, m_minus = _facet_range(band, i0, ik), _facet_range(band, ik, i0)
    e_minus = ((w0 - 1) % nb, w0)
    e_plus = select_eplus(P.base, w0, case_tag, tol)
    plus_edges = {band[f].base_edge for f in m_plus}
    minus_edges = {band[f].base_edge for f in m_minus}
    if e_plus not in plus_edges or e_minus not in minus_edges:
        raise GeometryError(f"attachment edges e+={e_plus} e-={e_minus} miss their band pieces")
    diagnostics = {
        "curvature_w0_wk": path_curvature(P.base, w0, wk),
        "curvature_wk_w0": path_curvature(P.base, wk, w0),
    }
    if scheme is Scheme.GENERAL:
        # more than one contact means a supporting line met an edge, not a vertex
        d = np.subtract(P.base[w0], P.base[w0 - 1])
        far = (-d[1], d[0])
        diagnostics["base_contact"] = _support(P.base.array, far, tol)
        diagnostics["top_contact"] = _support(P.top.array, far, tol)
    return CutPlan(scheme, w0, wk, cut0, cutk, e_minus, e_plus, case_tag,
                   m_plus, m_minus, shadow, diagnostics)
