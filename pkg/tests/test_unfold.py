import math

import numpy as np
import pytest

from conftest import regular_polygon
from oracles import frustum_values
from prismunfold.exceptions import ChainBroken, NonPlanarFacet
from prismunfold.geom import Side
from prismunfold.prismatoid import compute_band, facet_labels, facet_points3, validate
from prismunfold.rmcut import CaseTag, Scheme, plan_cut
from prismunfold.unfold import (Patch, TopRule, choose_top_attachment, develop_chain, embed_facet,
                                path_turns, unfold)


def _pairwise(pts):
    pts = np.asarray(pts, float)
    return np.linalg.norm(pts[:, None] - pts[None], axis=-1)


def test_embed_facet_right_triangle():
    emb = embed_facet([(0, 0, 0), (1, 0, 0), (0, 0, 1)])
    assert np.allclose(emb, [(0, 0), (1, 0), (0, 1)], atol=1e-15)


def test_embed_facet_frustum_trapezoid(unit_frustum):
    band = compute_band(unit_frustum)
    pts3 = facet_points3(unit_frustum, band, "L0")
    emb = embed_facet(pts3)
    assert np.allclose(_pairwise(emb), _pairwise(pts3), atol=1e-14)
    # parallel sides 1 (top) and 2 (base) at distance sqrt(1.25)
    (t0, t1), (b1, b0) = emb[:2], emb[2:]
    d = t1 - t0
    h = abs(d[0] * (b0 - t0)[1] - d[1] * (b0 - t0)[0]) / np.linalg.norm(d)
    assert h == pytest.approx(frustum_values()["trapezoid_height"], abs=1e-12)
    assert np.linalg.norm(t1 - t0) == pytest.approx(1.0)
    assert np.linalg.norm(b1 - b0) == pytest.approx(2.0)


def test_embed_facet_errors():
    with pytest.raises(NonPlanarFacet):
        embed_facet([(0, 0, 0), (1, 0, 0), (2, 0, 0)])
    with pytest.raises(NonPlanarFacet):
        embed_facet([(0, 0, 0), (1, 0, 0), (1, 1, 0.1), (0, 1, 0)])


def test_develop_chain_frustum_turn(unit_frustum):
    band = compute_band(unit_frustum)
    recs = [(f"L{f}", facet_labels(unit_frustum, band, f"L{f}"),
             facet_points3(unit_frustum, band, f"L{f}")) for f in (0, 1)]
    hinge = (("w0", "w1"), ((1.0, -1.0), (1.0, 1.0)))
    placed = develop_chain(recs, hinge, Side.RIGHT)
    assert len(placed) == 2
    (_, la, pa), (_, lb, pb) = placed
    w1 = pa[la.index("w1")]
    assert np.allclose(w1, pb[lb.index("w1")])
    u = pa[la.index("w0")] - w1
    t = pb[lb.index("w2")] - w1
    turn = math.pi - math.atan2(abs(u[0] * t[1] - u[1] * t[0]), float(u @ t))
    assert turn == pytest.approx(frustum_values()["base_turn"], abs=1e-12)


def test_develop_chain_flat_chain_is_congruent():
    sq = [(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0)]
    nxt = [(1, 0, 0), (2, 0, 0), (2, 1, 0), (1, 1, 0)]
    recs = [("a", ("p0", "p1", "p2", "p3"), sq), ("b", ("p1", "q1", "q2", "p2"), nxt)]
    placed = develop_chain(recs, (("p0", "p1"), ((0.0, 0.0), (1.0, 0.0))), Side.LEFT)
    assert np.allclose(placed[1][2], np.array(nxt)[:, :2], atol=1e-12)


def test_develop_chain_broken():
    a = ("a", ("p0", "p1", "p2"), [(0, 0, 0), (1, 0, 0), (0, 1, 0)])
    b = ("b", ("q0", "q1", "q2"), [(5, 0, 0), (6, 0, 0), (5, 1, 0)])
    with pytest.raises(ChainBroken):
        develop_chain([a, b], (("p0", "p1"), ((0.0, 0.0), (1.0, 0.0))), Side.LEFT)


def test_choose_top_attachment():
    # turns at path[1..3]; subpath (path[0], path[i]) counts path[1..i-1]
    path = [(0, 0), (1, 0)]
    for t in (0.3, 0.4):
        heading = math.atan2(path[-1][1] - path[-2][1], path[-1][0] - path[-2][0]) + t
        path.append((path[-1][0] + math.cos(heading), path[-1][1] + math.sin(heading)))
    heading = math.atan2(path[-1][1] - path[-2][1], path[-1][0] - path[-2][0]) + 0.9
    path.append((path[-1][0] + math.cos(heading), path[-1][1] + math.sin(heading)))
    path.append((path[-1][0] + 1.0, path[-1][1]))
    assert path_turns(path)[:3] == pytest.approx([0.3, 0.4, 0.9])
    assert choose_top_attachment(path) == 3
    straight = [(k, 0.0) for k in range(6)]
    assert choose_top_attachment(straight) == 5
    assert choose_top_attachment([(0, 0), (1, 0)]) == 1


def test_unfold_frustum_prismoid(unit_frustum):
    band = compute_band(unit_frustum)
    net = unfold(unit_frustum, band, plan_cut(unit_frustum, band, Scheme.PRISMOID))
    assert len(net.placed) == 6
    assert np.array_equal(net.facet("B").points, unit_frustum.base.array)
    assert len(net.patch(Patch.MPLUS)) == 2 and len(net.patch(Patch.MMINUS)) == 2
    top = [h for h in net.attach_tree if h.child == "A"][0]
    assert set(top.edge) == {"v1", "v2"} and net.top_attach_index == 2
    assert len(net.attach_tree) == 5
    assert net.cone_frame.case_tag is CaseTag.CASE1
    assert net.cone_frame.apex == pytest.approx((1.0, -1.0))


def test_unfold_frustum_general(unit_frustum):
    band = compute_band(unit_frustum)
    net = unfold(unit_frustum, band, plan_cut(unit_frustum, band, Scheme.GENERAL))
    assert len(net.patch(Patch.MPLUS)) == 1 and len(net.patch(Patch.MMINUS)) == 3
    host = [h for h in net.attach_tree if h.child == "A"][0].parent
    assert net.facet(host).patch is Patch.MPLUS


def test_unfold_hexagon_apex_is_line_intersection():
    P = validate(regular_polygon(6, 2.0), regular_polygon(6, 1.0), 1.0)
    band = compute_band(P)
    net = unfold(P, band, plan_cut(P, band))
    cf = net.cone_frame
    assert cf.case_tag is CaseTag.CASE2
    (p0, p1), (q0, q1) = cf.e_plus, cf.e_minus
    for a, b in ((p0, p1), (q0, q1)):
        cr = (b[0] - a[0]) * (cf.apex[1] - a[1]) - (b[1] - a[1]) * (cf.apex[0] - a[0])
        assert abs(cr) < 1e-9


def test_unfold_is_deterministic(pent_tri):
    band = compute_band(pent_tri)
    plan = plan_cut(pent_tri, band)
    a, b = unfold(pent_tri, band, plan), unfold(pent_tri, band, plan)
    for pa, pb in zip(a.placed, b.placed):
        assert np.array_equal(pa.points, pb.points)


def test_developed_top_rule_still_available(pent_tri):
    band = compute_band(pent_tri)
    net = unfold(pent_tri, band, plan_cut(pent_tri, band), top_rule=TopRule.DEVELOPED)
    assert len(net.placed) == len(band) + 2
