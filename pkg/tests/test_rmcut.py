import math

import pytest

from conftest import regular_polygon
from prismunfold.generate import GenConfig, gen_nested_prismatoid
from prismunfold.prismatoid import compute_band, make_polygon, path_curvature, validate, vertex_curvature
from prismunfold.rmcut import (CaseTag, Scheme, identify_shadow, plan_cut, select_base_root,
                               select_cut_general, select_eplus, select_wk_prismoid)

SQUARE = make_polygon([(1, -1), (1, 1), (-1, 1), (-1, -1)])
HEXAGON = make_polygon(regular_polygon(6))


def test_select_base_root_rules():
    assert select_base_root(SQUARE) == (0, CaseTag.CASE1)
    assert select_base_root(HEXAGON) == (0, CaseTag.CASE2)
    tri = make_polygon([(0, 0), (4, 0), (0, 3)])
    # turn oracle: interior angles pi/2, atan(3/4), atan(4/3); smallest angle wins
    curv = [math.pi / 2, math.pi - math.atan2(3, 4), math.pi - math.atan2(4, 3)]
    assert [vertex_curvature(tri, j) for j in range(3)] == pytest.approx(curv)
    assert select_base_root(tri) == (1, CaseTag.CASE1)


@pytest.mark.parametrize("poly,expect", [
    (SQUARE, 2),
    (HEXAGON, 3),
    (make_polygon(regular_polygon(3)), 2),
])
def test_select_wk_prismoid(poly, expect):
    k = select_wk_prismoid(poly, 0)
    assert k == expect
    assert path_curvature(poly, 0, k) < math.pi
    if (k + 1) % len(poly):
        assert path_curvature(poly, 0, k + 1) >= math.pi - 1e-9


@pytest.mark.parametrize("poly,case,expect", [
    (SQUARE, CaseTag.CASE1, (0, 1)),
    (HEXAGON, CaseTag.CASE2, (1, 2)),
    (make_polygon(regular_polygon(12)), CaseTag.CASE2, (2, 3)),
])
def test_select_eplus(poly, case, expect):
    assert select_eplus(poly, 0, case) == expect


def test_select_cut_general_frustum(unit_frustum):
    band = compute_band(unit_frustum)
    assert select_cut_general(unit_frustum, band, 0) == (1, 1, 0)


def test_identify_shadow_frustum(unit_frustum):
    band = compute_band(unit_frustum)
    s = identify_shadow(unit_frustum, band, 0, 1)
    assert (s.v0_minus, s.v0_plus, s.vk_minus, s.vk_plus) == (0, 0, 1, 1)
    assert s.v_star_0 == pytest.approx((0.5, -0.5))
    assert s.rules_agree


def test_identify_shadow_needs_distinct_roots(unit_frustum):
    with pytest.raises(ValueError):
        identify_shadow(unit_frustum, compute_band(unit_frustum), 0, 0)


def test_plan_frustum_prismoid(unit_frustum):
    band = compute_band(unit_frustum)
    plan = plan_cut(unit_frustum, band, Scheme.PRISMOID)
    assert (plan.w0, plan.wk) == (0, 2)
    assert plan.cut_edge_0 == (0, 0) and plan.cut_edge_k == (2, 2)
    assert plan.e_plus == (0, 1) and plan.e_minus == (3, 0)
    assert plan.case_tag is CaseTag.CASE1
    assert [band[f].base_edge for f in plan.m_plus] == [(0, 1), (1, 2)]
    assert len(plan.m_minus) == 2


def test_plan_frustum_general(unit_frustum):
    band = compute_band(unit_frustum)
    plan = plan_cut(unit_frustum, band, Scheme.GENERAL)
    assert plan.wk == 1
    assert plan.cut_edge_0 == (0, 0) and plan.cut_edge_k == (1, 1)
    assert len(plan.m_plus) == 1 and len(plan.m_minus) == 3


def test_auto_dispatch(unit_frustum, pent_tri):
    assert plan_cut(unit_frustum, compute_band(unit_frustum)).scheme is Scheme.PRISMOID
    assert plan_cut(pent_tri, compute_band(pent_tri)).scheme is Scheme.GENERAL
    with pytest.raises(ValueError):
        plan_cut(pent_tri, compute_band(pent_tri), Scheme.PRISMOID)


def test_hexagon_and_square_case_pins():
    for n, case, eplus in ((6, CaseTag.CASE2, (1, 2)), (4, CaseTag.CASE1, (0, 1))):
        P = validate(regular_polygon(n, 2.0), regular_polygon(n, 1.0), 1.0)
        plan = plan_cut(P, compute_band(P))
        assert plan.case_tag is case and plan.e_plus == eplus


def test_plan_invariants_on_random_instances():
    for seed in range(150):
        for prismoid in (False, True):
            P = gen_nested_prismatoid(GenConfig(seed=seed, base_vertices=3 + seed % 10,
                                                top_vertices=3 + (seed * 7) % 10,
                                                prismoid_mode=prismoid))
            band = compute_band(P)
            schemes = (Scheme.PRISMOID, Scheme.GENERAL) if prismoid else (Scheme.GENERAL,)
            for scheme in schemes:
                plan = plan_cut(P, band, scheme)
                both = plan.m_plus + plan.m_minus
                assert sorted(both) == list(range(len(band)))
                assert band.lateral_edge_index(plan.cut_edge_0) >= 0
                assert band.lateral_edge_index(plan.cut_edge_k) >= 0
                if scheme is Scheme.PRISMOID:
                    assert path_curvature(P.base, plan.w0, plan.wk) < math.pi
                else:
                    assert path_curvature(P.base, plan.wk, plan.w0) <= math.pi + 1e-9
                w0, case = select_base_root(P.base)
                all_small = all(vertex_curvature(P.base, j) < math.pi / 2 for j in range(P.n_base))
                assert (case is CaseTag.CASE2) == all_small


def test_plan_to_dict_roundtrips_json(pent_tri):
    import json
    plan = plan_cut(pent_tri, compute_band(pent_tri))
    d = plan.to_dict()
    assert json.loads(json.dumps(d))["scheme"] == "general"
    assert "shadow" in d
