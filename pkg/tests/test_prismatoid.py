import math

import numpy as np
import pytest

from conftest import frustum, regular_polygon
from oracles import frustum_values, hull_lateral_facets
from prismunfold.exceptions import NonPositiveHeight, NotCCW, NotConvex, NotNested
from prismunfold.generate import GenConfig, gen_nested_prismatoid
from prismunfold.prismatoid import (FacetKind, all_facet_ids, compute_band, facet_labels,
                                    facet_points3, is_prismoid, make_polygon, path_curvature,
                                    project_flat, total_angle, validate, vertex_curvature)


def band_label_sets(band):
    return {frozenset(f.labels()) for f in band}


def test_make_polygon_rejects_bad_input():
    with pytest.raises(NotCCW):
        make_polygon([(0, 0), (0, 1), (1, 1), (1, 0)])
    with pytest.raises(NotConvex):
        make_polygon([(0, 0), (2, 0), (1, 0.1), (2, 2), (0, 2)])
    with pytest.raises(NotConvex):
        make_polygon([(0, 0), (1, 0)])
    with pytest.raises(NotConvex):
        make_polygon([(0, 0), (1, 0), (2, 0), (1, 1)])  # collinear vertex


def test_validate_nesting_and_height():
    sq = [(-1, -1), (1, -1), (1, 1), (-1, 1)]
    with pytest.raises(NotNested):
        validate(sq, [(0, 0), (1, 0), (0.5, 0.5)], 1.0)  # vertex on the boundary
    with pytest.raises(NotNested):
        validate(sq, [(0, 0), (2, 0), (0.5, 0.5)], 1.0)
    with pytest.raises(NonPositiveHeight):
        validate(sq, [(0, 0), (0.5, 0), (0.2, 0.3)], 0.0)


def test_frustum_band_is_four_quads(unit_frustum):
    band = compute_band(unit_frustum)
    assert len(band) == 4 and is_prismoid(band)
    assert [f.start_edge for f in band] == [(0, 0), (1, 1), (2, 2), (3, 3)]
    for f in band:
        pts = facet_points3(unit_frustum, band, f"L{band.facets.index(f)}")
        lengths = np.linalg.norm(np.roll(pts, -1, axis=0) - pts, axis=1)
        assert sorted(lengths)[1] == pytest.approx(frustum_values()["lateral"], abs=1e-12)


def test_band_invariants(pent_tri):
    band = compute_band(pent_tri)
    assert max(5, 3) <= len(band) <= 8
    for a, b in zip(band.facets, band.facets[1:] + band.facets[:1]):
        assert a.end_edge == b.start_edge
    base_edges = [f.base_edge for f in band if f.base_edge]
    top_edges = [f.top_edge for f in band if f.top_edge]
    assert sorted(base_edges) == [(j, (j + 1) % 5) for j in range(5)]
    assert sorted(top_edges) == [(i, (i + 1) % 3) for i in range(3)]


def test_band_matches_hull_oracle():
    for seed in range(40):
        for prismoid in (False, True):
            cfg = GenConfig(seed=seed, base_vertices=3 + seed % 8, top_vertices=3 + seed % 5,
                            prismoid_mode=prismoid)
            P = gen_nested_prismatoid(cfg)
            band = compute_band(P)
            assert band_label_sets(band) == hull_lateral_facets(P.base.array, P.top.array, P.height)


def test_curvatures():
    sq = make_polygon([(-1, -1), (1, -1), (1, 1), (-1, 1)])
    assert vertex_curvature(sq, 0) == pytest.approx(math.pi / 2)
    assert path_curvature(sq, 0, 2) == pytest.approx(math.pi / 2)  # interior vertex w1 only
    assert path_curvature(sq, 3, 2) == pytest.approx(math.pi)
    hexa = make_polygon(regular_polygon(6))
    assert sum(vertex_curvature(hexa, j) for j in range(6)) == pytest.approx(2 * math.pi)
    with pytest.raises(ValueError):
        path_curvature(sq, 1, 1)


def test_total_angle_frustum(unit_frustum):
    band = compute_band(unit_frustum)
    vals = frustum_values()
    assert total_angle(unit_frustum, band, "v0") == pytest.approx(vals["top_total"], abs=1e-12)
    # base vertex: two trapezoid angles plus the base right angle
    expect = math.pi / 2 + 2 * math.acos(0.5 / vals["lateral"])
    assert total_angle(unit_frustum, band, "w0") == pytest.approx(expect, abs=1e-12)


def test_facet_labels_and_ids(pent_tri):
    band = compute_band(pent_tri)
    ids = all_facet_ids(band)
    assert ids[0] == "B" and ids[-1] == "A" and len(ids) == len(band) + 2
    assert facet_labels(pent_tri, band, "B") == [f"w{j}" for j in range(5)]
    assert facet_labels(pent_tri, band, "A") == ["v0", "v2", "v1"]


def test_flat_projection_tiles_base(pent_tri):
    band = compute_band(pent_tri)
    flat = project_flat(pent_tri, band)
    assert flat.projected_top.vertices == pent_tri.top.vertices
    # cells tile the annulus between base and projected top
    assert flat.cell_area_sum() + pent_tri.top.area() == pytest.approx(pent_tri.base.area(), abs=1e-9)
    assert all(c > 0 for c in map(_area, flat.projected_band_cells))


def test_flat_projection_frustum(unit_frustum):
    flat = project_flat(unit_frustum, compute_band(unit_frustum))
    assert len(flat.projected_band_cells) == 4
    assert all(len(c) == 4 for c in flat.projected_band_cells)
    assert flat.cell_area_sum() == pytest.approx(3.0, abs=1e-12)


def _area(cell):
    pts = np.asarray(cell)
    x, y = pts[:, 0], pts[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def test_curvature_identity(rng):
    for _ in range(50):
        n = int(rng.integers(3, 10))
        P = gen_nested_prismatoid(GenConfig(seed=int(rng.integers(1 << 30)), base_vertices=n,
                                            top_vertices=3))
        i, k = rng.choice(n, size=2, replace=False)
        total = (path_curvature(P.base, i, k) + vertex_curvature(P.base, k)
                 + path_curvature(P.base, k, i) + vertex_curvature(P.base, i))
        assert total == pytest.approx(2 * math.pi, abs=1e-9)
