import xml.etree.ElementTree as ET

from prismunfold.prismatoid import compute_band
from prismunfold.rmcut import plan_cut
from prismunfold.svg import render_svg
from prismunfold.unfold import unfold

NS = "{http://www.w3.org/2000/svg}"


def _net(P):
    band = compute_band(P)
    return unfold(P, band, plan_cut(P, band))


def test_svg_structure(unit_frustum):
    net = _net(unit_frustum)
    root = ET.fromstring(render_svg(net))
    polys = root.findall(f".//{NS}polygon")
    assert len(polys) == 6
    assert {p.get("class") for p in polys} == {"base", "mplus", "mminus", "top"}
    lines = root.findall(f".//{NS}line")
    hinges = [ln for ln in lines if ln.get("class") == "hinge"]
    cuts = [ln for ln in lines if ln.get("class") == "cut"]
    assert len(hinges) == len(net.attach_tree)
    assert all(c.get("stroke-dasharray") for c in cuts)
    assert not any(h.get("stroke-dasharray") for h in hinges)


def test_svg_viewbox_covers_net(pent_tri):
    net = _net(pent_tri)
    root = ET.fromstring(render_svg(net))
    x, y, w, h = map(float, root.get("viewBox").split())
    x0, y0, x1, y1 = net.bounds()
    assert x < x0 and x + w > x1 and y < -y1 and y + h > -y0


def test_svg_deterministic(pent_tri):
    assert render_svg(_net(pent_tri)) == render_svg(_net(pent_tri))
