"""SVG rendering of nets: one polygon per facet, hinges solid, cuts dashed."""
from __future__ import annotations

from xml.sax.saxutils import quoteattr

from .unfold import Net

STYLE = {
    "base": "#d9d9d9",
    "mplus": "#9ecae1",
    "mminus": "#fdae6b",
    "top": "#a1d99b",
}


def _f(x: float) -> str:
    return f"{x:.6f}"


def render_svg(net: Net, stroke_width: float = None) -> bytes:
    """Render ``net`` as a standalone SVG document.

    SVG's y axis points down, so y is negated to keep the net's handedness.
    The viewBox is the bounding box grown by 5% on every side.
    """
    x0, y0, x1, y1 = net.bounds()
    w, h = x1 - x0, y1 - y0
    mx, my = 0.05 * w, 0.05 * h
    vb = (x0 - mx, -(y1 + my), w + 2 * mx, h + 2 * my)
    sw = stroke_width if stroke_width is not None else 0.004 * max(w, h)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{" ".join(_f(c) for c in vb)}">',
        f'<g stroke="black" stroke-width="{_f(sw)}" stroke-linejoin="round">',
    ]
    for pf in net.placed:
        pts = " ".join(f"{_f(x)},{_f(-y)}" for x, y in pf.points)
        out.append(f'<polygon id={quoteattr(pf.facet_id)} class="{pf.patch.value}" '
                   f'fill="{STYLE[pf.patch.value]}" stroke="none" points="{pts}"/>')
    hinges = {frozenset(h.edge): h for h in net.attach_tree}
    drawn = set()
    for pf in net.placed:
        n = len(pf.labels)
        for k in range(n):
            a, b = pf.labels[k], pf.labels[(k + 1) % n]
            key = frozenset((a, b))
            hinge = hinges.get(key)
            if hinge is not None and key in drawn:
                continue
            drawn.add(key)
            (ax, ay), (bx, by) = pf.points[k], pf.points[(k + 1) % n]
            kind = "hinge" if hinge is not None else "cut"
            dash = "" if hinge is not None else f' stroke-dasharray="{_f(3 * sw)},{_f(2 * sw)}"'
            out.append(f'<line class="{kind}" x1="{_f(ax)}" y1="{_f(-ay)}" '
                       f'x2="{_f(bx)}" y2="{_f(-by)}"{dash}/>')
    out += ["</g>", "</svg>", ""]
    return "\n".join(out).encode("utf-8")
