"""Deterministic SVG drawings of lattice diagrams."""
from xml.sax.saxutils import escape

from .lamps import lamps

SCALE = 60        # pixels per unit of merge coordinate
MARGIN = 24
RADIUS = 5
THIN, THICK = 1.5, 4.5


def _num(x):
    return f"{float(x):.2f}"


def render_svg(L):
    """SVG text; neon tubes are drawn thick and lamp feet are filled."""
    tubes, feet = set(), set()
    for lamp in lamps(L):
        tubes.update(lamp.tubes)
        feet.add(lamp.foot)
    xy = {v: ((p - q) * SCALE, -(p + q) * SCALE) for v, (p, q) in L.coords.items()}
    xs = [x for x, _ in xy.values()]
    ys = [y for _, y in xy.values()]
    x0, y0 = min(xs) - MARGIN, min(ys) - MARGIN
    width, height = max(xs) - x0 + MARGIN, max(ys) - y0 + MARGIN

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{_num(width)}" height="{_num(height)}" '
           f'viewBox="0 0 {_num(width)} {_num(height)}">']
    for a, b in sorted(L.covers):
        (xa, ya), (xb, yb) = xy[a], xy[b]
        w = THICK if (a, b) in tubes else THIN
        out.append(f'  <line x1="{_num(xa - x0)}" y1="{_num(ya - y0)}" x2="{_num(xb - x0)}" '
                   f'y2="{_num(yb - y0)}" stroke="black" stroke-width="{w}"/>')
    for v in L.labels:
        x, y = xy[v]
        fill = "black" if v in feet else "white"
        out.append(f'  <circle cx="{_num(x - x0)}" cy="{_num(y - y0)}" r="{RADIUS}" fill="{fill}" '
                   f'stroke="black" stroke-width="1"><title>{escape(v)}</title></circle>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
