"""Territories of a diagram: roofs, floors, illuminated sets, bodies,
circumscribed rectangles and 4-cell regions, all with exact membership."""
from dataclasses import dataclass

from .diagram import PRECIPITOUS, boundary, classify_edge, precipitous_edges
from .errors import BoundaryLamp, NotAnInterval, NotComparable
from .exact import (Region, halfplanes_of_polygon, is_convex, orient,
                    polygon_in_union)


class Territory:
    """Finite union of closed convex regions.

    ``open_pieces``, when given, describes the topological interior as a
    union of open convex sets (same half-planes, strict inequalities).
    """

    def __init__(self, pieces, kind="general", open_pieces=None):
        self.pieces = [r for r in pieces if not r.is_empty()]
        self.kind = kind
        self.open_pieces = open_pieces

    def contains(self, pt):
        return any(r.contains(pt) for r in self.pieces)

    def contains_interior(self, pt):
        if self.open_pieces is None:
            raise ValueError("interior not available for this territory")
        return any(r.contains(pt, strict=True) and _in_open_box(r, pt) for r in self.open_pieces)

    def segment_overlap(self, u, v):
        """Positive-length part of segment uv inside the territory."""
        lo_p, hi_p = min(u[0], v[0]), max(u[0], v[0])
        lo_q, hi_q = min(u[1], v[1]), max(u[1], v[1])
        for r in self.pieces:
            p0, q0, p1, q1 = r.bbox
            if hi_p < p0 or lo_p > p1 or hi_q < q0 or lo_q > q1:
                continue
            span = r.clip_segment(u, v)
            if span is not None and span[1] > span[0]:
                return True
        return False

    def contains_any_segment(self, segments):
        return any(self.segment_overlap(u, v) for u, v in segments)

    def contains_polygon(self, poly):
        return polygon_in_union(poly, self.pieces)

    def __and__(self, other):
        return Territory([a & b for a in self.pieces for b in other.pieces])


def _in_open_box(r, pt):
    p0, q0, p1, q1 = r.bbox
    return p0 < pt[0] < p1 and q0 < pt[1] < q1


def _rect(L):
    _, _, pmax, qmax = L.full_rect()
    return pmax, qmax


def region_box(p0, q0, p1, q1, extra=()):
    return Region(list(extra), (p0, q0, p1, q1))


def left_of(u, v):
    """Closed half-plane on the left of the directed line u -> v."""
    a, b = v[1] - u[1], -(v[0] - u[0])
    return a, b, a * u[0] + b * u[1]


def right_of(u, v):
    a, b, c = left_of(u, v)
    return -a, -b, -c


def polygon_regions(poly):
    """Closed convex pieces covering a simple polygon with at most one reflex corner."""
    pts = []
    for pt in poly:
        if pt not in pts:
            pts.append(pt)
    if len(pts) < 3 or is_convex(pts):
        return [_poly_region(pts)]
    area = sum(orient(pts[0], pts[k], pts[k + 1]) for k in range(1, len(pts) - 1))
    if area < 0:
        pts = pts[::-1]
    n = len(pts)
    reflex = next(k for k in range(n) if orient(pts[k - 1], pts[k], pts[(k + 1) % n]) < 0)
    fan = pts[reflex:] + pts[:reflex]
    return [_poly_region([fan[0], fan[k], fan[k + 1]]) for k in range(1, n - 1)]


def _poly_region(pts):
    ps = [p for p, _ in pts]
    qs = [q for _, q in pts]
    return Region(halfplanes_of_polygon(pts), (min(ps), min(qs), max(ps), max(qs)))


# --- roofs, floors, illuminated sets -----------------------------------------

def roof_polyline(L, x):
    """The normal-slope polyline through x: arm to the left side, x, arm to the right side."""
    p, q = L.coords[x]
    out = []
    for pt in ((0, q), (p, q), (p, 0)):
        if not out or out[-1] != pt:
            out.append(pt)
    return out


def roof_floor(L, a, b):
    if not L.leq(a, b):
        raise NotComparable(f"{a} is not below {b}")
    return roof_polyline(L, b), roof_polyline(L, a)


def roof_chains(L, x, bnd=None):
    """Lattice-side roof through x: the chains [lsupp x, x] and [rsupp x, x]."""
    bnd = bnd or boundary(L)
    left = sorted(L.interval(bnd.lsupp[x], x), key=L.index.get)
    right = sorted(L.interval(bnd.rsupp[x], x), key=L.index.get)
    return left, right


def enl_territory(L, a, b):
    """Illuminated set of [a, b]: below the roof of b and not strictly below the floor of a."""
    if not L.leq(a, b):
        raise NotAnInterval(f"[{a}, {b}]")
    pt, qt = L.coords[b]
    pa, qa = L.coords[a]
    right_band = region_box(pa, 0, pt, qt)
    left_band = region_box(0, qa, pt, qt)
    open_pieces = [region_box(pa, 0, pt, qt), region_box(0, qa, pt, qt)]
    return Territory([right_band, left_band], kind="normally-bordered", open_pieces=open_pieces)


def gideal(L, x):
    p, q = L.coords[x]
    return Territory([region_box(0, 0, p, q)], kind="normally-bordered")


def gfilter(L, x):
    pmax, qmax = _rect(L)
    p, q = L.coords[x]
    return Territory([region_box(p, 0, pmax, qmax), region_box(0, q, pmax, qmax)],
                     kind="normally-bordered")


@dataclass
class Illumination:
    enl: Territory
    lenl: Territory
    renl: Territory


def tube_feet(L, lamp):
    return [f for f, _ in lamp.tubes]


def illuminated(L, a, b, tubes=None):
    """Enl of [a, b]; with ``tubes`` (left to right) also LEnl and REnl."""
    enl = enl_territory(L, a, b)
    if not tubes:
        return Illumination(enl, None, None)
    pt, qt = L.coords[b]
    pa, qa = L.coords[a]
    first, last = L.coords[tubes[0][0]], L.coords[tubes[-1][0]]
    top = (pt, qt)
    lenl = Territory([region_box(0, qa, pa, qt),
                      region_box(pa, qa, pt, qt, [left_of(last, top)])])
    renl = Territory([region_box(pa, 0, pt, qa),
                      region_box(pa, qa, pt, qt, [right_of(first, top)])])
    return Illumination(enl, lenl, renl)


def body_polygon(L, lamp):
    """Body of a lamp as a polygon (a segment for a single tube)."""
    foot, peak = L.coords[lamp.foot], L.coords[lamp.peak]
    feet = [L.coords[f] for f, _ in lamp.tubes]
    if len(feet) == 1:
        return [foot, peak]
    return [foot, feet[-1], peak, feet[0]]


def body_territory(L, lamp):
    pa, qa = L.coords[lamp.foot]
    pt, qt = L.coords[lamp.peak]
    first, last = L.coords[lamp.tubes[0][0]], L.coords[lamp.tubes[-1][0]]
    top = (pt, qt)
    return Territory([region_box(pa, qa, pt, qt, [left_of(last, top), right_of(first, top)])])


# --- circumscribed rectangle and pegs ----------------------------------------

@dataclass
class LampRegions:
    body: Territory
    body_polygon: list
    circr: tuple
    uhcircr: list
    pegs: set


def cell_polygon(L, cell):
    c = L.coords
    return [c[cell.bottom], c[cell.right], c[cell.peak], c[cell.left]]


def lamp_regions(L, lamp, cells=None):
    from .diagram import four_cells

    if lamp.kind != "internal":
        raise BoundaryLamp(lamp.peak)
    lowers = L.lower_covers(lamp.peak)
    lc, rc = lowers[0], lowers[-1]
    bottom = L.meet(lc, rc)
    cells = cells if cells is not None else four_cells(L)
    uh = [cell for cell in cells if cell.peak == lamp.peak and L.leq(bottom, cell.bottom)]
    pegs = {lc, rc} | {f for f, _ in lamp.tubes}
    return LampRegions(body_territory(L, lamp), body_polygon(L, lamp), (bottom, lamp.peak), uh, pegs)


def circr_corners_match(L, lamp, regions):
    """CircR corners sit at the normal projections of the bottom and the peak."""
    b, t = regions.circr
    pb, qb = L.coords[b]
    pt, qt = L.coords[t]
    lowers = L.lower_covers(t)
    return L.coords[lowers[0]] == (pb, qt) and L.coords[lowers[-1]] == (pt, qb)


def uhcircr_clean(L, lamp, regions):
    """No vertex strictly inside a cell of UHCircR and no foreign edge segment in one."""
    sides = set()
    pieces = []
    for cell in regions.uhcircr:
        sides |= {(cell.bottom, cell.left), (cell.bottom, cell.right),
                  (cell.left, cell.peak), (cell.right, cell.peak)}
        pieces.append((cell, polygon_regions(cell_polygon(L, cell))))
    bad = []
    for v in L.labels:
        pt = L.coords[v]
        for cell, regs in pieces:
            if v in (cell.bottom, cell.left, cell.right, cell.peak):
                continue
            if _strictly_inside_polygon(cell_polygon(L, cell), pt):
                bad.append(("vertex", v))
    for e in L.edge_list():
        if e in sides:
            continue
        u, w = L.coords[e[0]], L.coords[e[1]]
        for cell, regs in pieces:
            if Territory(regs).segment_overlap(u, w) and _crosses_interior(cell_polygon(L, cell), u, w):
                bad.append(("edge", e))
    return not bad, bad


def _strictly_inside_polygon(poly, pt):
    """Exact strict containment for a simple polygon (ray casting with exact signs)."""
    n = len(poly)
    for k in range(n):
        a, b = poly[k], poly[(k + 1) % n]
        if orient(a, b, pt) == 0 and min(a[0], b[0]) <= pt[0] <= max(a[0], b[0]) \
                and min(a[1], b[1]) <= pt[1] <= max(a[1], b[1]):
            return False
    inside = False
    x, y = pt
    for k in range(n):
        (x1, y1), (x2, y2) = poly[k], poly[(k + 1) % n]
        if (y1 > y) != (y2 > y):
            xi = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
            if xi > x:
                inside = not inside
    return inside


def _crosses_interior(poly, u, w):
    """Some point of segment uw lies strictly inside the polygon."""
    # sample the midpoints between consecutive crossings with the polygon's sides
    ts = {0, 1}
    n = len(poly)
    for k in range(n):
        a, b = poly[k], poly[(k + 1) % n]
        d = (w[0] - u[0], w[1] - u[1])
        e = (b[0] - a[0], b[1] - a[1])
        den = d[0] * e[1] - d[1] * e[0]
        if den != 0:
            t = ((a[0] - u[0]) * e[1] - (a[1] - u[1]) * e[0]) / den
            if 0 <= t <= 1:
                ts.add(t)
    ts = sorted(ts)
    for t0, t1 in zip(ts, ts[1:]):
        t = (t0 + t1) / 2
        pt = (u[0] + t * (w[0] - u[0]), u[1] + t * (w[1] - u[1]))
        if _strictly_inside_polygon(poly, pt):
            return True
    return False


def pegs_slight(L, pegs):
    """The line through any two distinct pegs has slight slope."""
    pts = sorted(L.coords[g] for g in pegs)
    bad = []
    for i, a in enumerate(pts):
        for b in pts[i + 1:]:
            if (b[0] - a[0]) * (b[1] - a[1]) >= 0:
                bad.append((a, b))
    return not bad, bad


def steep_segments(L):
    return precipitous_edges(L)


def tube_in(L, lamp, territory):
    """Some neon tube of the lamp has a positive-length part in the territory."""
    return any(territory.segment_overlap(L.coords[f], L.coords[t]) for f, t in lamp.tubes)


def is_precipitous(L, e):
    return classify_edge(L, e) == PRECIPITOUS
