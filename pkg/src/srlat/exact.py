"""Exact planar primitives over ``Fraction`` merge coordinates.

A point is a pair ``(p, q)``.  Everything here is sign arithmetic on
rationals; floats only ever appear as a prefilter whose rejections are
conservative.
"""
from fractions import Fraction

import numpy as np


def frac(value):
    """Parse an int, Fraction or ``"num/den"`` string into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floating point coordinates are not accepted")
    return Fraction(value)


def fmt(value):
    """Canonical ``num/den`` string (den > 0, reduced)."""
    value = frac(value)
    return f"{value.numerator}/{value.denominator}"


def orient(a, b, c):
    """Twice the signed area of triangle abc."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def sign(x):
    return (x > 0) - (x < 0)


def in_box(a, b, c):
    """c inside the closed bounding box of segment ab."""
    return (min(a[0], b[0]) <= c[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= c[1] <= max(a[1], b[1]))


def strictly_inside_segment(a, b, c):
    """c lies on the closed segment ab and differs from both endpoints."""
    return c != a and c != b and orient(a, b, c) == 0 and in_box(a, b, c)


def segments_meet(a, b, c, d):
    """Closed segments ab and cd share at least one point."""
    o1, o2 = sign(orient(a, b, c)), sign(orient(a, b, d))
    o3, o4 = sign(orient(c, d, a)), sign(orient(c, d, b))
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    if o1 == 0 and in_box(a, b, c):
        return True
    if o2 == 0 and in_box(a, b, d):
        return True
    if o3 == 0 and in_box(c, d, a):
        return True
    if o4 == 0 and in_box(c, d, b):
        return True
    return False


def _float_boxes(points, edges):
    pts = np.array([[float(p), float(q)] for p, q in points]).reshape(-1, 2)
    if not edges:
        return pts, np.zeros((0, 4))
    e = np.array(edges)
    a, b = pts[e[:, 0]], pts[e[:, 1]]
    return pts, np.hstack([np.minimum(a, b), np.maximum(a, b)])


def planarity_violations(points, edges, eps=1e-9):
    """Return (vertex_hits, crossings) for a straight-line drawing.

    ``points`` is a list of exact points, ``edges`` a list of index pairs.
    ``vertex_hits`` lists ``(edge, vertex)`` where the vertex lies in the
    relative interior of the edge; ``crossings`` lists pairs of edges with
    four distinct endpoints that touch or cross.
    """
    pts, boxes = _float_boxes(points, edges)
    hits, crossings = [], []
    if not edges:
        return hits, crossings
    lo, hi = boxes[:, :2] - eps, boxes[:, 2:] + eps
    inside = ((pts[None, :, 0] >= lo[:, None, 0]) & (pts[None, :, 0] <= hi[:, None, 0])
              & (pts[None, :, 1] >= lo[:, None, 1]) & (pts[None, :, 1] <= hi[:, None, 1]))
    for k, v in zip(*np.nonzero(inside)):
        i, j = edges[k]
        if v != i and v != j and strictly_inside_segment(points[i], points[j], points[v]):
            hits.append((int(k), int(v)))
    overlap = ((lo[:, None, 0] <= hi[None, :, 0]) & (lo[None, :, 0] <= hi[:, None, 0])
               & (lo[:, None, 1] <= hi[None, :, 1]) & (lo[None, :, 1] <= hi[:, None, 1]))
    overlap = np.triu(overlap, 1)
    for k1, k2 in zip(*np.nonzero(overlap)):
        a, b = edges[k1]
        c, d = edges[k2]
        if len({a, b, c, d}) < 4:
            continue
        if segments_meet(points[a], points[b], points[c], points[d]):
            crossings.append((int(k1), int(k2)))
    return hits, crossings


# --- convex regions given by closed half-planes a*p + b*q <= c -------------

def box_polygon(p0, q0, p1, q1):
    return [(p0, q0), (p1, q0), (p1, q1), (p0, q1)]


def clip_polygon(poly, hp):
    """Clip a convex polygon (vertex list, maybe degenerate) by a half-plane."""
    a, b, c = hp
    out = []
    n = len(poly)
    if n == 0:
        return out
    if n == 1:
        return list(poly) if a * poly[0][0] + b * poly[0][1] <= c else []
    vals = [a * x + b * y - c for x, y in poly]
    for k in range(n):
        cur, nxt = poly[k], poly[(k + 1) % n]
        vc, vn = vals[k], vals[(k + 1) % n]
        if vc <= 0:
            out.append(cur)
        if (vc < 0 < vn) or (vn < 0 < vc):
            t = vc / (vc - vn)
            out.append((cur[0] + t * (nxt[0] - cur[0]), cur[1] + t * (nxt[1] - cur[1])))
    dedup = []
    for pt in out:
        if not dedup or dedup[-1] != pt:
            dedup.append(pt)
    if len(dedup) > 1 and dedup[0] == dedup[-1]:
        dedup.pop()
    return dedup


class Region:
    """Closed convex region: the intersection of half-planes and a bounding box."""

    def __init__(self, halfplanes, bbox):
        self.halfplanes = tuple((frac(a), frac(b), frac(c)) for a, b, c in halfplanes)
        self.bbox = bbox
        self._vertices = None

    @property
    def vertices(self):
        if self._vertices is None:
            poly = box_polygon(*self.bbox)
            for hp in self.halfplanes:
                poly = clip_polygon(poly, hp)
                if not poly:
                    break
            self._vertices = poly
        return self._vertices

    def is_empty(self):
        return not self.vertices

    def contains(self, pt, strict=False):
        p, q = pt
        p0, q0, p1, q1 = self.bbox
        if not (p0 <= p <= p1 and q0 <= q <= q1):
            return False
        if strict:
            return all(a * p + b * q < c for a, b, c in self.halfplanes)
        return all(a * p + b * q <= c for a, b, c in self.halfplanes)

    def clip_segment(self, u, v):
        """Parameter interval [t0, t1] of u + t(v-u) inside the region, or None."""
        t0, t1 = Fraction(0), Fraction(1)
        d = (v[0] - u[0], v[1] - u[1])
        p0, q0, p1, q1 = self.bbox
        constraints = list(self.halfplanes) + [(-1, 0, -p0), (1, 0, p1), (0, -1, -q0), (0, 1, q1)]
        for a, b, c in constraints:
            ad = a * d[0] + b * d[1]
            rhs = c - (a * u[0] + b * u[1])
            if ad == 0:
                if rhs < 0:
                    return None
            elif ad > 0:
                t1 = min(t1, rhs / ad)
            else:
                t0 = max(t0, rhs / ad)
            if t0 > t1:
                return None
        return t0, t1

    def __and__(self, other):
        return Region(self.halfplanes + other.halfplanes, self.bbox)


def polygon_in_union(poly, regions):
    """Exact test: convex polygon (vertex list) is covered by the union of regions."""
    remaining = [poly] if poly else []
    for reg in regions:
        p0, q0, p1, q1 = reg.bbox
        sides = reg.halfplanes + ((-1, 0, -p0), (1, 0, p1), (0, -1, -q0), (0, 1, q1))
        nxt = []
        for piece in remaining:
            current = piece
            for a, b, c in sides:
                if max(a * x + b * y for x, y in current) > c:
                    nxt.append(clip_polygon(current, (-a, -b, -c)))
                current = clip_polygon(current, (a, b, c))
                if not current:
                    break
        remaining = [pc for pc in nxt if pc]
        if not remaining:
            return True
    return not remaining


def halfplanes_of_polygon(poly):
    """Half-planes of a counter-clockwise convex polygon (at least 3 corners),
    or of a segment / point when degenerate."""
    pts = []
    for pt in poly:
        if pt not in pts:
            pts.append(pt)
    if len(pts) == 1:
        (p, q), = pts
        return [(1, 0, p), (-1, 0, -p), (0, 1, q), (0, -1, -q)]
    if len(pts) == 2 or all(orient(pts[0], pts[1], r) == 0 for r in pts[2:]):
        u, v = min(pts), max(pts)
        a, b = v[1] - u[1], -(v[0] - u[0])
        c = a * u[0] + b * u[1]
        dx, dy = v[0] - u[0], v[1] - u[1]
        return [(a, b, c), (-a, -b, -c),
                (-dx, -dy, -(dx * u[0] + dy * u[1])),
                (dx, dy, dx * v[0] + dy * v[1])]
    area = sum(orient(pts[0], pts[k], pts[k + 1]) for k in range(1, len(pts) - 1))
    if area < 0:
        pts = pts[::-1]
    hps = []
    for k in range(len(pts)):
        u, v = pts[k], pts[(k + 1) % len(pts)]
        # interior is on the left of u->v:  orient(u, v, x) >= 0
        a, b = v[1] - u[1], -(v[0] - u[0])
        hps.append((a, b, a * u[0] + b * u[1]))
    return hps


def is_convex(poly):
    pts = []
    for pt in poly:
        if pt not in pts:
            pts.append(pt)
    if len(pts) < 3:
        return True
    signs = {sign(orient(pts[k], pts[(k + 1) % len(pts)], pts[(k + 2) % len(pts)]))
             for k in range(len(pts))}
    signs.discard(0)
    return len(signs) <= 1
