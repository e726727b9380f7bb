"""Planar lattice diagrams in merge coordinates and their structural validators.

A vertex at plane point (x, y) is stored as p = (x+y)/2, q = (y-x)/2, so the
two normal slopes become the two axis directions: an upward edge runs
north-east when only p grows, north-west when only q grows, and is
precipitous when both grow.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import (DownwardEdge, NotALattice, NotPlanar, NotSR, UnknownEdge,
                     UnknownLabel)
from .exact import frac, planarity_violations
from .report import Report

NE, NW, PRECIPITOUS = "normal-NE", "normal-NW", "precipitous"


def slope_class(dp, dq):
    if dq == 0 and dp > 0:
        return NE
    if dp == 0 and dq > 0:
        return NW
    if dp > 0 and dq > 0:
        return PRECIPITOUS
    if dp * dq < 0:
        return "slight"
    return "downward"


def _lr_key(dp, dq):
    """Sort key for upward directions, leftmost first (x = p - q)."""
    return Fraction(dp - dq, dp + dq)


class LatticeDiagram:
    """A finite lattice with a fixed straight-line planar diagram.

    Vertices are kept in a topological order (by height p+q, then x = p-q),
    so index order is a linear extension of the lattice order.
    """

    def __init__(self, vertices, covers):
        coords = {}
        for label, (p, q) in (vertices.items() if isinstance(vertices, dict) else vertices):
            label = str(label)
            if label in coords:
                raise NotALattice(f"duplicate label {label!r}")
            coords[label] = (frac(p), frac(q))
        if not coords:
            raise NotALattice("empty vertex set")
        seen = {}
        for label, c in coords.items():
            if c in seen:
                raise NotPlanar(f"vertices {seen[c]!r} and {label!r} share coordinates")
            seen[c] = label
        self.labels = tuple(sorted(coords, key=lambda v: (coords[v][0] + coords[v][1],
                                                          coords[v][0] - coords[v][1], v)))
        self.index = {v: i for i, v in enumerate(self.labels)}
        self.coords = coords
        self.n = n = len(self.labels)
        pairs = set()
        for lo, hi in covers:
            lo, hi = str(lo), str(hi)
            for v in (lo, hi):
                if v not in coords:
                    raise UnknownLabel(v)
            dp = coords[hi][0] - coords[lo][0]
            dq = coords[hi][1] - coords[lo][1]
            kind = slope_class(dp, dq)
            if kind in ("slight", "downward"):
                raise DownwardEdge(f"edge {lo}->{hi} has {kind} direction ({dp}, {dq})")
            pairs.add((self.index[lo], self.index[hi]))
        self.edges = sorted(pairs)
        self.covers = frozenset((self.labels[i], self.labels[j]) for i, j in self.edges)
        self.up = [[] for _ in range(n)]
        self.down = [[] for _ in range(n)]
        for i, j in self.edges:
            self.up[i].append(j)
            self.down[j].append(i)
        for i in range(n):
            self.up[i].sort(key=lambda j: _lr_key(*self._delta(i, j)))
            self.down[i].sort(key=lambda j: _lr_key(*self._delta(j, i)), reverse=True)
        self._order()
        self._planarity()

    # -- construction helpers -------------------------------------------------
    def _delta(self, i, j):
        a, b = self.coords[self.labels[i]], self.coords[self.labels[j]]
        return b[0] - a[0], b[1] - a[1]

    def _order(self):
        n = self.n
        leq = np.zeros((n, n), dtype=bool)
        for i in range(n - 1, -1, -1):
            leq[i, i] = True
            for j in self.up[i]:
                leq[i] |= leq[j]
        self.leq_m = leq
        cov = np.zeros((n, n), dtype=bool)
        for i, j in self.edges:
            cov[i, j] = True
        # an edge is a cover iff no other upward path joins its ends
        for i, j in self.edges:
            for k in self.up[i]:
                if k != j and leq[k, j]:
                    raise NotALattice(f"edge {self.labels[i]}->{self.labels[j]} is not a cover")
        self.cov = cov
        bottoms = [i for i in range(n) if not self.down[i]]
        tops = [i for i in range(n) if not self.up[i]]
        if len(tops) != 1:
            raise NotALattice(f"{len(tops)} maximal elements")
        if len(bottoms) != 1:
            raise NotALattice(f"{len(bottoms)} minimal elements")
        self.b, self.t = bottoms[0], tops[0]
        self.bottom, self.top = self.labels[self.b], self.labels[self.t]
        self.meet_t = self._bound_table(leq)
        self.join_t = self._bound_table(leq.T[::-1, ::-1])[::-1, ::-1]
        self.join_t = n - 1 - self.join_t

    def _bound_table(self, leq):
        # leq[k, j]: k <= j; rows are in topological order, so the greatest
        # common lower bound is the last row that is below both.
        n = self.n
        table = np.empty((n, n), dtype=np.int64)
        rev = leq[::-1]
        for i in range(n):
            common = leq & leq[:, i][:, None]
            has = common.any(axis=0)
            if not has.all():
                j = int(np.argmin(has))
                raise NotALattice(f"{self.labels[i]} and {self.labels[j]} have no common bound")
            last = n - 1 - np.argmax(common[::-1], axis=0)
            if (common & ~leq[:, last]).any():
                j = int(np.argmax((common & ~leq[:, last]).any(axis=0)))
                raise NotALattice(f"{self.labels[i]} and {self.labels[j]} lack a unique bound")
            table[i] = last
        del rev
        return table

    def _planarity(self):
        pts = [self.coords[v] for v in self.labels]
        hits, crossings = planarity_violations(pts, self.edges)
        if hits:
            k, v = hits[0]
            i, j = self.edges[k]
            raise NotPlanar(f"edge {self.labels[i]}->{self.labels[j]} passes through {self.labels[v]}")
        if crossings:
            k1, k2 = crossings[0]
            e1 = tuple(self.labels[x] for x in self.edges[k1])
            e2 = tuple(self.labels[x] for x in self.edges[k2])
            raise NotPlanar(f"edges {e1} and {e2} cross")

    # -- label-level API ------------------------------------------------------
    def _i(self, label):
        try:
            return self.index[label]
        except KeyError:
            raise UnknownLabel(label) from None

    def __contains__(self, label):
        return label in self.index

    def __len__(self):
        return self.n

    def leq(self, a, b):
        return bool(self.leq_m[self._i(a), self._i(b)])

    def meet(self, a, b):
        return self.labels[self.meet_t[self._i(a), self._i(b)]]

    def join(self, a, b):
        return self.labels[self.join_t[self._i(a), self._i(b)]]

    def meet_all(self, labels):
        labels = list(labels)
        out = labels[0]
        for v in labels[1:]:
            out = self.meet(out, v)
        return out

    def join_all(self, labels):
        labels = list(labels)
        out = labels[0]
        for v in labels[1:]:
            out = self.join(out, v)
        return out

    def covers_of(self, label):
        """Upper covers, left to right."""
        return [self.labels[j] for j in self.up[self._i(label)]]

    def lower_covers(self, label):
        """Lower covers, left to right."""
        return [self.labels[j] for j in self.down[self._i(label)]]

    def is_cover(self, a, b):
        return bool(self.cov[self._i(a), self._i(b)])

    def interval(self, a, b):
        i, j = self._i(a), self._i(b)
        mask = self.leq_m[i] & self.leq_m[:, j]
        return [self.labels[k] for k in np.nonzero(mask)[0]]

    def xy(self, label):
        p, q = self.coords[label]
        return p - q, p + q

    def full_rect(self):
        ps = [c[0] for c in self.coords.values()]
        qs = [c[1] for c in self.coords.values()]
        return min(ps), min(qs), max(ps), max(qs)

    def edge_list(self):
        return [(self.labels[i], self.labels[j]) for i, j in self.edges]

    def is_chain(self):
        return all(len(u) <= 1 for u in self.up)

    def __eq__(self, other):
        return (isinstance(other, LatticeDiagram) and self.coords == other.coords
                and self.covers == other.covers)

    def __hash__(self):
        return hash((frozenset(self.coords.items()), self.covers))

    def same_geometry(self, other):
        """Same coordinate set and same edges as segments, ignoring labels."""
        mine = {(self.coords[a], self.coords[b]) for a, b in self.covers}
        theirs = {(other.coords[a], other.coords[b]) for a, b in other.covers}
        return set(self.coords.values()) == set(other.coords.values()) and mine == theirs

    def __repr__(self):
        return f"LatticeDiagram(n={self.n}, edges={len(self.edges)})"


def build_diagram(vertices, covers):
    return LatticeDiagram(vertices, covers)


def bounds(L, a, b):
    return L.meet(a, b), L.join(a, b)


def irreducibles(L):
    jir = {L.labels[i] for i in range(L.n) if len(L.down[i]) == 1}
    mir = {L.labels[i] for i in range(L.n) if len(L.up[i]) == 1}
    return jir, mir, jir & mir


def classify_edge(L, e):
    lo, hi = e
    if (lo, hi) not in L.covers:
        raise UnknownEdge(f"{lo}->{hi}")
    a, b = L.coords[lo], L.coords[hi]
    return slope_class(b[0] - a[0], b[1] - a[1])


def boundary_chains(L):
    """Geometric left and right boundary chains, bottom to top."""
    left, right = [L.b], [L.b]
    while L.up[left[-1]]:
        left.append(L.up[left[-1]][0])
    while L.up[right[-1]]:
        right.append(L.up[right[-1]][-1])
    return [L.labels[i] for i in left], [L.labels[i] for i in right]


def check_c1(L):
    rep = Report("c1")
    jir, mir, _ = irreducibles(L)
    if L.is_chain():
        for e in L.edge_list():
            rep.record("chain-normal", classify_edge(L, e) != PRECIPITOUS, e)
        return rep
    left, right = boundary_chains(L)
    bnd = set(left) | set(right)
    for lo, hi in L.edge_list():
        kind = classify_edge(L, (lo, hi))
        if lo in mir and lo not in bnd:
            rep.record("internal-mir-precipitous", kind == PRECIPITOUS, (lo, hi))
        else:
            rep.record("other-normal", kind != PRECIPITOUS, (lo, hi))
    rep.checks.setdefault("internal-mir-precipitous", True)
    rep.checks.setdefault("other-normal", True)
    return rep


@dataclass(frozen=True)
class FourCell:
    bottom: str
    left: str
    right: str
    peak: str
    rectangular: bool
    distributive: bool
    enl_distributive: bool


def _raw_cells(L):
    """(bottom, left, right, top) for consecutive upper covers of each element,
    plus the list of regions that fail to be 4-cells."""
    cells, bad = [], []
    for i in range(L.n):
        for yl, yr in zip(L.up[i], L.up[i][1:]):
            t = L.join_t[yl, yr]
            if L.cov[yl, t] and L.cov[yr, t]:
                cells.append((i, yl, yr, int(t)))
            else:
                bad.append((L.labels[i], L.labels[yl], L.labels[yr]))
    return cells, bad


def precipitous_edges(L):
    out = []
    for i, j in L.edges:
        dp, dq = L._delta(i, j)
        if dp > 0 and dq > 0:
            out.append((L.coords[L.labels[i]], L.coords[L.labels[j]]))
    return out


def four_cells(L):
    cached = getattr(L, "_four_cells", None)
    if cached is None:
        cached = L._four_cells = _compute_four_cells(L)
    return list(cached)


def _compute_four_cells(L):
    from .geometry import enl_territory

    steep = precipitous_edges(L)
    out = []
    for i, yl, yr, t in _raw_cells(L)[0]:
        lab = L.labels
        b, l, r, top = lab[i], lab[yl], lab[yr], lab[t]
        rect = all(classify_edge(L, e) != PRECIPITOUS
                   for e in ((b, l), (b, r), (l, top), (r, top)))
        pt = L.coords[top]
        distributive = not any(u[0] < pt[0] and u[1] < pt[1] for u, _ in steep)
        enl_dist = not enl_territory(L, b, top).contains_any_segment(steep)
        out.append(FourCell(b, l, r, top, rect, distributive, enl_dist))
    return out


def is_semimodular(L):
    n = L.n
    a = np.arange(n)[:, None]
    bb = np.arange(n)[None, :]
    m, j = L.meet_t, L.join_t
    lower = L.cov[m, np.broadcast_to(a, (n, n))]
    ok = L.cov[np.broadcast_to(bb, (n, n)), j]
    bad = lower & ~ok
    if bad.any():
        x, y = np.argwhere(bad)[0]
        return False, (L.labels[x], L.labels[y])
    return True, None


def check_sr(L):
    rep = Report("sr")
    ok, w = is_semimodular(L)
    rep.record("semimodular", ok, w)

    jir, mir, doubly = irreducibles(L)
    jl = sorted(jir, key=L.index.get)
    comps = _comparability_components(L, jl)
    two_chains = len(comps) == 2 and all(
        all(L.leq(x, y) or L.leq(y, x) for x, y in combinations(c, 2)) for c in comps)
    rep.record("jir-two-incomparable-chains", two_chains, [sorted(c) for c in comps])

    cells, bad = _raw_cells(L)
    rep.record("four-cell-lattice", not bad, bad)
    bottoms = [c[0] for c in cells]
    dup = sorted({L.labels[b] for b in bottoms if bottoms.count(b) > 1})
    rep.record("distinct-cell-bottoms", not dup, dup)
    dl = sorted(doubly)
    complementary = (len(dl) == 2 and L.meet(*dl) == L.bottom and L.join(*dl) == L.top)
    rep.record("two-complementary-doubly-irreducibles", complementary, dl)

    m3 = _cover_preserving_m3(L)
    rep.record("no-cover-preserving-M3", not m3, m3)
    return rep


def _comparability_components(L, elems):
    comps = []
    left = list(elems)
    while left:
        stack, comp = [left.pop(0)], set()
        while stack:
            x = stack.pop()
            if x in comp:
                continue
            comp.add(x)
            stack.extend(y for y in left if y not in comp and (L.leq(x, y) or L.leq(y, x)))
        left = [y for y in left if y not in comp]
        comps.append(comp)
    return comps


def _cover_preserving_m3(L):
    for i in range(L.n):
        ups = L.up[i]
        for a, b, c in combinations(ups, 3):
            t = L.join_t[a, b]
            if t == L.join_t[a, c] == L.join_t[b, c] and L.cov[a, t] and L.cov[b, t] and L.cov[c, t]:
                return (L.labels[i], L.labels[a], L.labels[b], L.labels[c], L.labels[t])
    return None


@dataclass
class Boundary:
    left: list
    right: list
    lcorner: str
    rcorner: str
    lsupp: dict
    rsupp: dict

    @property
    def all(self):
        return set(self.left) | set(self.right)


def boundary(L):
    _, _, doubly = irreducibles(L)
    left, right = boundary_chains(L)
    lc = [d for d in doubly if d in left and d not in right]
    rc = [d for d in doubly if d in right and d not in left]
    if len(doubly) != 2 or len(lc) != 1 or len(rc) != 1:
        raise NotSR(f"doubly irreducible elements {sorted(doubly)}")
    lcorner, rcorner = lc[0], rc[0]
    lsupp = {v: L.meet(v, lcorner) for v in L.labels}
    rsupp = {v: L.meet(v, rcorner) for v in L.labels}
    return Boundary(left, right, lcorner, rcorner, lsupp, rsupp)


def supports_are_normal(L, bnd=None):
    """[lsupp x, x] has constant q and [rsupp x, x] constant p, and the support
    lies on the matching boundary chain."""
    bnd = bnd or boundary(L)
    bad = []
    for x in L.labels:
        for supp, axis, side in ((bnd.lsupp, 1, bnd.left), (bnd.rsupp, 0, bnd.right)):
            s = supp[x]
            if s not in side or any(L.coords[y][axis] != L.coords[x][axis]
                                    for y in L.interval(s, x)):
                bad.append(x)
            elif not all(L.leq(a, b) or L.leq(b, a)
                         for a, b in combinations(L.interval(s, x), 2)):
                bad.append(x)
    return not bad, bad
