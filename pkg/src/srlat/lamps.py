"""Neon tubes, trajectories, lamps and the lamp poset of an SR diagram."""
from collections import deque
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .diagram import boundary_chains
from .errors import BoundaryLamp, LampNotFound, NotANeonTube
from .geometry import body_polygon, enl_territory, illuminated
from .posets import Poset, transitive_closure

INTERNAL, LEFT, RIGHT = "internal", "left-boundary", "right-boundary"


@dataclass(frozen=True)
class Lamp:
    peak: str
    foot: str
    tubes: tuple
    kind: str

    @property
    def key(self):
        return self.foot

    @property
    def internal(self):
        return self.kind == INTERNAL

    def to_json(self):
        return {"peak": self.peak, "foot": self.foot, "kind": self.kind,
                "tubes": [list(t) for t in self.tubes]}


@dataclass
class Trajectory:
    edges: list
    top: tuple = None


def neon_tubes(L):
    """All edges [f, u] with f meet-irreducible (u its only upper cover)."""
    return [(L.labels[i], L.labels[L.up[i][0]]) for i in range(L.n) if len(L.up[i]) == 1]


def lamps(L):
    left, right = boundary_chains(L)
    left, right = set(left), set(right)
    out, internal = [], {}
    for f, u in neon_tubes(L):
        if f in left:
            out.append(Lamp(u, f, ((f, u),), LEFT))
        elif f in right:
            out.append(Lamp(u, f, ((f, u),), RIGHT))
        else:
            internal.setdefault(u, []).append(f)
    for peak, feet in internal.items():
        order = {v: k for k, v in enumerate(L.lower_covers(peak))}
        feet.sort(key=order.get)
        out.append(Lamp(peak, L.meet_all(feet), tuple((f, peak) for f in feet), INTERNAL))
    out.sort(key=lambda lamp: (L.index[lamp.peak], L.index[lamp.foot]))
    return out


def lamp_by_key(L, key, lamp_list=None):
    for lamp in lamp_list or lamps(L):
        if lamp.key == key:
            return lamp
    raise LampNotFound(key)


def find_lamp(L, peak, side=None, lamp_list=None):
    """Address a lamp by its peak; internal lamps win unless ``side`` says otherwise."""
    found = [lamp for lamp in (lamp_list or lamps(L)) if lamp.peak == peak]
    if side in ("left", "right", "internal"):
        kind = {"left": LEFT, "right": RIGHT, "internal": INTERNAL}[side]
        found = [lamp for lamp in found if lamp.kind == kind]
    elif side is not None:
        raise LampNotFound(f"unknown side {side!r}")
    internal = [lamp for lamp in found if lamp.internal]
    if internal:
        return internal[0]
    if len(found) == 1:
        return found[0]
    if not found:
        raise LampNotFound(f"no lamp with peak {peak}" + (f" on side {side}" if side else ""))
    raise LampNotFound(f"peak {peak} carries {len(found)} boundary lamps; give a side")


# --- perspectivity and trajectories ------------------------------------------

class Perspectivity:
    """Edge-level down-perspectivity matrix and trajectory classes."""

    def __init__(self, L):
        self.L = L
        self.edges = L.edge_list()
        self.eindex = {e: k for k, e in enumerate(self.edges)}
        lo = np.array([i for i, _ in L.edges], dtype=np.int64)
        hi = np.array([j for _, j in L.edges], dtype=np.int64)
        # down[a, b]: edge a is down-perspective to edge b (b lies lower)
        m = L.meet_t[lo[:, None], hi[None, :]] == lo[None, :]
        j = L.join_t[lo[:, None], hi[None, :]] == hi[:, None]
        down = m & j
        np.fill_diagonal(down, False)
        self.down = down
        sym = down | down.T
        r, c = np.nonzero(sym)
        graph = coo_matrix((np.ones(len(r)), (r, c)), shape=(len(lo), len(lo)))
        self.ncomp, self.comp = connected_components(graph, directed=False)

    def trajectories(self):
        out = []
        for c in range(self.ncomp):
            members = [int(k) for k in np.nonzero(self.comp == c)[0]]
            tops = [k for k in members if not self.down[members, k].any()]
            if len(tops) != 1:
                raise AssertionError(f"trajectory with {len(tops)} top edges")
            out.append(Trajectory([self.edges[k] for k in members], self.edges[tops[0]]))
        return out

    def top_of(self, edge):
        c = self.comp[self.eindex[edge]]
        members = np.nonzero(self.comp == c)[0]
        tops = [k for k in members if not self.down[members, k].any()]
        return self.edges[tops[0]]

    def same_trajectory(self, e1, e2):
        return self.comp[self.eindex[e1]] == self.comp[self.eindex[e2]]


def trajectories(L):
    return Perspectivity(L).trajectories()


# --- lamp poset ------------------------------------------------------------

def hh_edges(L, lamp):
    """(hhl, hhr) of a lamp; None where undefined."""
    if lamp.kind == LEFT:
        return lamp.tubes[0], None
    if lamp.kind == RIGHT:
        return None, lamp.tubes[0]
    lowers = L.lower_covers(lamp.peak)
    return (lowers[0], lamp.peak), (lowers[-1], lamp.peak)


@dataclass
class LampRelations:
    foot: set = field(default_factory=set)
    infoot: set = field(default_factory=set)
    lrbody: set = field(default_factory=set)
    body: set = field(default_factory=set)

    @property
    def equal(self):
        return self.foot == self.infoot == self.lrbody == self.body


def lamp_relations(L, lamp_list=None):
    lamp_list = lamp_list or lamps(L)
    rel = LampRelations()
    illum = {J.key: illuminated(L, J.foot, J.peak, J.tubes) for J in lamp_list}
    for I in lamp_list:
        fpt = L.coords[I.foot]
        body = body_polygon(L, I)
        for J in lamp_list:
            ill = illum[J.key]
            if ill.enl.contains_interior(fpt):
                rel.infoot.add((I.key, J.key))
            if I.key == J.key or not I.internal:
                continue
            if ill.enl.contains(fpt):
                rel.foot.add((I.key, J.key))
            if ill.enl.contains_polygon(body):
                rel.body.add((I.key, J.key))
            if ill.lenl.contains_polygon(body) or ill.renl.contains_polygon(body):
                rel.lrbody.add((I.key, J.key))
    return rel


def lamp_poset(L, lamp_list=None, relations=None):
    lamp_list = lamp_list or lamps(L)
    relations = relations or lamp_relations(L, lamp_list)
    return Poset.from_relation([lamp.key for lamp in lamp_list], relations.infoot)


def nwl_nel(L, lamp, lamp_list=None, persp=None):
    lamp_list = lamp_list or lamps(L)
    persp = persp or Perspectivity(L)
    owner = {t: K.key for K in lamp_list for t in K.tubes}
    out = []
    for edge in hh_edges(L, lamp):
        out.append(None if edge is None else owner[persp.top_of(edge)])
    return tuple(out)


def lamp_covers(L, lamp, lamp_list=None, persp=None, poset=None):
    """Min{NWL, NEL} of an internal lamp, as lamp keys."""
    if not lamp.internal:
        raise BoundaryLamp(lamp.peak)
    nwl, nel = nwl_nel(L, lamp, lamp_list, persp)
    poset = poset or lamp_poset(L, lamp_list)
    cands = {k for k in (nwl, nel) if k is not None}
    return {a for a in cands if not any(b != a and poset.lt(b, a) for b in cands)}


def poset_covers(P, x):
    return {b for a, b in P.cover_pairs() if a == x}


# --- rungs -----------------------------------------------------------------

def rungs(L, lamp, bnd=None):
    """Left and right rungs [x ^ Foot, x] for roof vertices x off the floor."""
    from .diagram import boundary
    from .geometry import roof_chains

    bnd = bnd or boundary(L)
    lroof, rroof = roof_chains(L, lamp.peak, bnd)
    lfloor, rfloor = roof_chains(L, lamp.foot, bnd)
    left = [(L.meet(x, lamp.foot), x) for x in lroof if x != lamp.peak and x not in lfloor]
    right = [(L.meet(x, lamp.foot), x) for x in rroof if x != lamp.peak and x not in rfloor]
    return left, right


def rung_report(L, lamp, bnd=None):
    """Checks each rung is a non-singleton normal chain on the expected axis."""
    left, right = rungs(L, lamp, bnd)
    bad = []
    for side, items, axis in (("left", left, 0), ("right", right, 1)):
        for lo, hi in items:
            ivl = L.interval(lo, hi)
            chain = all(L.leq(a, b) or L.leq(b, a) for a in ivl for b in ivl)
            same = all(L.coords[v][axis] == L.coords[hi][axis] for v in ivl)
            if lo == hi or not chain or not same:
                bad.append((side, lo, hi))
    if (lamp.kind == LEFT) != (not left):
        bad.append(("left-rung-existence", lamp.kind, len(left)))
    return not bad, bad


def rho_partition(L, lamp, bnd=None):
    """Blocks: the lamp interval, its rungs, and singletons."""
    left, right = rungs(L, lamp, bnd)
    blocks = [set(L.interval(lamp.foot, lamp.peak))]
    blocks += [set(L.interval(lo, hi)) for lo, hi in left + right]
    covered = set().union(*blocks)
    blocks += [{v} for v in L.labels if v not in covered]
    return blocks


# --- swing path criterion -----------------------------------------------------

class SwingOracle:
    """Path criterion for con(q) >= con(p) with q a neon tube."""

    def __init__(self, L, lamp_list=None, persp=None):
        self.L = L
        self.lamps = lamp_list or lamps(L)
        self.persp = persp or Perspectivity(L)
        edges = self.persp.edges
        self.tube_owner = {t: K for K in self.lamps for t in K.tubes}
        n = len(edges)
        adj = self.persp.down.copy()
        idx = self.persp.eindex
        for K in self.lamps:
            tks = [idx[t] for t in K.tubes]
            for a in tks:
                for b in tks:
                    if a != b:
                        adj[a, b] = True
            for h in hh_edges(L, K):
                if h is not None:
                    for b in tks:
                        if b != idx[h]:
                            adj[idx[h], b] = True
        self.reach = transitive_closure(adj) if n else adj

    def geq(self, q_edge, p_edge):
        if q_edge not in self.tube_owner:
            raise NotANeonTube(q_edge)
        idx = self.persp.eindex
        return bool(self.reach[idx[q_edge], idx[p_edge]])

    def strictly_greater(self, q_edge, p_edge):
        top = self.persp.top_of(p_edge)
        return self.geq(q_edge, p_edge) and not self.geq(top, q_edge)


def swing_leq(L, q_edge, p_edge, oracle=None):
    """con(p) is strictly below con(q), decided by the path criterion."""
    oracle = oracle or SwingOracle(L)
    return oracle.strictly_greater(q_edge, p_edge)


def swing_path(L, q_edge, p_edge, oracle=None):
    """One witnessing path of allowed steps, or None."""
    oracle = oracle or SwingOracle(L)
    edges, idx = oracle.persp.edges, oracle.persp.eindex
    start, goal = idx[q_edge], idx[p_edge]
    step = oracle.persp.down.copy()
    for K in oracle.lamps:
        tks = [idx[t] for t in K.tubes]
        for a in tks:
            step[a, tks] = True
        for h in hh_edges(L, K):
            if h is not None:
                step[idx[h], tks] = True
    np.fill_diagonal(step, False)
    prev = {start: None}
    queue = deque([start])
    while queue:
        a = queue.popleft()
        if a == goal:
            path = []
            while a is not None:
                path.append(edges[a])
                a = prev[a]
            return path[::-1]
        for b in np.nonzero(step[a])[0]:
            b = int(b)
            if b not in prev:
                prev[b] = a
                queue.append(b)
    return None


def enl_of(L, lamp):
    return enl_territory(L, lamp.foot, lamp.peak)
