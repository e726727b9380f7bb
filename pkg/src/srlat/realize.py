"""SR lattices whose lamp posets are brother sums and j-sums of given lamp posets."""
from dataclasses import dataclass

from networkx.algorithms.isomorphism import DiGraphMatcher
import networkx as nx

from .constructions import (Recipe, Step, extend_state, replay, thrust_foot)
from .diagram import check_c1, check_sr
from .errors import InputError, IsoFailure, JNotInternal, PlacementFailure
from .history import used_neon_tubes
from .lamps import find_lamp, lamp_poset, lamps
from .posets import brosum, find_isomorphism, jsum


@dataclass
class Realization:
    state: object
    expected: object      # the abstract poset we aimed for
    achieved: object      # lamp poset of the realized lattice
    mapping: dict         # isomorphism achieved -> expected


def _verified(state, expected):
    L = state.current
    rep = check_sr(L).merge(check_c1(L))
    if not rep.passed:
        raise PlacementFailure(f"realized diagram is not an SR C1-diagram: {rep.witnesses[:3]}")
    got = lamp_poset(L)
    iso = find_isomorphism(got, expected)
    if iso is None:
        raise IsoFailure("lamp poset of the realized lattice differs from the target poset")
    return Realization(state, expected, got, iso)


def realize_brosum(state, lamp_peak, k=1, side=None):
    """Thrust a k-fold lamp atop J; the lamp poset gains a brother of J."""
    before = state.current
    P = lamp_poset(before)
    J = find_lamp(before, lamp_peak, side)
    nxt = extend_state(state, Step("thrust", lamp_peak, k, side), validate=False)
    new = thrust_foot(nxt.current, before, J.peak, side if not J.internal else None)
    expected = brosum(P, J.key, new.key)
    return _verified(nxt, expected)


# --- jsum ----------------------------------------------------------------------

def _unused_window(L, state, J, width=4):
    usage = used_neon_tubes(L, state)
    tubes = list(J.tubes)
    for i in range(len(tubes) - width + 1):
        if not any(usage.used[t] for t in tubes[i:i + width]):
            return tubes[i:i + width]
    return None


def _pile(state, peak, count):
    """Insert ``count`` single forks, each into the cell under the previous foot."""
    feet = []
    for _ in range(count):
        number = len(state.snapshots)
        state = extend_state(state, Step("multifork", peak, 1), validate=False)
        peak = f"s{number}_f1"
        feet.append(peak)
    return state, feet


def _interval(L, lo, hi):
    return [v for v in L.labels if L.leq(lo, v) and L.leq(v, hi)]


def _cover_graph(L, nodes, anchors):
    g = nx.DiGraph()
    keep = set(nodes)
    for v in nodes:
        g.add_node(v, anchor=anchors.get(v))
    g.add_edges_from((a, b) for a, b in L.covers if a in keep and b in keep)
    return g


def _track_labels(M, L, known, bottom, top):
    """Extend ``known`` (M label -> L label) to all of M, using the interval [bottom, top] of L."""
    inverse = {w: v for v, w in known.items()}
    gm = _cover_graph(M, M.labels, {v: v for v in known})
    gl = _cover_graph(L, _interval(L, bottom, top), inverse)
    matcher = DiGraphMatcher(gm, gl, node_match=lambda a, b: a["anchor"] == b["anchor"])
    for iso in matcher.isomorphisms_iter():
        return dict(iso)
    raise IsoFailure("replayed region is not isomorphic to the second lattice")


def realize_jsum(stateK, lamp_peak, recipeM, side=None):
    """Glue the lattice built by ``recipeM`` under the lamp at ``lamp_peak``.

    Steps: widen the lamp, take four consecutive unused tubes, pile the left
    boundary lamps of the base grid of ``recipeM`` under the second tube and the
    right ones under the third, then replay the multifork steps of ``recipeM``
    in the grid of 4-cells between the two piles.
    """
    K = stateK.current
    J = find_lamp(K, lamp_peak, side)
    if not J.internal:
        raise JNotInternal(f"lamp {J.foot}->{J.peak} is a boundary lamp")
    if any(s.op != "multifork" for s in recipeM.steps):
        raise InputError("the glued lattice must be given by multifork steps")
    P = lamp_poset(K)
    j = J.key
    state = stateK
    need = 4 * (1 + 2 * len(P))
    while len(find_lamp(state.current, J.peak).tubes) < need:
        state = extend_state(state, Step("widen", J.peak), validate=False)
    L = state.current
    J = find_lamp(L, J.peak)
    window = _unused_window(L, state, J)
    if window is None:
        raise PlacementFailure("no four consecutive unused neon tubes")
    top2, top3 = window[1][0], window[2][0]

    f, g = recipeM.base
    state, left = _pile(state, top2, f)
    state, right = _pile(state, top3, g)
    L = state.current
    plines = sorted([L.coords[a][0] for a in left] + [L.coords[top2][0]])
    qlines = sorted([L.coords[b][1] for b in right] + [L.coords[top3][1]])
    by_coord = {c: v for v, c in L.coords.items()}
    known = {}
    for x in range(f + 1):
        for y in range(g + 1):
            v = by_coord.get((plines[x], qlines[y]))
            if v is None:
                raise PlacementFailure(f"grid corner ({x}, {y}) is not a vertex")
            known[f"g_{x}_{y}"] = v

    stateM = replay(Recipe(recipeM.base), validate=False)
    bottom, top = known["g_0_0"], known[f"g_{f}_{g}"]
    for step in recipeM.steps:
        stateM = extend_state(stateM, step, validate=False)
        state = extend_state(state, Step("multifork", known[step.target], step.k), validate=False)
        known = _track_labels(stateM.current, state.current, known, bottom, top)

    Q = lamp_poset(stateM.current)
    Q = Q.relabel({x: f"m:{x}" for x in Q.elements})
    expected = jsum(Q, j, P)
    return _verified(state, expected)


def lamp_count(L):
    return len(lamps(L))
