"""Invariant suites run by ``srlat check`` and the corpus runner."""
import time
from functools import cached_property

import numpy as np

from .congruence import Congruence, ConLattice, jir_con_poset, phi
from .constructions import grid
from .diagram import (boundary, check_c1, check_sr, four_cells, irreducibles,
                      supports_are_normal)
from .duality import conlattice_as_lattice, filter_duality
from .errors import IsoFailure, LatticeError
from .geometry import (Territory, body_polygon, circr_corners_match,
                       illuminated, lamp_regions, pegs_slight, region_box,
                       tube_in, uhcircr_clean)
from .lamps import (Perspectivity, SwingOracle, lamp_covers, lamp_poset,
                    lamp_relations, lamps, neon_tubes, nwl_nel, poset_covers,
                    rho_partition, rung_report)
from .posets import (Poset, find_isomorphism, max_cover_count,
                     two_chain_filters)
from .quotient import (C1_PASS, quotient_diagram, quotient_lattice,
                       quotient_of_quotient, quotient_poset)
from .report import Report

SUITES = ("structure", "lamps", "congruence", "quotient", "representability")
SWING_LIMIT = 100


class Analysis:
    """Lazily computed facts about one SR diagram, shared by the suites."""

    def __init__(self, L, state=None):
        self.L = L
        self.state = state

    @cached_property
    def lamps(self):
        return lamps(self.L)

    @cached_property
    def persp(self):
        return Perspectivity(self.L)

    @cached_property
    def relations(self):
        return lamp_relations(self.L, self.lamps)

    @cached_property
    def poset(self):
        return lamp_poset(self.L, self.lamps, self.relations)

    @cached_property
    def conlat(self):
        return ConLattice(self.L)

    @cached_property
    def con_order(self):
        """order[a, b]: members[a] <= members[b]."""
        return self.conlat.order_matrix()

    @cached_property
    def cells(self):
        return four_cells(self.L)

    @cached_property
    def bnd(self):
        return boundary(self.L)

    @cached_property
    def phi(self):
        return {lamp.key: phi(self.L, lamp) for lamp in self.lamps}

    def lamp(self, key):
        return next(lamp for lamp in self.lamps if lamp.key == key)


# --- structure -----------------------------------------------------------------

def structure_suite(A):
    from .io import lattice_from_json, lattice_to_json

    L = A.L
    rep = Report("structure")
    sr = check_sr(L)
    rep.merge(sr)
    rep.merge(check_c1(L))
    ok, bad = supports_are_normal(L, A.bnd)
    rep.record("supports-normal", ok, bad)
    rep.record("distributive-implies-enl-distributive",
               all(c.enl_distributive or not c.distributive for c in A.cells))
    rep.record("json-round-trip", lattice_from_json(lattice_to_json(L)) == L)
    slim_by_chains = sr.checks["jir-two-incomparable-chains"]
    gk = all(sr.checks[k] for k in ("four-cell-lattice", "distinct-cell-bottoms",
                                     "two-complementary-doubly-irreducibles"))
    rep.record("slimness-criteria-agree", slim_by_chains == gk and sr.checks["no-cover-preserving-M3"] == slim_by_chains)
    return rep


# --- lamps -----------------------------------------------------------------------

def _rectangular_intervals(L):
    """Pairs a <= b whose interval is a full normally bordered rectangle."""
    by_coord = {c: v for v, c in L.coords.items()}
    out = []
    for a in L.labels:
        pa, qa = L.coords[a]
        for b in L.labels:
            pb, qb = L.coords[b]
            if a == b or not (pa < pb and qa < qb) or not L.leq(a, b):
                continue
            lc, rc = by_coord.get((pa, qb)), by_coord.get((pb, qa))
            if lc and rc and L.leq(a, lc) and L.leq(lc, b) and L.leq(a, rc) and L.leq(rc, b):
                out.append((a, b))
    return out


def lamps_suite(A, deep=True):
    L = A.L
    rep = Report("lamps")
    tubes = neon_tubes(L)
    owned = [t for lamp in A.lamps for t in lamp.tubes]
    rep.record("tube-in-exactly-one-lamp", sorted(owned) == sorted(tubes))
    feet = [lamp.foot for lamp in A.lamps]
    rep.record("foot-determines-lamp", len(set(feet)) == len(feet))
    rel = A.relations
    rep.record("relations-equal", rel.equal,
               {"foot-infoot": sorted(rel.foot ^ rel.infoot), "lrbody": sorted(rel.foot ^ rel.lrbody),
                "body": sorted(rel.foot ^ rel.body)} if not rel.equal else None)
    boundary_keys = {lamp.key for lamp in A.lamps if not lamp.internal}
    rep.record("maximal-are-boundary", A.poset.maximal() == boundary_keys)

    _, mir, _ = irreducibles(L)
    try:
        trajs = A.persp.trajectories()
        ok = all(t.top in set(tubes) and t.top[0] in mir for t in trajs)
        rep.record("trajectory-top-is-tube", ok)
        rep.record("one-tube-per-trajectory",
                   all(sum(1 for e in t.edges if e in set(tubes)) == 1 for t in trajs))
    except AssertionError as exc:
        rep.record("trajectory-top-is-tube", False, str(exc))

    for lamp in A.lamps:
        if not lamp.internal:
            continue
        regions = lamp_regions(L, lamp, A.cells)
        rep.record("pegs-count", len(regions.pegs) == len(lamp.tubes) + 2, lamp.key)
        ok, bad = pegs_slight(L, regions.pegs)
        rep.record("pegs-slight", ok, bad)
        ok, bad = uhcircr_clean(L, lamp, regions)
        rep.record("uhcircr-empty", ok, bad)
        rep.record("circr-corners", circr_corners_match(L, lamp, regions), lamp.key)
        rep.record("circr-is-birth-cell", _circr_matches_birth(A, lamp, regions), lamp.key)
        covers = lamp_covers(L, lamp, A.lamps, A.persp, A.poset)
        direct = poset_covers(A.poset, lamp.key)
        rep.record("covers-are-min-nwl-nel", covers == direct, (lamp.key, sorted(covers), sorted(direct)))
        rep.record("two-cover", len(direct) <= 2, lamp.key)
        ill = illuminated(L, lamp.foot, lamp.peak, lamp.tubes)
        both = _body_agreement(L, lamp, ill)
        rep.record("body-is-lenl-and-renl", both, lamp.key)
    for lamp in A.lamps:
        ok, bad = rung_report(L, lamp, A.bnd)
        rep.record("rungs-normal-chains", ok, bad)

    if deep:
        enl = {K.key: illuminated(L, K.foot, K.peak).enl for K in A.lamps}
        for J in A.lamps:
            if not J.internal:
                continue
            body = body_polygon(L, J)
            for I in A.lamps:
                if I.key == J.key:
                    continue
                if tube_in(L, J, enl[I.key]):
                    rep.record("tube-in-enl-gives-body-and-order",
                               enl[I.key].contains_polygon(body) and A.poset.lt(J.key, I.key), (J.key, I.key))
            for a, b in _rectangular_intervals(L):
                (pa, qa), (pb, qb) = L.coords[a], L.coords[b]
                H = Territory([region_box(pa, qa, pb, qb)])
                if tube_in(L, J, H):
                    rep.record("tube-in-rectangle-gives-body", H.contains_polygon(body), (J.key, a, b))
        rep.checks.setdefault("tube-in-enl-gives-body-and-order", True)
        rep.checks.setdefault("tube-in-rectangle-gives-body", True)

    if A.state is not None:
        from .history import three_tube_violations, used_neon_tubes

        usage = used_neon_tubes(L, A.state)
        bad = three_tube_violations(L, usage)
        rep.record("no-lamp-uses-three-tubes", not bad, bad)
        nlamps = len(A.lamps)
        rep.record("used-tubes-bounded",
                   all(sum(usage.used[t] for t in K.tubes) <= 2 * nlamps for K in A.lamps))
        births = A.state.birth
        internal = {lamp.key for lamp in A.lamps if lamp.internal}
        rep.record("birth-total-on-internal-lamps", set(births) == internal,
                   sorted(internal ^ set(births)))
    return rep


def _circr_matches_birth(A, lamp, regions):
    """CircR equals the geometric region of the cell the lamp was born in."""
    state = A.state
    if state is None or lamp.key not in state.birth:
        return True
    step = state.birth[lamp.key]
    spec = state.recipe.steps[step - 1]
    if spec.op != "multifork":
        return True
    before = state.snapshots[step - 1]
    cell = next((c for c in four_cells(before) if c.peak == spec.target and c.rectangular), None)
    if cell is None:
        return False
    b, t = regions.circr
    return (A.L.coords[b], A.L.coords[t]) == (before.coords[cell.bottom], before.coords[cell.peak])


def _body_agreement(L, lamp, ill):
    """Body membership equals LEnl ∩ REnl membership at vertices and edge midpoints."""
    from .geometry import body_territory

    body = body_territory(L, lamp)
    pts = list(L.coords.values())
    for a, b in L.edge_list():
        (p1, q1), (p2, q2) = L.coords[a], L.coords[b]
        pts.append(((p1 + p2) / 2, (q1 + q2) / 2))
    return all(body.contains(x) == (ill.lenl.contains(x) and ill.renl.contains(x)) for x in pts)


# --- congruences ------------------------------------------------------------

def congruence_suite(A, swing_limit=SWING_LIMIT):
    from .congruence import phi_iso

    L = A.L
    rep = Report("congruence")
    try:
        phi_iso(L, A.lamps, A.poset, A.conlat)
        rep.record("lamp-poset-iso-jir-con", True)
    except IsoFailure as exc:
        rep.record("lamp-poset-iso-jir-con", False, str(exc))
    rep.record("lamp-count-equals-jir-count", len(A.lamps) == len(A.conlat.jir))
    D = conlattice_as_lattice_from_order(A)
    rep.record("con-distributive", D.is_distributive())
    jir_by_order, _, _ = D.irreducibles()
    gens = {A.conlat.members.index(c) for c in A.conlat.jir}
    rep.record("jir-con-are-edge-congruences", {int(x[1:]) for x in jir_by_order} == gens)
    # minimal lamps: the rung partition is the principal congruence
    for key in A.poset.minimal():
        lamp = A.lamp(key)
        rho = Congruence.from_blocks(L, rho_partition(L, lamp, A.bnd))
        rep.record("minimal-lamp-rung-partition", rho == A.phi[key], key)
    if L.n <= swing_limit:
        rep.merge(swing_report(A))
    return rep


def conlattice_as_lattice_from_order(A):
    from .order import AbstractLattice

    names = [f"a{k}" for k in range(len(A.conlat.members))]
    return AbstractLattice(Poset(names, A.con_order))


def swing_report(A):
    L = A.L
    rep = Report("swing")
    oracle = SwingOracle(L, A.lamps, A.persp)
    cons = A.conlat.edge_cons
    bad = []
    for q in neon_tubes(L):
        for p in L.edge_list():
            predicted = oracle.strictly_greater(q, p)
            actual = cons[p] < cons[q]
            if predicted != actual:
                bad.append((q, p, predicted, actual))
    rep.record("path-criterion-matches-oracle", not bad, bad[:5])
    return rep


# --- quotients ---------------------------------------------------------------

def quotient_suite(A, coherence=True):
    L = A.L
    rep = Report("quotient")
    failures, order_bad, obs_bad = [], [], []
    for alpha in A.conlat.members:
        res = quotient_diagram(L, alpha)
        if res.verdict != C1_PASS:
            failures.append((res.verdict, alpha.nontrivial_blocks()[:3], res.witnesses[:2]))
            continue
        oracle = quotient_poset(L, alpha)
        if find_isomorphism(Poset(res.diagram.labels, res.diagram.leq_m), oracle) is None:
            order_bad.append(alpha.nontrivial_blocks()[:3])
        _, summary = quotient_lattice(L, alpha)
        if not summary.consistent:
            obs_bad.append(summary)
    rep.record("main-theorem-c1-pass", not failures, failures[:5])
    rep.record("quotient-order-matches-oracle", not order_bad, order_bad[:5])
    rep.record("quotients-stay-slim-semimodular", not obs_bad, obs_bad[:5])
    if coherence:
        bad = []
        for beta in A.conlat.jir:
            for alpha in A.conlat.members:
                if beta <= alpha:
                    direct = quotient_diagram(L, alpha)
                    two = quotient_of_quotient(L, beta, alpha)
                    if direct.diagram is None or two.diagram is None or \
                            direct.diagram.coords != two.diagram.coords:
                        bad.append(alpha.nontrivial_blocks()[:2])
        rep.record("composition-coherence", not bad, bad[:3])
    return rep


# --- representability --------------------------------------------------------

def representability_suite(A, filters=True):
    L = A.L
    rep = Report("representability")
    P = A.poset
    rep.record("dioecious", not two_chain_filters(P), [sorted(f) for f in two_chain_filters(P)])
    rep.record("two-cover", max_cover_count(P) <= 2)
    rep.record("jcsr-size-at-least-two", len(P) >= 2)
    if filters:
        jir = A.conlat.jir
        names = [f"c{k}" for k in range(len(jir))]
        full = A.conlat.jir_poset()
        bad = []
        for alpha in A.conlat.members:
            res = quotient_diagram(L, alpha)
            if res.diagram is None:
                bad.append("no quotient diagram")
                continue
            Q = res.diagram
            keep = [names[k] for k, b in enumerate(jir) if not b <= alpha]
            expected = full.subposet(keep)
            got = jir_con_poset(Q)
            if find_isomorphism(got, expected) is None:
                bad.append(alpha.nontrivial_blocks()[:2])
            elif Q.is_chain() and Q.n >= 3:
                # a chain's congruences form a Boolean lattice; the same antichain comes from a grid
                if find_isomorphism(got, jir_con_poset(grid(1, Q.n - 2))) is None:
                    bad.append(("chain witness", Q.n))
            elif not Q.is_chain() and len(got) < 2:
                bad.append(("sr quotient with small Jir Con", len(got)))
        rep.record("filters-of-jir-con", not bad, bad[:3])
        d = filter_duality(conlattice_as_lattice_from_order(A))
        rep.merge(d.report)
    return rep


def run_suites(L, suites=("all",), state=None, analysis=None):
    A = analysis or Analysis(L, state)
    names = SUITES if "all" in suites else suites
    total = Report("check")
    start = time.perf_counter()
    runners = {"structure": structure_suite, "lamps": lamps_suite, "congruence": congruence_suite,
               "quotient": quotient_suite, "representability": representability_suite}
    for name in names:
        t0 = time.perf_counter()
        try:
            sub = runners[name](A)
        except LatticeError as exc:
            sub = Report(name)
            sub.record("completed", False, f"{type(exc).__name__}: {exc}")
        sub.seconds = time.perf_counter() - t0
        total.merge(sub)
    total.seconds = time.perf_counter() - start
    return total
