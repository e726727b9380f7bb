"""The twelve acceptance criteria, checked over one shared corpus.

Corpus: every isomorphism class reachable with at most two multifork steps,
k <= 2 and grids up to 2x2; every class with one step, k <= 3 and grids up to
3x3; and a seeded sample of three-step walks with k <= 3 and grids up to 3x3.
Each criterion records a PASS/FAIL line shown in the terminal summary.
"""
import random

import pytest

from conftest import crossing_quotient, square_with_tail
from srlat.checks import Analysis, run_suites
from srlat.congruence import Congruence, phi
from srlat.constructions import (Recipe, Step, grid, insert_multifork, replay, s_k,
                                 thrust_foot, thrust_lamp)
from srlat.corpus import ClassIndex, enumerate_classes, sample_recipes
from srlat.diagram import check_c1, check_sr, four_cells
from srlat.lamps import lamps
from srlat.quotient import quotient_diagram
from srlat.realize import realize_brosum, realize_jsum

SEED = 2026
DEEP_SAMPLE = 16
SWING_LIMIT = 100


class Entry:
    def __init__(self, state):
        self.state = state
        self.L = state.current
        self.analysis = Analysis(self.L, state)
        self.report = run_suites(self.L, ("all",), state=state, analysis=self.analysis)

    def ok(self, key):
        return self.report.checks[key]

    def ok_prefix(self, prefix):
        keys = [k for k in self.report.checks if k.startswith(prefix)]
        return bool(keys) and all(self.report.checks[k] for k in keys)

    @property
    def recipe(self):
        return self.state.recipe.to_json()


@pytest.fixture(scope="module")
def corpus():
    index = ClassIndex()
    states = []
    for budget in ((2, 2, 2), (1, 3, 3)):
        for st in enumerate_classes(*budget):
            if index.add(st.current):
                states.append(st)
    states += sample_recipes(DEEP_SAMPLE, 3, 3, 3, seed=SEED, max_elements=SWING_LIMIT, index=index)
    return [Entry(st) for st in states]


def record(log, number, title, failures, total, unit="lattices"):
    ok = not failures
    detail = f"{total - len(failures)}/{total} {unit}"
    if failures:
        detail += f"; first failure {failures[0]}"
    log[number] = (title, ok, detail)
    return ok


def per_lattice(corpus, log, number, title, passes):
    bad = [e.recipe for e in corpus if not passes(e)]
    assert record(log, number, title, bad, len(corpus)), bad[:3]


def test_corpus_is_large_enough(corpus):
    assert len(corpus) >= 150
    assert max(e.L.n for e in corpus) >= 60


def test_1_main_theorem(corpus, acceptance_log):
    per_lattice(corpus, acceptance_log, 1, "every quotient diagram is a C1-diagram of the quotient",
                lambda e: e.ok("quotient.main-theorem-c1-pass")
                and e.ok("quotient.quotient-order-matches-oracle"))


def test_2_lamps_versus_join_irreducible_congruences(corpus, acceptance_log):
    per_lattice(corpus, acceptance_log, 2, "lamp poset is isomorphic to Jir Con",
                lambda e: e.ok("congruence.lamp-poset-iso-jir-con"))


def _same_drawing(a, b):
    return a is not None and a.coords == b.coords and a.covers == b.covers


def test_3_round_trips(corpus, acceptance_log):
    rng = random.Random(SEED)
    pool = [e for e in corpus if e.L.n <= 60]
    bad, done = [], 0
    while done < 30:
        e = rng.choice(pool)
        cells = [c for c in four_cells(e.L) if c.rectangular and c.enl_distributive]
        cell = rng.choice(cells)
        after = insert_multifork(e.L, cell.peak, rng.randint(1, 3))
        new = next(l for l in lamps(after) if l.peak == cell.peak and l.foot not in e.L)
        if not _same_drawing(quotient_diagram(after, phi(after, new)).diagram, e.L):
            bad.append(("multifork", e.recipe, cell.peak))
        done += 1
    while done < 60:
        e = rng.choice(pool)
        lamp = rng.choice(lamps(e.L))
        side = {"left-boundary": "left", "right-boundary": "right"}.get(lamp.kind)
        k = rng.randint(1, 3) if lamp.internal else 1
        after = thrust_lamp(e.L, lamp.peak, k, side="internal" if lamp.internal else side)
        new = thrust_foot(after, e.L, lamp.peak, side)
        if not _same_drawing(quotient_diagram(after, phi(after, new)).diagram, e.L):
            bad.append(("thrust", e.recipe, lamp.key))
        done += 1
    assert record(acceptance_log, 3, "multifork and thrust undone by the new lamp's congruence",
                  bad, done, unit="pairs"), bad[:3]


def _covers_ok(e):
    # the per-lamp checks only run on internal lamps; a grid has none
    if not any(l.internal for l in e.analysis.lamps):
        return "lamps.covers-are-min-nwl-nel" not in e.report.checks
    return e.ok("lamps.covers-are-min-nwl-nel") and e.ok("lamps.two-cover")


def test_4_covers_and_two_cover(corpus, acceptance_log):
    per_lattice(corpus, acceptance_log, 4, "covers = Min{NWL, NEL}, at most two", _covers_ok)


def test_5_dioecious(corpus, acceptance_log):
    per_lattice(corpus, acceptance_log, 5, "no order filter is a 2-chain",
                lambda e: e.ok("representability.dioecious"))


def test_6_rungs(corpus, acceptance_log):
    per_lattice(corpus, acceptance_log, 6, "minimal lamp congruence = lamp, rungs, singletons",
                lambda e: e.ok("congruence.minimal-lamp-rung-partition"))


def test_7_filter_duality(corpus, acceptance_log):
    assert len(corpus) >= 20
    per_lattice(corpus, acceptance_log, 7, "filters of Con L versus order filters of Jir Con L",
                lambda e: e.ok_prefix("representability.filter-duality."))


JSUM_CASES = [("S1", "g11"), ("S1", "g21"), ("S1", "g12"), ("S1", "S1"),
              ("S2", "g11"), ("S2", "g21"), ("S2", "g12"), ("S2", "S1"),
              ("G21f", "g11"), ("G12f", "g11")]
RECIPES = {"S1": Recipe((1, 1), (Step("multifork", "g_1_1", 1),)),
           "S2": Recipe((1, 1), (Step("multifork", "g_1_1", 2),)),
           "G21f": Recipe((2, 1), (Step("multifork", "g_1_1", 1),)),
           "G12f": Recipe((1, 2), (Step("multifork", "g_1_2", 1),)),
           "g11": Recipe((1, 1)), "g21": Recipe((2, 1)), "g12": Recipe((1, 2))}


def test_8_realizations(corpus, acceptance_log):
    bad = []
    for kname, mname in JSUM_CASES:
        stateK = replay(RECIPES[kname])
        J = next(l for l in lamps(stateK.current) if l.internal)
        try:
            realize_jsum(stateK, J.peak, RECIPES[mname])
        except Exception as exc:  # every failure kind counts against the criterion
            bad.append(("jsum", kname, mname, f"{type(exc).__name__}: {exc}"))
    rng = random.Random(SEED + 1)
    pool = [e for e in corpus if e.L.n <= 40]
    cases = 0
    while cases < 24:
        e = rng.choice(pool)
        lamp = rng.choice(lamps(e.L))
        side = {"left-boundary": "left", "right-boundary": "right"}.get(lamp.kind, "internal")
        k = rng.randint(1, 2) if lamp.internal else 1
        try:
            realize_brosum(e.state, lamp.peak, k, side)
        except Exception as exc:
            bad.append(("brosum", e.recipe, lamp.key, f"{type(exc).__name__}: {exc}"))
        cases += 1
    total = len(JSUM_CASES) + cases
    assert record(acceptance_log, 8, f"{len(JSUM_CASES)} j-sums and {cases} brother sums realized",
                  bad, total, unit="cases"), bad[:3]


def test_9_lamp_relations_agree(corpus, acceptance_log):
    per_lattice(corpus, acceptance_log, 9, "closed-foot, open-foot, LR-body and body relations agree",
                lambda e: e.ok("lamps.relations-equal"))


def test_10_swing(corpus, acceptance_log):
    small = [e for e in corpus if e.L.n <= SWING_LIMIT]
    assert small
    per_lattice(small, acceptance_log, 10, "swing path criterion = strict congruence containment",
                lambda e: e.ok("congruence.swing.path-criterion-matches-oracle"))


def test_11_counts(acceptance_log):
    bad = []
    for m in range(1, 4):
        for n in range(1, 4):
            L = grid(m, n)
            if L.n != (m + 1) * (n + 1) or len(lamps(L)) != m + n:
                bad.append(("grid", m, n))
    for k in range(1, 5):
        L = s_k(k)
        internal = [l for l in lamps(L) if l.internal]
        structural = (check_sr(L).passed and check_c1(L).passed and len(internal) == 1
                      and len(internal[0].tubes) == k and len(L.lower_covers(L.labels[-1])) == k + 2)
        if L.n != 4 + 3 * k + k * (k - 1) // 2 or not structural:
            bad.append(("S", k))
    assert record(acceptance_log, 11, "sizes of grids and of S_k, lamp counts of grids",
                  bad, 13, unit="shapes"), bad


def test_12_negative_control(acceptance_log):
    found = []
    L = square_with_tail()
    found.append(quotient_diagram(L, Congruence.from_blocks(L, [["c", "d"]], close=True)).verdict)
    L = crossing_quotient()
    found.append(quotient_diagram(L, Congruence.from_blocks(L, [["b", "d"], ["c", "e"]],
                                                            close=True)).verdict)
    bad = [v for v in found if v == "c1-pass"]
    acceptance_log[12] = ("hand-built slim non-rectangular diagrams are rejected", not bad,
                          ", ".join(found))
    assert found == ["hasse-fail", "planarity-fail"]
