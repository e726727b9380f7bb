from collections import Counter

import pytest

from conftest import crossing_quotient, square_with_tail
from srlat.congruence import ConLattice, Congruence, phi
from srlat.constructions import grid, insert_multifork, s_k, thrust_foot, thrust_lamp
from srlat.diagram import check_sr
from srlat.errors import NotACongruence
from srlat.lamps import find_lamp, lamps
from srlat.posets import Poset, find_isomorphism
from srlat.quotient import (block_maxima, quotient_diagram, quotient_of_quotient,
                            quotient_poset)


def test_identity_and_full(s2):
    same = quotient_diagram(s2, Congruence.identity(s2))
    assert same.verdict == "c1-pass"
    assert same.diagram.coords == s2.coords and same.diagram.covers == s2.covers
    one = quotient_diagram(s2, Congruence.full(s2))
    assert one.verdict == "c1-pass" and one.diagram.n == 1


def test_s1_by_its_lamp_is_the_square(s1, square):
    res = quotient_diagram(s1, ("s1_f1", "g_1_1"))
    assert res.verdict == "c1-pass"
    assert res.diagram.coords == square.coords
    assert res.diagram.covers == square.covers


def test_block_maxima(s1):
    alpha = phi(s1, find_lamp(s1, "g_1_1"))
    bmax = block_maxima(s1, alpha)
    top = {v: bmax[int(alpha.cls[s1.index[v]])] for v in s1.labels}
    assert top["s1_x1"] == "g_0_1" and top["s1_f1"] == "g_1_1" and top["g_0_0"] == "g_0_0"


def test_quotient_poset_matches_diagram(s2):
    for alpha in ConLattice(s2):
        res = quotient_diagram(s2, alpha)
        drawn = Poset(res.diagram.labels, res.diagram.leq_m)
        assert find_isomorphism(drawn, quotient_poset(s2, alpha)) is not None


def test_chain_quotients_are_checked_as_chains(square):
    res = quotient_diagram(square, ("g_0_0", "g_1_0"))
    assert res.verdict == "c1-pass"
    assert res.diagram.is_chain()


def test_rejects_non_congruences(square):
    with pytest.raises(NotACongruence):
        quotient_diagram(square, [["g_0_0", "g_1_1"]])


def test_every_quotient_of_s3_passes():
    L = s_k(3)
    verdicts = Counter(quotient_diagram(L, a).verdict for a in ConLattice(L))
    assert verdicts == Counter({"c1-pass": len(ConLattice(L))})


def test_quotient_of_quotient(s2):
    con = ConLattice(s2)
    for beta in con.jir:
        for alpha in con:
            if beta <= alpha:
                two = quotient_of_quotient(s2, beta, alpha)
                assert two.diagram.coords == quotient_diagram(s2, alpha).diagram.coords


def test_multifork_round_trip():
    before = grid(2, 2)
    after = insert_multifork(before, "g_1_2", 2)
    new = next(l for l in lamps(after) if l.foot not in before)
    res = quotient_diagram(after, phi(after, new))
    assert res.verdict == "c1-pass"
    assert res.diagram.coords == before.coords and res.diagram.covers == before.covers


def test_thrust_round_trip(s1):
    after = thrust_lamp(s1, "g_1_1", 2)
    new = thrust_foot(after, s1, "g_1_1")
    res = quotient_diagram(after, phi(after, new))
    assert res.diagram.coords == s1.coords and res.diagram.covers == s1.covers


def test_negative_control_hasse():
    L = square_with_tail()
    assert not check_sr(L).passed
    res = quotient_diagram(L, Congruence.from_blocks(L, [["c", "d"]], close=True))
    assert res.verdict == "hasse-fail"
    assert res.witnesses == [(("a", "d"), "b")]


def test_negative_control_planarity():
    L = crossing_quotient()
    res = quotient_diagram(L, Congruence.from_blocks(L, [["b", "d"], ["c", "e"]], close=True))
    assert res.verdict == "planarity-fail"
    verdicts = Counter(quotient_diagram(L, a).verdict for a in ConLattice(L))
    assert verdicts["c1-pass"] < len(ConLattice(L))
