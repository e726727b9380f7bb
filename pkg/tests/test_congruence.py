import itertools

import pytest

from srlat.congruence import (ConLattice, Congruence, as_congruence, edge_congruences, phi,
                              phi_iso, principal_congruence)
from srlat.constructions import grid
from srlat.diagram import LatticeDiagram
from srlat.errors import NotACongruence
from srlat.lamps import lamp_poset, lamps
from srlat.posets import find_isomorphism


def chain(n):
    return LatticeDiagram({f"c{i}": (i, 0) for i in range(n)},
                          [(f"c{i}", f"c{i + 1}") for i in range(n - 1)])


def brute_force_congruences(L):
    """Every partition into intervals closed under joins and meets with a fixed element."""
    labels = list(L.labels)
    out = set()

    def partitions(items):
        if not items:
            yield []
            return
        head, rest = items[0], items[1:]
        for part in partitions(rest):
            for i in range(len(part)):
                yield part[:i] + [[head] + part[i]] + part[i + 1:]
            yield [[head]] + part

    for blocks in partitions(labels):
        cls = {v: i for i, b in enumerate(blocks) for v in b}
        ok = all(cls[L.join(a, c)] == cls[L.join(b, c)] and cls[L.meet(a, c)] == cls[L.meet(b, c)]
                 for a, b in itertools.combinations(labels, 2) if cls[a] == cls[b]
                 for c in labels)
        if ok:
            out.add(frozenset(frozenset(b) for b in blocks))
    return out


@pytest.mark.parametrize("name,expected", [("s1", 5), ("s2", 5), ("grid22", 16), ("grid21", 8)])
def test_con_sizes(name, expected, s1, s2):
    L = {"s1": s1, "s2": s2, "grid22": grid(2, 2), "grid21": grid(2, 1)}[name]
    assert len(ConLattice(L)) == expected


@pytest.mark.parametrize("name", ["s1", "square", "grid21"])
def test_con_matches_brute_force(name, s1, square):
    L = {"s1": s1, "square": square, "grid21": grid(2, 1)}[name]
    ours = {frozenset(frozenset(b) for b in c.blocks()) for c in ConLattice(L)}
    assert ours == brute_force_congruences(L)


def test_chain_congruences_are_boolean():
    con = ConLattice(chain(4))
    assert len(con) == 8
    assert con.jir_poset().is_antichain()
    assert con.is_distributive()


def test_square(square):
    con = ConLattice(square)
    assert len(con) == 4 and len(con.jir) == 2 and con.jir_poset().is_antichain()


def test_principal_congruence(s1):
    alpha = principal_congruence(s1, "s1_f1", "g_1_1")
    blocks = sorted(map(sorted, alpha.nontrivial_blocks()))
    assert blocks == [["g_0_1", "s1_x1"], ["g_1_0", "s1_x2"], ["g_1_1", "s1_f1"]]
    assert alpha.is_congruence()


def test_from_blocks_rejects_a_non_congruence(square):
    with pytest.raises(NotACongruence):
        as_congruence(square, [["g_0_0", "g_1_1"]])
    assert not Congruence.from_blocks(square, [["g_0_0", "g_1_1"]]).is_congruence()
    closed = Congruence.from_blocks(square, [["g_0_0", "g_1_1"]], close=True)
    assert closed == Congruence.full(square)


def test_join_and_meet(square):
    a = principal_congruence(square, "g_0_0", "g_1_0")
    b = principal_congruence(square, "g_0_0", "g_0_1")
    assert a.join(b) == Congruence.full(square)
    assert a.meet(b) == Congruence.identity(square)
    assert a <= a.join(b)


def test_edge_congruences_generate_jir(s2):
    con = ConLattice(s2)
    assert set(edge_congruences(s2).values()) == set(con.jir)
    assert set(con.join_irreducibles()) == set(con.jir)


@pytest.mark.parametrize("name", ["s1", "s2", "grid21"])
def test_phi_iso(name, s1, s2):
    L = {"s1": s1, "s2": s2, "grid21": grid(2, 1)}[name]
    image = phi_iso(L)
    assert set(image.values()) == set(ConLattice(L).jir)
    assert find_isomorphism(lamp_poset(L), ConLattice(L).jir_poset()) is not None


def test_phi_of_the_s1_lamp_is_below_both_boundary_lamps(s1):
    by_key = {l.key: phi(s1, l) for l in lamps(s1)}
    assert by_key["s1_f1"] < by_key["g_0_1"] and by_key["s1_f1"] < by_key["g_1_0"]
    assert not by_key["g_0_1"] <= by_key["g_1_0"]
