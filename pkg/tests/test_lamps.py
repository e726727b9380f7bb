import pytest

from srlat.constructions import Recipe, Step, grid, replay
from srlat.errors import BoundaryLamp, LampNotFound, NotANeonTube
from srlat.lamps import (find_lamp, lamp_covers, lamp_poset, lamp_relations, lamps,
                         neon_tubes, nwl_nel, poset_covers, rung_report, rungs, swing_leq,
                         swing_path, trajectories)


def test_trajectories_of_a_grid():
    trs = trajectories(grid(2, 2))
    assert len(trs) == 4
    tops = {t.top for t in trs}
    assert tops == {("g_0_2", "g_1_2"), ("g_1_2", "g_2_2"), ("g_2_0", "g_2_1"), ("g_2_1", "g_2_2")}


def test_tube_trajectory_in_s1(s1):
    tr = next(t for t in trajectories(s1) if t.top == ("s1_f1", "g_1_1"))
    assert set(tr.edges) == {("s1_f1", "g_1_1"), ("s1_x1", "s1_f1"), ("s1_x2", "s1_f1"),
                             ("g_0_0", "s1_x1"), ("g_0_0", "s1_x2"), ("s1_x1", "g_0_1"),
                             ("s1_x2", "g_1_0")} & set(tr.edges)
    # every trajectory has exactly one neon tube: its top
    tubes = set(neon_tubes(s1))
    for t in trajectories(s1):
        assert [e for e in t.edges if e in tubes] == [t.top]


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (2, 3), (3, 3)])
def test_grid_lamps(m, n):
    found = lamps(grid(m, n))
    assert len(found) == m + n
    assert not any(l.internal for l in found)
    assert lamp_poset(grid(m, n)).is_antichain()


def test_s2_lamps(s2):
    found = lamps(s2)
    internal = [l for l in found if l.internal]
    assert len(found) == 3 and len(internal) == 1
    assert len(internal[0].tubes) == 2


def test_s1_poset_is_a_vee(s1):
    P = lamp_poset(s1)
    assert sorted(P.cover_pairs()) == [("s1_f1", "g_0_1"), ("s1_f1", "g_1_0")]


def test_relations(s1):
    assert lamp_relations(grid(2, 2)).foot == set()
    rel = lamp_relations(s1)
    assert rel.foot == rel.infoot == rel.lrbody == rel.body == {("s1_f1", "g_0_1"),
                                                                ("s1_f1", "g_1_0")}


def test_stacked_fork_splits_the_closed_foot_relation(stacked_state):
    # the older foot is the younger lamp's peak, so it sits on that lamp's roof
    rel = lamp_relations(stacked_state.current)
    assert ("s1_f1", "s2_f1") in rel.foot
    assert ("s1_f1", "s2_f1") not in rel.infoot
    assert rel.infoot == rel.lrbody == rel.body


def test_find_lamp(s1):
    with pytest.raises(LampNotFound):
        find_lamp(s1, "g_1_1", side="nowhere")
    assert find_lamp(s1, "g_1_1", side="left").foot == "g_0_1"
    assert find_lamp(s1, "g_1_1").internal


def test_covers_of_s1_lamp(s1):
    I = find_lamp(s1, "g_1_1")
    assert lamp_covers(s1, I) == {"g_0_1", "g_1_0"}
    assert lamp_covers(s1, I) == poset_covers(lamp_poset(s1), I.key)
    with pytest.raises(BoundaryLamp):
        lamp_covers(s1, find_lamp(s1, "g_1_1", side="left"))


def test_comparable_neighbours_give_one_cover():
    L = replay(Recipe((1, 1), (Step("multifork", "g_1_1", 2),
                               Step("multifork", "s1_f1", 1)))).current
    I = next(l for l in lamps(L) if l.key == "s2_f1")
    nwl, nel = nwl_nel(L, I)
    assert nwl and nel and nwl != nel
    assert lamp_covers(L, I) == {"s1_x4"} == poset_covers(lamp_poset(L), I.key)


def test_rungs(s1, square):
    I = find_lamp(s1, "g_1_1")
    assert rungs(s1, I) == ([("s1_x1", "g_0_1")], [("s1_x2", "g_1_0")])
    assert rung_report(s1, I)[0]
    left = find_lamp(square, "g_1_1", side="left")
    assert rungs(square, left)[0] == []


def test_swing(s1, square):
    tube = ("s1_f1", "g_1_1")
    left = ("g_0_1", "g_1_1")
    assert swing_leq(s1, left, tube)
    assert swing_path(s1, left, tube)[0] == left
    assert not swing_leq(s1, tube, tube)
    assert not swing_leq(s1, tube, left)
    assert not swing_leq(square, ("g_0_1", "g_1_1"), ("g_1_0", "g_1_1"))
    with pytest.raises(NotANeonTube):
        swing_leq(s1, ("g_0_0", "s1_x1"), tube)
