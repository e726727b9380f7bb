import pytest

from srlat.constructions import grid, s_k
from srlat.diagram import (LatticeDiagram, check_c1, check_sr, classify_edge,
                           four_cells, irreducibles, is_semimodular)
from srlat.errors import DownwardEdge, NotALattice, NotPlanar, UnknownEdge, UnknownLabel
from srlat.io import lattice_from_json, lattice_to_json


def chain(n):
    return LatticeDiagram({f"c{i}": (i, 0) for i in range(n)},
                          [(f"c{i}", f"c{i + 1}") for i in range(n - 1)])


def test_square_builds():
    L = LatticeDiagram({"0": (0, 0), "a": (1, 0), "b": (0, 1), "1": (1, 1)},
                       [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
    assert L.n == 4
    assert L.meet("a", "b") == "0" and L.join("a", "b") == "1"
    assert L.meet("a", "a") == "a" and L.join("b", "b") == "b"


def test_vee_is_not_a_lattice():
    with pytest.raises(NotALattice):
        LatticeDiagram({"0": (0, 0), "a": (1, 0), "b": (0, 1)}, [("0", "a"), ("0", "b")])


def test_bad_inputs():
    with pytest.raises(UnknownLabel):
        LatticeDiagram({"0": (0, 0)}, [("0", "x")])
    with pytest.raises(DownwardEdge):
        LatticeDiagram({"0": (0, 0), "a": (1, -1)}, [("0", "a")])
    with pytest.raises(NotPlanar):
        LatticeDiagram({"0": (0, 0), "a": (0, 0)}, [])


def test_crossing_edges_rejected():
    # a->c and b->d cross at (1, 1)
    verts = {"0": (0, 0), "a": (1, 0), "b": (0, 1), "c": (1, 2), "d": (2, 1), "1": (2, 2)}
    covers = [("0", "a"), ("0", "b"), ("a", "c"), ("b", "d"), ("c", "1"), ("d", "1")]
    with pytest.raises((NotPlanar, NotALattice)):
        LatticeDiagram(verts, covers)


def test_meet_in_s1(s1):
    # the foot of the tube and the left corner meet on the lower left ray
    assert s1.meet("s1_f1", "g_0_1") == "s1_x1"
    assert s1.join("s1_f1", "g_0_1") == "g_1_1"


def test_irreducibles():
    jir, mir, both = irreducibles(grid(1, 1))
    assert jir == mir == both == {"g_1_0", "g_0_1"}
    jir, mir, _ = irreducibles(chain(4))
    assert jir == {"c1", "c2", "c3"} and mir == {"c0", "c1", "c2"}
    assert len(irreducibles(s_k(2))[2]) == 2


def test_edge_classes(square, s1):
    assert classify_edge(square, ("g_0_0", "g_1_0")) == "normal-NE"
    assert classify_edge(square, ("g_0_0", "g_0_1")) == "normal-NW"
    assert classify_edge(s1, ("s1_f1", "g_1_1")) == "precipitous"
    with pytest.raises(UnknownEdge):
        classify_edge(square, ("g_0_0", "g_1_1"))


def test_c1(s1):
    for m in range(1, 4):
        assert check_c1(grid(m, 3)).passed
    assert check_c1(s1).passed
    # a square whose top is pulled right: a boundary edge turns steep
    bent = LatticeDiagram({"0": (0, 0), "a": (1, 0), "b": (0, 1), "1": (2, 1)},
                          [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
    rep = check_c1(bent)
    assert not rep.passed and not rep.checks["other-normal"]


@pytest.mark.parametrize("m,n", [(m, n) for m in range(1, 4) for n in range(1, 4)])
def test_grids_are_sr(m, n):
    L = grid(m, n)
    assert L.n == (m + 1) * (n + 1)
    assert check_sr(L).passed


def test_s3_is_sr_and_chain_is_not():
    assert check_sr(s_k(3)).passed
    rep = check_sr(chain(4))
    assert not rep.passed
    assert not rep.checks["two-complementary-doubly-irreducibles"]


def test_semimodularity():
    assert is_semimodular(s_k(2))[0]
    # the pentagon is not semimodular
    N5 = LatticeDiagram({"0": (0, 0), "a": (1, 0), "b": (0, 1), "c": (0, 2), "1": (1, 3)},
                        [("0", "a"), ("0", "b"), ("b", "c"), ("a", "1"), ("c", "1")])
    assert not is_semimodular(N5)[0]


def test_four_cells_of_grid():
    cells = four_cells(grid(2, 2))
    assert len(cells) == 4
    assert all(c.rectangular and c.distributive and c.enl_distributive for c in cells)


def test_four_cells_of_s1(s1):
    cells = {(c.peak, c.bottom): c for c in four_cells(s1)}
    flanking = [c for c in cells.values() if c.peak == "g_1_1"]
    assert len(flanking) == 2 and not any(c.rectangular for c in flanking)
    bottom = cells[("s1_f1", "g_0_0")]
    assert bottom.rectangular and bottom.distributive
    # its illuminated set is the region under the tube's foot, which holds no steep edge
    assert bottom.enl_distributive


def test_json_round_trip(s2):
    data = lattice_to_json(s2)
    again = lattice_from_json(data)
    assert again == s2
    assert lattice_to_json(again) == data
