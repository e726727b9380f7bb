"""Territories that depend on how a lattice was built: original territories
of neon tubes and the used/unused classification."""
from dataclasses import dataclass

from .constructions import label_step
from .diagram import four_cells, precipitous_edges
from .errors import NoRecipe, NotANeonTube
from .geometry import Territory, cell_polygon, polygon_regions
from .lamps import Perspectivity, lamps


@dataclass
class OriginalTerritory:
    tube: tuple
    step: int
    cells: list
    lower_cells: list
    ot: Territory
    lhot: Territory


def original_territory(state, tube, L=None):
    if state is None:
        raise NoRecipe("original territories need the construction history")
    L = L or state.current
    f, _ = tube
    if tube not in {t for lamp in lamps(L) for t in lamp.tubes}:
        raise NotANeonTube(tube)
    step = label_step(f)
    Li = state.snapshots[step]
    ups = Li.covers_of(f)
    if len(ups) != 1:
        raise NotANeonTube(f"{f} is not meet-irreducible in snapshot {step}")
    born = (f, ups[0])
    persp = Perspectivity(Li)
    cells = []
    for cell in four_cells(Li):
        sides = ((cell.bottom, cell.left), (cell.right, cell.peak)), \
                ((cell.bottom, cell.right), (cell.left, cell.peak))
        if any(persp.same_trajectory(a, born) and persp.same_trajectory(b, born) for a, b in sides):
            cells.append(cell)
    lower = [c for c in cells if born[1] not in (c.bottom, c.left, c.right, c.peak)]
    ot = Territory([r for c in cells for r in polygon_regions(cell_polygon(Li, c))])
    lhot = Territory([r for c in lower for r in polygon_regions(cell_polygon(Li, c))])
    return OriginalTerritory(tube, step, cells, lower, ot, lhot)


@dataclass
class Usage:
    used: dict          # tube -> bool
    users: dict         # tube -> set of internal lamp keys that use it


def used_neon_tubes(L, state):
    if state is None:
        raise NoRecipe("used neon tubes need the construction history")
    lamp_list = lamps(L)
    owner = {t: K for K in lamp_list for t in K.tubes}
    steep = [(L.coords[a], L.coords[b], owner.get((a, b))) for a, b in L.edge_list()
             if (a, b) in owner and owner[(a, b)].internal]
    assert len(steep) == len(precipitous_edges(L))
    used, users = {}, {}
    for K in lamp_list:
        for tube in K.tubes:
            lhot = original_territory(state, tube, L).lhot
            who = {U.key for u, v, U in steep if lhot.segment_overlap(u, v)}
            used[tube] = bool(who)
            users[tube] = who
    return Usage(used, users)


def three_tube_violations(L, usage):
    """Internal lamps that use three different tubes of a single lamp."""
    bad = []
    for K in lamps(L):
        count = {}
        for t in K.tubes:
            for u in usage.users[t]:
                count[u] = count.get(u, 0) + 1
        bad += [(u, K.key) for u, c in count.items() if c >= 3]
    return bad
