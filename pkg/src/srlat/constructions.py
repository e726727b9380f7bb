"""Grids, multifork insertion, thrusting, widening, and recipe replay.

All constructions work on a mutable ``Draft`` (coordinates plus edges) and
return a fresh ``LatticeDiagram``.  New vertices are labeled
``s<step>_f<i>`` (feet, left to right) and ``s<step>_x<j>`` (everything else,
in height order).
"""
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .diagram import LatticeDiagram, check_c1, check_sr, four_cells
from .errors import (BadDimensions, BadK, BoundaryLamp, CellNotFound,
                     InputError, IsoFailure, LampNotFound, NotDistributive,
                     NotRectangular, PlacementFailure, RecipeError)
from .geometry import roof_chains
from .lamps import INTERNAL, LEFT, RIGHT, find_lamp, lamp_poset, lamps
from .posets import find_isomorphism

_STEP_RE = re.compile(r"^s(\d+)_")


def label_step(label):
    """Construction step that created a vertex (0 for grid vertices)."""
    m = _STEP_RE.match(label)
    return int(m.group(1)) if m else 0


def next_step(L):
    return 1 + max((label_step(v) for v in L.labels), default=0)


class Draft:
    """Editable geometry: coordinates and cover edges keyed by label."""

    def __init__(self, L):
        self.coords = dict(L.coords)
        self.edges = set(L.covers)
        self._tmp = 0
        self.new = []

    def add(self, pt):
        label = f"_t{self._tmp}"
        self._tmp += 1
        self.coords[label] = pt
        self.new.append(label)
        return label

    def at(self, pt):
        for v, c in self.coords.items():
            if c == pt:
                return v
        return None

    def diagram(self):
        return LatticeDiagram(self.coords, self.edges)

    def finalize(self, step, feet):
        """Rename temporary labels to their deterministic step labels."""
        rename = {f: f"s{step}_f{i}" for i, f in enumerate(feet, 1)}
        others = sorted((v for v in self.new if v not in rename and v in self.coords),
                        key=lambda v: (sum(self.coords[v]), self.coords[v][0] - self.coords[v][1]))
        rename.update({v: f"s{step}_x{j}" for j, v in enumerate(others, 1)})
        self.coords = {rename.get(v, v): c for v, c in self.coords.items()}
        self.edges = {(rename.get(a, a), rename.get(b, b)) for a, b in self.edges}
        return LatticeDiagram(self.coords, self.edges)


def grid(m, n):
    """Direct product of an (m+1)- and an (n+1)-element chain."""
    if not (isinstance(m, int) and isinstance(n, int)) or m < 1 or n < 1:
        raise BadDimensions(f"grid({m}, {n})")
    coords = {f"g_{p}_{q}": (Fraction(p), Fraction(q)) for p, q in product(range(m + 1), range(n + 1))}
    covers = [(f"g_{p}_{q}", f"g_{p + 1}_{q}") for p in range(m) for q in range(n + 1)]
    covers += [(f"g_{p}_{q}", f"g_{p}_{q + 1}") for p in range(m + 1) for q in range(n)]
    return LatticeDiagram(coords, covers)


# --- the ray engine ------------------------------------------------------------

def _cross(d, e):
    return d[0] * e[1] - d[1] * e[0]


def shoot_rays(draft, feet, rays=("left", "down")):
    """Draw the normal-slope rays from each foot down to the lower boundary.

    Every existing vertex on a ray is kept, every edge a ray meets in its
    relative interior is subdivided, and rays of different feet meet at new
    vertices.  Rays must only meet edges of normal slope.
    """
    segs = []
    for f in feet:
        P, Q = draft.coords[f]
        if "left" in rays:
            segs.append(((Fraction(0), Q), (P, Q)))
        if "down" in rays:
            segs.append(((P, Fraction(0)), (P, Q)))
    on_ray = [set() for _ in segs]
    splits = {}
    for k, (a, b) in enumerate(segs):
        d = (b[0] - a[0], b[1] - a[1])
        for v, c in draft.coords.items():
            if _cross(d, (c[0] - a[0], c[1] - a[1])) == 0 and _between(a, b, c):
                on_ray[k].add(c)
        for u, w in draft.edges:
            cu, cw = draft.coords[u], draft.coords[w]
            e = (cw[0] - cu[0], cw[1] - cu[1])
            den = _cross(d, e)
            diff = (cu[0] - a[0], cu[1] - a[1])
            if den == 0:
                if _cross(d, diff) == 0 and _overlap_length(a, b, cu, cw):
                    raise PlacementFailure(f"ray {a}->{b} runs along edge {u}->{w}")
                continue
            t = _cross(diff, e) / den
            s = _cross(diff, d) / den
            if 0 <= t <= 1 and 0 < s < 1:
                if e[0] > 0 and e[1] > 0:
                    raise PlacementFailure(f"ray {a}->{b} meets precipitous edge {u}->{w}")
                x = (a[0] + t * d[0], a[1] + t * d[1])
                splits.setdefault((u, w), set()).add(x)
                on_ray[k].add(x)
    for k1, (a1, b1) in enumerate(segs):
        for k2, (a2, b2) in enumerate(segs):
            if k1 < k2:
                x = _axis_meet(a1, b1, a2, b2)
                if x is not None:
                    on_ray[k1].add(x)
                    on_ray[k2].add(x)
    label_of = {c: v for v, c in draft.coords.items()}

    def label(pt):
        if pt not in label_of:
            label_of[pt] = draft.add(pt)
        return label_of[pt]

    for (u, w), pts in splits.items():
        draft.edges.discard((u, w))
        chain = [u] + [label(x) for x in sorted(pts, key=lambda x: x[0] + x[1])] + [w]
        draft.edges.update(zip(chain, chain[1:]))
    for k, (a, b) in enumerate(segs):
        pts = sorted(on_ray[k], key=lambda x: x[0] + x[1])
        chain = [label(x) for x in pts]
        draft.edges.update(zip(chain, chain[1:]))


def _between(a, b, c):
    return min(a[0], b[0]) <= c[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])


def _overlap_length(a, b, c, d):
    """Collinear segments ab and cd share more than a point."""
    axis = 0 if a[0] != b[0] else 1
    lo = max(min(a[axis], b[axis]), min(c[axis], d[axis]))
    hi = min(max(a[axis], b[axis]), max(c[axis], d[axis]))
    return hi > lo


def _axis_meet(a1, b1, a2, b2):
    """Meeting point of two axis-parallel closed segments that are not parallel."""
    h1, h2 = a1[1] == b1[1], a2[1] == b2[1]
    if h1 == h2:
        return None
    (ha, hb), (va, vb) = ((a1, b1), (a2, b2)) if h1 else ((a2, b2), (a1, b1))
    x = (va[0], ha[1])
    if _between(ha, hb, x) and _between(va, vb, x):
        return x
    return None


# --- multifork insertion -------------------------------------------------------

def _gap(values, lo, hi):
    inner = sorted({v for v in values if lo < v < hi})
    pts = [lo] + inner + [hi]
    best = max(zip(pts, pts[1:]), key=lambda g: (g[1] - g[0], -g[0]))
    return best


def find_cell(L, peak, cells=None):
    cells = cells if cells is not None else four_cells(L)
    if peak not in L:
        raise CellNotFound(f"no vertex {peak}")
    mine = [c for c in cells if c.peak == peak]
    if not mine:
        raise CellNotFound(f"no 4-cell has peak {peak}")
    rect = [c for c in mine if c.rectangular]
    if not rect:
        raise NotRectangular(f"the 4-cells under {peak} are not rectangular")
    return rect[0]


def insert_multifork(L, cell_peak, k, step=None, cells=None):
    """Replace the 4-cell under ``cell_peak`` by a k-fold multifork.

    The cell must be rectangular and Enl-distributive (every distributive cell is).
    """
    if not isinstance(k, int) or k < 1:
        raise BadK(f"k = {k}")
    cell = find_cell(L, cell_peak, cells)
    if not cell.enl_distributive:
        raise NotDistributive(f"precipitous edge in the illuminated set of {cell_peak}")
    step = step or next_step(L)
    p0, q0 = L.coords[cell.bottom]
    p1, q1 = L.coords[cell.peak]
    lo_p, hi_p = _gap([c[0] for c in L.coords.values()], p0, p1)
    lo_q, hi_q = _gap([c[1] for c in L.coords.values()], q0, q1)
    draft = Draft(L)
    feet = []
    for i in range(1, k + 1):
        P = lo_p + i * (hi_p - lo_p) / (k + 1)
        Q = hi_q - i * (hi_q - lo_q) / (k + 1)
        feet.append(draft.add((P, Q)))
    shoot_rays(draft, feet)
    draft.edges.update((f, cell.peak) for f in feet)
    return draft.finalize(step, feet)


def s_k(k):
    """The k-fold multifork inserted into the four-element grid."""
    return insert_multifork(grid(1, 1), "g_1_1", k, step=1)


# --- thrusting -----------------------------------------------------------------

def _just_below(values, top):
    below = [v for v in values if v < top]
    return (max(below) + top) / 2


def thrust_lamp(L, lamp_peak, k, side=None, step=None):
    """Thrust a new k-fold lamp atop the lamp addressed by ``lamp_peak``."""
    J = find_lamp(L, lamp_peak, side)
    if not isinstance(k, int) or k < 1:
        raise BadK(f"k = {k}")
    if not J.internal and k != 1:
        raise BadK(f"boundary lamp {J.foot}->{J.peak} admits only k = 1")
    step = step or next_step(L)
    draft = Draft(L)
    T = J.peak
    pT, qT = L.coords[T]
    lroof, rroof = roof_chains(L, T)
    roof = set(lroof) | set(rroof)
    use_left = J.kind in (INTERNAL, RIGHT)
    use_right = J.kind in (INTERNAL, LEFT)
    qs = _just_below([c[1] for c in L.coords.values()], qT) if use_left else None
    ps = _just_below([c[0] for c in L.coords.values()], pT) if use_right else None

    twin = {}
    if use_left:
        for x in lroof:
            if x != T:
                twin[x] = draft.add((L.coords[x][0], qs))
    if use_right:
        for x in rroof:
            if x != T:
                twin[x] = draft.add((ps, L.coords[x][1]))
    if J.kind == INTERNAL:
        foot_pt = (ps, qs)
    elif J.kind == RIGHT:
        foot_pt = (pT, qs)
    else:
        foot_pt = (ps, qT)
    foot = draft.add(foot_pt)

    edges = set()
    for u, w in draft.edges:
        if w in twin and u not in roof:
            edges.add((u, twin[w]))
        elif w == T and u not in roof:
            edges.add((u, foot))
        else:
            edges.add((u, w))
    edges.update((twin[x], x) for x in twin)
    if J.kind != INTERNAL:
        f = J.tubes[0][0]
        edges.discard((f, T))
        edges.update({(f, foot), (foot, T)})
    draft.edges = edges

    if J.kind == INTERNAL:
        feet = []
        for i in range(1, k + 1):
            P = ps + (i - 1) * (pT - ps) / k
            Q = qs + (k - i) * (qT - qs) / k
            feet.append(foot if (P, Q) == foot_pt else draft.add((P, Q)))
        shoot_rays(draft, feet)
        draft.edges.update((f, T) for f in feet)
    else:
        feet = [foot]
        shoot_rays(draft, feet, rays=("left",) if J.kind == RIGHT else ("down",))
    return draft.finalize(step, feet)


def thrust_foot(L_new, L_old, lamp_peak, side=None):
    """Foot label of the lamp created by a thrust: the new lamp at the old peak."""
    new = [lamp for lamp in lamps(L_new) if lamp.peak == lamp_peak and lamp.foot not in L_old]
    if side in ("left", "right"):
        new = [lamp for lamp in new if lamp.kind == {"left": LEFT, "right": RIGHT}[side]]
    if len(new) != 1:
        raise LampNotFound(f"no unique new lamp at {lamp_peak}")
    return new[0]


# --- widening ---------------------------------------------------------------------

def _next_above(values, v):
    return min(x for x in values if x > v)


def widen_lamp(L, lamp_peak, step=None, verify=True, max_refine=6):
    """Give an internal lamp one more neon tube on its left."""
    J = find_lamp(L, lamp_peak)
    if not J.internal:
        raise BoundaryLamp(f"{J.foot}->{J.peak}")
    step = step or next_step(L)
    f1 = J.tubes[0][0]
    cell = next((c for c in four_cells(L) if c.peak == J.peak and c.right == f1), None)
    if cell is None:
        raise PlacementFailure(f"no 4-cell left of the tube {f1}->{J.peak}")
    pb, qb = L.coords[cell.bottom]
    dp = _next_above([c[0] for c in L.coords.values()], pb) - pb
    dq = _next_above([c[1] for c in L.coords.values()], qb) - qb
    before = lamp_poset(L) if verify else None
    last = None
    for r in range(max_refine):
        scale = Fraction(1, 2 ** (r + 1))
        draft = Draft(L)
        g = draft.add((pb + dp * scale, qb + dq * scale))
        try:
            shoot_rays(draft, [g])
            draft.edges.add((g, J.peak))
            out = draft.finalize(step, [g])
        except (PlacementFailure, InputError) as exc:
            last = exc
            continue
        if not verify or find_isomorphism(before, lamp_poset(out)) is not None:
            return out
        last = IsoFailure("lamp poset changed")
    raise PlacementFailure(f"widening {lamp_peak} failed: {last}")


# --- recipes ----------------------------------------------------------------------

@dataclass
class Step:
    op: str
    target: str
    k: int = 1
    side: str = None

    def to_json(self):
        key = "cell_peak" if self.op == "multifork" else "lamp_peak"
        out = {"op": self.op, key: self.target}
        if self.op != "widen":
            out["k"] = self.k
        if self.side is not None:
            out["side"] = self.side
        return out

    @classmethod
    def from_json(cls, data):
        op = data.get("op")
        if op == "multifork":
            return cls(op, str(data["cell_peak"]), int(data.get("k", 1)))
        if op in ("thrust", "widen"):
            return cls(op, str(data["lamp_peak"]), int(data.get("k", 1)), data.get("side"))
        raise InputError(f"unknown step op {op!r}")


@dataclass
class Recipe:
    base: tuple
    steps: list = field(default_factory=list)

    def to_json(self):
        return {"base": list(self.base), "steps": [s.to_json() for s in self.steps]}

    @classmethod
    def from_json(cls, data):
        try:
            base = tuple(int(v) for v in data["base"])
            steps = [Step.from_json(s) for s in data.get("steps", [])]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed recipe: {exc}") from None
        if len(base) != 2:
            raise InputError("recipe base must be [m, n]")
        return cls(base, steps)

    def extended(self, step):
        return Recipe(self.base, list(self.steps) + [step])


@dataclass
class BuildState:
    recipe: Recipe
    snapshots: list
    birth: dict = field(default_factory=dict)

    @property
    def current(self):
        return self.snapshots[-1]


def apply_step(L, step, number):
    if step.op == "multifork":
        return insert_multifork(L, step.target, step.k, step=number)
    if step.op == "thrust":
        return thrust_lamp(L, step.target, step.k, side=step.side, step=number)
    if step.op == "widen":
        return widen_lamp(L, step.target, step=number)
    raise InputError(f"unknown step op {step.op!r}")


def _update_birth(birth, before, after, number, step):
    """Track internal lamps by foot label; values are the creating step."""
    old = {lamp.key for lamp in lamps(before) if lamp.internal}
    new = {lamp.key: lamp for lamp in lamps(after) if lamp.internal}
    birth = {key: s for key, s in birth.items() if key in new}
    if step.op == "widen":
        J = find_lamp(before, step.target)
        widened = find_lamp(after, step.target)
        if J.key in birth:
            birth[widened.key] = birth.pop(J.key)
    for key in new:
        if key not in birth and key not in old:
            birth[key] = number
    return birth


def validate_diagram(L):
    rep = check_sr(L)
    rep.merge(check_c1(L))
    return rep


def replay(recipe, validate=True):
    if isinstance(recipe, dict):
        recipe = Recipe.from_json(recipe)
    try:
        L = grid(*recipe.base)
    except InputError as exc:
        raise RecipeError(0, exc) from None
    state = BuildState(recipe, [L], {})
    for number, step in enumerate(recipe.steps, 1):
        try:
            nxt = apply_step(state.current, step, number)
        except (InputError, PlacementFailure) as exc:
            raise RecipeError(number, exc) from None
        if validate:
            rep = validate_diagram(nxt)
            if not rep.passed:
                raise RecipeError(number, PlacementFailure(f"result fails {rep.witnesses[:3]}"))
        state.birth = _update_birth(state.birth, state.current, nxt, number, step)
        state.snapshots.append(nxt)
    return state


def extend_state(state, step, validate=True):
    """Apply one more step to a BuildState, returning a new state."""
    number = len(state.snapshots)
    try:
        nxt = apply_step(state.current, step, number)
    except (InputError, PlacementFailure) as exc:
        raise RecipeError(number, exc) from None
    if validate:
        rep = validate_diagram(nxt)
        if not rep.passed:
            raise RecipeError(number, PlacementFailure(f"result fails {rep.witnesses[:3]}"))
    birth = _update_birth(state.birth, state.current, nxt, number, step)
    return BuildState(state.recipe.extended(step), state.snapshots + [nxt], birth)


def eligible_cells(L):
    return [c for c in four_cells(L) if c.rectangular and c.distributive]


def enumerate_sr(max_steps, max_k, max_grid, validate=True):
    """All multifork recipes within the budget, depth first, in a fixed order."""
    if isinstance(max_grid, int):
        max_grid = (max_grid, max_grid)
    for m in range(1, max_grid[0] + 1):
        for n in range(1, max_grid[1] + 1):
            yield from _grow(replay(Recipe((m, n)), validate=validate), max_steps, max_k, validate)


def _grow(state, steps_left, max_k, validate):
    yield state
    if steps_left == 0:
        return
    for cell in eligible_cells(state.current):
        for k in range(1, max_k + 1):
            child = extend_state(state, Step("multifork", cell.peak, k), validate=validate)
            yield from _grow(child, steps_left - 1, max_k, validate)
