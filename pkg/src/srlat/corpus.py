"""Test corpus: SR lattices reachable from grids by multifork steps, one per isomorphism class."""
import random
from dataclasses import dataclass, field

import networkx as nx

from .constructions import Recipe, Step, eligible_cells, extend_state, replay
from .posets import Poset, find_isomorphism


def lattice_poset(L):
    return Poset(L.labels, L.leq_m)


def lattice_hash(L):
    g = nx.DiGraph()
    g.add_nodes_from(L.labels)
    g.add_edges_from(L.covers)
    return (L.n, len(L.covers), nx.weisfeiler_lehman_graph_hash(g, iterations=4))


@dataclass
class ClassIndex:
    """Isomorphism classes of lattices, bucketed by hash and resolved exactly."""

    buckets: dict = field(default_factory=dict)
    count: int = 0

    def add(self, L):
        """Register L; return False when an isomorphic lattice is already present."""
        key = lattice_hash(L)
        bucket = self.buckets.setdefault(key, [])
        P = lattice_poset(L)
        if any(find_isomorphism(P, Q) is not None for Q in bucket):
            return False
        bucket.append(P)
        self.count += 1
        return True


def enumerate_classes(max_steps, max_k, max_grid, validate=True, stats=None):
    """Breadth first over recipe depth, expanding each isomorphism class once.

    Isomorphic SR lattices have mirror-image or equal diagrams, so their
    multifork children fall into the same classes; expanding one representative
    at its shallowest depth reaches every class of the raw stream.
    """
    if isinstance(max_grid, int):
        max_grid = (max_grid, max_grid)
    seen = ClassIndex()
    level = []
    for m in range(1, max_grid[0] + 1):
        for n in range(1, max_grid[1] + 1):
            state = replay(Recipe((m, n)), validate=validate)
            if seen.add(state.current):
                level.append(state)
    raw = len(level)
    depth = 0
    while level:
        yield from level
        if depth == max_steps:
            break
        nxt = []
        for state in level:
            for cell in eligible_cells(state.current):
                for k in range(1, max_k + 1):
                    child = extend_state(state, Step("multifork", cell.peak, k), validate=validate)
                    raw += 1
                    if seen.add(child.current):
                        nxt.append(child)
        level = nxt
        depth += 1
    if stats is not None:
        stats.update(raw=raw, classes=seen.count)


def sample_recipes(count, max_steps, max_k, max_grid, seed=0, max_elements=None,
                   index=None, validate=True):
    """Random multifork walks of exactly ``max_steps`` steps, one state per new class.

    A walk that reaches a known class, or grows past ``max_elements``, is dropped.
    Pass an existing ``index`` to skip classes found elsewhere.
    """
    if isinstance(max_grid, int):
        max_grid = (max_grid, max_grid)
    rng = random.Random(seed)
    index = index if index is not None else ClassIndex()
    out, attempts = [], 0
    while len(out) < count and attempts < 50 * count:
        attempts += 1
        state = replay(Recipe((rng.randint(1, max_grid[0]), rng.randint(1, max_grid[1]))),
                       validate=validate)
        for _ in range(max_steps):
            cells = eligible_cells(state.current)
            if not cells:
                break
            cell = rng.choice(cells)
            state = extend_state(state, Step("multifork", cell.peak, rng.randint(1, max_k)),
                                 validate=validate)
        if max_elements is not None and state.current.n > max_elements:
            continue
        if index.add(state.current):
            out.append(state)
    return out


def run_corpus(max_steps, max_k, max_grid, classes=False, progress=None, suites=("all",),
               sample=None, seed=0):
    """Check every lattice within the budget; aggregate results and observed lamp posets.

    With ``sample`` set, check that many random walks instead of the full enumeration.
    """
    from .checks import Analysis, run_suites

    if sample is not None:
        def source(*args, **kw):
            return sample_recipes(sample, max_steps, max_k, max_grid, seed=seed)
    else:
        source = enumerate_classes if classes else _raw_stream
    posets = ClassIndex()
    observed = []
    total = failed = 0
    failures = []
    stats = {}
    for state in source(max_steps, max_k, max_grid, validate=True, stats=stats):
        A = Analysis(state.current, state)
        rep = run_suites(state.current, suites, state=state, analysis=A)
        total += 1
        if not rep.passed:
            failed += 1
            failures.append({"recipe": state.recipe.to_json(),
                             "failed": sorted(k for k, ok in rep.checks.items() if not ok)})
        if _add_poset(posets, A.poset):
            observed.append(A.poset.to_json())
        if progress is not None:
            print(f"{total:5d} n={state.current.n:3d} {'ok' if rep.passed else 'FAIL'} "
                  f"{rep.seconds:6.2f}s", file=progress, flush=True)
    return {"budget": {"max_steps": max_steps, "max_k": max_k, "max_grid": max_grid,
                       "classes": classes, "sample": sample, "seed": seed},
            "lattices": total, "passed": total - failed, "failed": failed,
            "failures": failures, "lamp_posets": observed}


def _raw_stream(max_steps, max_k, max_grid, validate=True, stats=None):
    from .constructions import enumerate_sr

    yield from enumerate_sr(max_steps, max_k, max_grid, validate=validate)


def _add_poset(index, P):
    key = (len(P), len(P.cover_pairs()))
    bucket = index.buckets.setdefault(key, [])
    if any(find_isomorphism(P, Q) is not None for Q in bucket):
        return False
    bucket.append(P)
    index.count += 1
    return True
