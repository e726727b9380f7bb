"""Quotient lattices and quotient diagrams (block maxima at their original positions)."""
from dataclasses import dataclass, field

import numpy as np

from .congruence import as_congruence
from .diagram import LatticeDiagram, check_c1, check_sr
from .errors import LatticeError
from .exact import planarity_violations
from .order import AbstractLattice
from .posets import Poset, find_isomorphism, transitive_closure

C1_PASS, HASSE_FAIL, PLANARITY_FAIL, ORDER_FAIL, C1_FAIL = (
    "c1-pass", "hasse-fail", "planarity-fail", "order-fail", "c1-fail")


def block_maxima(L, alpha):
    """Map block index -> label of its largest element (last in topological order)."""
    out = {}
    for i in range(L.n):
        out[int(alpha.cls[i])] = L.labels[i]
    return out


def quotient_poset(L, alpha):
    """Blocks ordered by 'some representatives comparable', named by their maxima."""
    alpha = as_congruence(L, alpha)
    bmax = block_maxima(L, alpha)
    keys = sorted(bmax)
    pos = {k: t for t, k in enumerate(keys)}
    m = np.zeros((len(keys), len(keys)), dtype=bool)
    rows = np.array([pos[int(c)] for c in alpha.cls])
    ii, jj = np.nonzero(L.leq_m)
    m[rows[ii], rows[jj]] = True
    return Poset([bmax[k] for k in keys], transitive_closure(m))


@dataclass
class QuotientSummary:
    size: int
    semimodular: bool
    slim: bool
    rectangular_or_chain: bool

    @property
    def consistent(self):
        return self.semimodular and self.slim and self.rectangular_or_chain


def quotient_lattice(L, alpha):
    """Abstract quotient plus the slim/semimodular/rectangular classification."""
    P = quotient_poset(L, alpha)
    A = AbstractLattice(P)
    summary = QuotientSummary(len(P), A.is_semimodular(), A.is_slim(),
                              A.is_chain() or A.is_rectangular())
    return A, summary


@dataclass
class QuotientResult:
    diagram: LatticeDiagram
    block_max: dict
    verdict: str
    witnesses: list = field(default_factory=list)

    @property
    def passed(self):
        return self.verdict == C1_PASS

    def to_json(self):
        from .io import lattice_to_json

        return {"verdict": self.verdict,
                "block_max": {str(k): v for k, v in self.block_max.items()},
                "witnesses": [str(w) for w in self.witnesses],
                "diagram": lattice_to_json(self.diagram) if self.diagram is not None else None}


def quotient_diagram(L, alpha):
    alpha = as_congruence(L, alpha)
    bmax = block_maxima(L, alpha)
    chosen = sorted(set(bmax.values()), key=L.index.get)
    idx = [L.index[v] for v in chosen]
    sub = L.leq_m[np.ix_(idx, idx)]
    strict = sub & ~np.eye(len(idx), dtype=bool)
    si = strict.astype(np.int64)
    cov = strict & ~((si @ si) > 0)
    edges = [(a, b) for a, b in zip(*np.nonzero(cov))]
    pts = [L.coords[v] for v in chosen]
    hits, crossings = planarity_violations(pts, edges)
    named = [(chosen[a], chosen[b]) for a, b in edges]
    if hits:
        w = [(named[k], chosen[v]) for k, v in hits]
        return QuotientResult(None, bmax, HASSE_FAIL, w)
    if crossings:
        w = [(named[k1], named[k2]) for k1, k2 in crossings]
        return QuotientResult(None, bmax, PLANARITY_FAIL, w)
    try:
        D = LatticeDiagram({v: L.coords[v] for v in chosen}, named)
    except LatticeError as exc:
        return QuotientResult(None, bmax, C1_FAIL, [str(exc)])
    oracle = quotient_poset(L, alpha)
    drawn = Poset(D.labels, D.leq_m)
    if find_isomorphism(drawn, oracle) is None or not _same_order(drawn, oracle):
        return QuotientResult(D, bmax, ORDER_FAIL, ["diagram order differs from the quotient order"])
    if D.is_chain():
        rep = check_c1(D)
    else:
        rep = check_sr(D)
        rep.merge(check_c1(D))
    if not rep.passed:
        return QuotientResult(D, bmax, C1_FAIL, rep.witnesses)
    return QuotientResult(D, bmax, C1_PASS)


def _same_order(P, Q):
    """Same labels and the identity map is an order isomorphism."""
    if set(P.elements) != set(Q.elements):
        return False
    perm = [Q.index[e] for e in P.elements]
    return bool((P.leq_m == Q.leq_m[np.ix_(perm, perm)]).all())


def quotient_of_quotient(L, beta, alpha):
    """For beta <= alpha: quotient by beta, then by alpha/beta."""
    first = quotient_diagram(L, beta)
    if first.diagram is None:
        return first
    D = first.diagram
    groups = {}
    for v in D.labels:
        groups.setdefault(int(alpha.cls[L.index[v]]), []).append(v)
    return quotient_diagram(D, list(groups.values()))
