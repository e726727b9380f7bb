"""Filters of a finite distributive lattice versus order filters of its join-irreducibles."""
from dataclasses import dataclass

import numpy as np

from .errors import NotDistributive
from .order import AbstractLattice
from .posets import Poset, find_isomorphism, order_filters
from .report import Report


@dataclass
class Duality:
    lattice: AbstractLattice
    jir: list
    psi: dict      # filter generator d -> frozenset of join-irreducibles
    gamma: dict    # order filter of Jir D -> generator of the lattice filter
    report: Report


def principal_filter(D, d):
    i = D.P.index[d]
    return {D.elements[j] for j in np.nonzero(D.P.leq_m[i])[0]}


def filter_jir(D, d):
    """Join-irreducible elements of the lattice filter generated by d."""
    up = principal_filter(D, d)
    out = []
    for x in up:
        if x == d:
            continue
        lower = [y for y in up if y != x and D.P.leq(y, x)]
        maximal = [y for y in lower if not any(z != y and D.P.leq(y, z) for z in lower)]
        if len(maximal) == 1:
            out.append(x)
    return out


def filter_duality(D):
    """Compute both maps in closed form and verify every claimed property."""
    if not isinstance(D, AbstractLattice):
        D = AbstractLattice(D)
    if not D.is_distributive():
        raise NotDistributive("filter duality needs a distributive lattice")
    P = D.P
    jir_set, _, _ = D.irreducibles()
    jir = [x for x in D.elements if x in jir_set]
    jposet = P.subposet(jir)
    rep = Report("filter-duality")

    def join_all(xs):
        idx = None
        for x in xs:
            k = P.index[x]
            idx = k if idx is None else D.join_t[idx, k]
        if idx is None:  # empty join is the bottom
            idx = int(np.argmin(P.leq_m.sum(axis=0)))
        return D.elements[idx]

    # every filter of a finite lattice is principal, so a filter is named by its generator
    psi = {d: frozenset(j for j in jir if not P.leq(j, d)) for d in D.elements}
    ofilts = order_filters(jposet)
    gamma = {Y: join_all(j for j in jir if j not in Y) for Y in ofilts}

    rep.record("psi-lands-in-order-filters", all(v in set(ofilts) for v in psi.values()))
    rep.record("gamma-after-psi", all(gamma[psi[d]] == d for d in D.elements),
               [d for d in D.elements if gamma.get(psi[d]) != d])
    rep.record("psi-after-gamma", all(psi[gamma[Y]] == Y for Y in ofilts))
    # filters are ordered by inclusion: up(d) ⊆ up(e) iff e <= d
    rep.record("psi-monotone", all((psi[d] <= psi[e]) == P.leq(e, d)
                                   for d in D.elements for e in D.elements))
    rep.record("gamma-monotone", all(P.leq(gamma[Z], gamma[Y]) == (Y <= Z)
                                     for Y in ofilts for Z in ofilts))
    bad = []
    for d in D.elements:
        jx = filter_jir(D, d)
        image = sorted(psi[d], key=P.index.get)
        mu = {p: D.elements[D.join_t[P.index[d], P.index[p]]] for p in image}
        source = P.subposet(image)
        target = P.subposet(jx)
        ok = (sorted(mu.values(), key=P.index.get) == sorted(jx, key=P.index.get)
              and all(P.leq(a, b) == P.leq(mu[a], mu[b]) for a in image for b in image))
        if not ok or find_isomorphism(source, target) is None:
            bad.append(d)
    rep.record("jir-of-filter-matches-psi", not bad, bad)
    return Duality(D, jir, psi, gamma, rep)


def boolean_lattice(k):
    names = [format(m, f"0{k}b") for m in range(2 ** k)]
    leq = [[(a & b) == a for b in range(2 ** k)] for a in range(2 ** k)]
    return AbstractLattice(Poset(names, np.array(leq)))


def conlattice_as_lattice(conlat):
    names = [f"a{k}" for k in range(len(conlat.members))]
    return AbstractLattice(Poset(names, conlat.order_matrix()))
