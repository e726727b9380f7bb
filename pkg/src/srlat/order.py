"""Lattice properties computed from an order matrix alone (no drawing)."""
from itertools import combinations

import numpy as np

from .errors import NotALattice
from .posets import Poset


class AbstractLattice:
    def __init__(self, poset):
        self.P = poset
        self.elements = poset.elements
        m = poset.leq_m
        n = len(m)
        # in a topological order the greatest common lower bound is the last common one
        topo = np.argsort(m.sum(axis=0), kind="stable")
        mt = m[np.ix_(topo, topo)]
        meet = _bound_table(mt, self.elements, topo)
        join = n - 1 - _bound_table(mt.T[::-1, ::-1], self.elements, topo[::-1])[::-1, ::-1]
        inv = np.argsort(topo)
        self.meet_t = topo[meet][np.ix_(inv, inv)]
        self.join_t = topo[join][np.ix_(inv, inv)]
        strict = m & ~np.eye(n, dtype=bool)
        self.cov = strict & ~((strict.astype(np.int64) @ strict.astype(np.int64)) > 0)
        self.n = n

    def irreducibles(self):
        down = self.cov.sum(axis=0)
        up = self.cov.sum(axis=1)
        jir = {self.elements[i] for i in range(self.n) if down[i] == 1}
        mir = {self.elements[i] for i in range(self.n) if up[i] == 1}
        return jir, mir, jir & mir

    def is_chain(self):
        m = self.P.leq_m
        return bool((m | m.T).all())

    def is_semimodular(self):
        for a in range(self.n):
            for b in range(self.n):
                if self.cov[self.meet_t[a, b], a] and not self.cov[b, self.join_t[a, b]]:
                    return False
        return True

    def is_slim(self):
        """Jir has no three-element antichain."""
        jir, _, _ = self.irreducibles()
        return _width(self.P.subposet(jir)) <= 2

    def is_rectangular(self):
        """Exactly two doubly irreducible elements, and they are complementary."""
        _, _, doubly = self.irreducibles()
        if len(doubly) != 2:
            return False
        a, b = (self.P.index[x] for x in doubly)
        bottom = int(np.argmin(self.P.leq_m.sum(axis=0)))
        top = int(np.argmax(self.P.leq_m.sum(axis=0)))
        return self.meet_t[a, b] == bottom and self.join_t[a, b] == top

    def is_distributive(self):
        mt, jt = self.meet_t, self.join_t
        idx = np.arange(self.n)
        for x in idx:
            lhs = mt[x][jt]                      # x ∧ (y ∨ z)
            rhs = jt[mt[x][:, None], mt[x][None, :]]  # (x ∧ y) ∨ (x ∧ z)
            if (lhs != rhs).any():
                return False
        return True


def _bound_table(leq, names, topo):
    n = len(leq)
    table = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        common = leq & leq[:, i][:, None]
        has = common.any(axis=0)
        if not has.all():
            raise NotALattice(f"{names[topo[i]]} lacks a common bound")
        last = n - 1 - np.argmax(common[::-1], axis=0)
        if (common & ~leq[:, last]).any():
            raise NotALattice(f"{names[topo[i]]} lacks a unique bound")
        table[i] = last
    return table


def _width(P):
    """Size of the largest antichain, capped at 3."""
    m = P.leq_m | P.leq_m.T
    w = 1 if len(P) else 0
    for size in (2, 3):
        if any(not any(m[a, b] for a, b in combinations(c, 2))
               for c in combinations(range(len(P)), size)):
            w = size
    return w


def lattice_from_matrix(elements, leq):
    return AbstractLattice(Poset(elements, leq))
