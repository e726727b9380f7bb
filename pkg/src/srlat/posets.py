"""Finite posets: construction, isomorphism, order filters, and the two
composition operations (ordinal sum at an element, adding a brother)."""
from itertools import combinations

import networkx as nx
import numpy as np
from networkx.algorithms.isomorphism import DiGraphMatcher

from .errors import JNotInP, LabelClash


def transitive_closure(leq):
    """Reflexive-transitive closure of a boolean relation matrix (Warshall)."""
    m = np.array(leq, dtype=bool, copy=True)
    np.fill_diagonal(m, True)
    for k in range(len(m)):
        m |= m[:, k][:, None] & m[k][None, :]
    return m


class Poset:
    """A finite poset stored as a reflexive order matrix over ``elements``."""

    def __init__(self, elements, leq):
        self.elements = tuple(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise LabelClash("duplicate poset elements")
        self.leq_m = np.array(leq, dtype=bool).reshape(len(self.elements), len(self.elements))
        m = self.leq_m
        if len(m) and not (np.diag(m).all() and not (m & m.T & ~np.eye(len(m), dtype=bool)).any()):
            raise ValueError("relation is not reflexive and antisymmetric")
        if len(m) and (transitive_closure(m) != m).any():
            raise ValueError("relation is not transitive")

    @classmethod
    def from_relation(cls, elements, pairs):
        """Reflexive-transitive closure of ``pairs`` (x, y) meaning x <= y."""
        elements = list(elements)
        idx = {e: i for i, e in enumerate(elements)}
        m = np.zeros((len(elements), len(elements)), dtype=bool)
        for x, y in pairs:
            m[idx[x], idx[y]] = True
        return cls(elements, transitive_closure(m))

    from_covers = from_relation

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def leq(self, x, y):
        return bool(self.leq_m[self.index[x], self.index[y]])

    def lt(self, x, y):
        return x != y and self.leq(x, y)

    def up(self, x):
        return {self.elements[j] for j in np.nonzero(self.leq_m[self.index[x]])[0]}

    def down(self, x):
        return {self.elements[j] for j in np.nonzero(self.leq_m[:, self.index[x]])[0]}

    def cover_pairs(self):
        m = self.leq_m & ~np.eye(len(self), dtype=bool)
        # x < y is a cover iff no z with x < z < y
        between = (m.astype(np.int64) @ m.astype(np.int64)) > 0
        cov = m & ~between
        return [(self.elements[i], self.elements[j]) for i, j in zip(*np.nonzero(cov))]

    def upper_covers(self, x):
        return {y for a, y in self.cover_pairs() if a == x}

    def maximal(self):
        m = self.leq_m & ~np.eye(len(self), dtype=bool)
        return {self.elements[i] for i in range(len(self)) if not m[i].any()}

    def minimal(self):
        m = self.leq_m & ~np.eye(len(self), dtype=bool)
        return {self.elements[i] for i in range(len(self)) if not m[:, i].any()}

    def is_antichain(self):
        return not (self.leq_m & ~np.eye(len(self), dtype=bool)).any()

    def subposet(self, subset):
        keep = [e for e in self.elements if e in set(subset)]
        ix = [self.index[e] for e in keep]
        return Poset(keep, self.leq_m[np.ix_(ix, ix)])

    def relabel(self, mapping):
        return Poset([mapping[e] for e in self.elements], self.leq_m)

    def digraph(self):
        g = nx.DiGraph()
        g.add_nodes_from(self.elements)
        g.add_edges_from(self.cover_pairs())
        return g

    def to_json(self):
        return {"elements": [str(e) for e in self.elements],
                "covers": sorted([str(a), str(b)] for a, b in self.cover_pairs())}

    @classmethod
    def from_json(cls, data):
        return cls.from_relation(data["elements"], [tuple(c) for c in data["covers"]])

    def __repr__(self):
        return f"Poset({len(self)} elements, covers={sorted(self.cover_pairs())})"


def _profile(P):
    m = P.leq_m
    return sorted(zip(m.sum(axis=0), m.sum(axis=1)))


def find_isomorphism(P, Q):
    """An order isomorphism P -> Q as a dict, or None."""
    if len(P) != len(Q) or _profile(P) != _profile(Q):
        return None
    gp, gq = P.digraph(), Q.digraph()
    for x in P.elements:
        gp.nodes[x]["sig"] = (int(P.leq_m[:, P.index[x]].sum()), int(P.leq_m[P.index[x]].sum()))
    for y in Q.elements:
        gq.nodes[y]["sig"] = (int(Q.leq_m[:, Q.index[y]].sum()), int(Q.leq_m[Q.index[y]].sum()))
    matcher = DiGraphMatcher(gp, gq, node_match=lambda a, b: a["sig"] == b["sig"])
    for mapping in matcher.isomorphisms_iter():
        return dict(mapping)
    return None


def is_isomorphic(P, Q):
    return find_isomorphism(P, Q) is not None


def is_order_isomorphism(P, Q, mapping):
    """``mapping`` is a bijection P -> Q preserving and reflecting the order."""
    if set(mapping) != set(P.elements) or set(mapping.values()) != set(Q.elements):
        return False
    if len(set(mapping.values())) != len(P):
        return False
    return all(P.leq(x, y) == Q.leq(mapping[x], mapping[y])
               for x in P.elements for y in P.elements)


def canonical_key(P):
    """Isomorphism-invariant fingerprint; equal keys are checked with
    ``find_isomorphism`` before being treated as the same class."""
    return (len(P), tuple(_profile(P)), len(P.cover_pairs()))


def order_filters(P):
    """All up-closed subsets (including the empty one), smallest first."""
    elems = list(P.elements)
    # walk elements from the top down; each filter is fixed by its minimal elements
    found = {frozenset()}
    frontier = [frozenset()]
    while frontier:
        nxt = []
        for f in frontier:
            for x in elems:
                if x in f:
                    continue
                # x may join if everything strictly above x is already in f
                if all(y in f for y in P.up(x) if y != x):
                    g = f | {x}
                    if g not in found:
                        found.add(g)
                        nxt.append(g)
        frontier = nxt
    return sorted(found, key=lambda s: (len(s), sorted(map(str, s))))


def two_chain_filters(P):
    """Order filters isomorphic to the two-element chain."""
    out = []
    for x in P.elements:
        above = P.up(x)
        if len(above) == 2:
            out.append(frozenset(above))
    return out


def max_cover_count(P):
    counts = {x: 0 for x in P.elements}
    for x, _ in P.cover_pairs():
        counts[x] += 1
    return max(counts.values(), default=0)


def jsum(Q, j, P):
    """Ordinal sum of Q below the principal filter of j in P."""
    if set(Q.elements) & set(P.elements):
        raise LabelClash(sorted(set(Q.elements) & set(P.elements), key=str))
    if j not in P.index:
        raise JNotInP(j)
    elems = list(P.elements) + list(Q.elements)
    n = len(elems)
    m = np.zeros((n, n), dtype=bool)
    np_ = len(P)
    m[:np_, :np_] = P.leq_m
    m[np_:, np_:] = Q.leq_m
    m[np_:, :np_] = P.leq_m[P.index[j]][None, :]
    return Poset(elems, m)


def brosum(P, j, i):
    """Add a new element ``i`` covered exactly by the covers of ``j``."""
    if i in P.index:
        raise LabelClash(i)
    if j not in P.index:
        raise JNotInP(j)
    covers = P.cover_pairs()
    uj = [y for x, y in covers if x == j]
    return Poset.from_relation(list(P.elements) + [i], covers + [(i, y) for y in uj])


def chain(n, prefix="c"):
    names = [f"{prefix}{k}" for k in range(n)]
    return Poset.from_relation(names, list(zip(names, names[1:])))


def antichain(n, prefix="a"):
    names = [f"{prefix}{k}" for k in range(n)]
    return Poset.from_relation(names, [])


def width_at_most(P, w):
    """No antichain with w+1 elements."""
    m = P.leq_m | P.leq_m.T
    for combo in combinations(range(len(P)), w + 1):
        if not any(m[a, b] for a, b in combinations(combo, 2)):
            return False
    return True
