"""Brute-force congruence computations: the oracle the lamp machinery is tested against."""
import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import IsoFailure, NotACongruence, UnknownLabel
from .posets import Poset


def _components(n, src, dst):
    g = coo_matrix((np.ones(len(src)), (src, dst)), shape=(n, n))
    _, comp = connected_components(g, directed=False)
    # canonical class id: smallest member index
    first = np.full(comp.max() + 1, n, dtype=np.int64)
    np.minimum.at(first, comp, np.arange(n))
    return first[comp]


class Congruence:
    """A partition of a diagram's vertices, stored as ``cls[i]`` = least index in i's block."""

    __slots__ = ("L", "cls", "_key")

    def __init__(self, L, cls):
        self.L = L
        self.cls = np.asarray(cls, dtype=np.int64)
        self._key = self.cls.tobytes()

    @classmethod
    def identity(cls, L):
        return cls(L, np.arange(L.n))

    @classmethod
    def full(cls, L):
        return cls(L, np.zeros(L.n, dtype=np.int64))

    @classmethod
    def from_blocks(cls, L, blocks, close=False):
        src, dst = [], []
        for block in blocks:
            idx = [L._i(v) for v in block]
            src += idx
            dst += [idx[0]] * len(idx)
        src += list(range(L.n))
        dst += list(range(L.n))
        part = cls(L, _components(L.n, np.array(src), np.array(dst)))
        return _close(L, part.cls) if close else part

    def blocks(self):
        out = {}
        for i, c in enumerate(self.cls):
            out.setdefault(int(c), []).append(self.L.labels[i])
        return [sorted(b, key=self.L.index.get) for _, b in sorted(out.items())]

    def block_of(self, label):
        c = self.cls[self.L._i(label)]
        return [self.L.labels[i] for i in np.nonzero(self.cls == c)[0]]

    def same(self, a, b):
        return self.cls[self.L._i(a)] == self.cls[self.L._i(b)]

    def nontrivial_blocks(self):
        return [b for b in self.blocks() if len(b) > 1]

    def __le__(self, other):
        return bool((other.cls == other.cls[self.cls]).all())

    def __lt__(self, other):
        return self != other and self <= other

    def __eq__(self, other):
        return isinstance(other, Congruence) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def join(self, other):
        n = self.L.n
        src = np.concatenate([np.arange(n), np.arange(n)])
        dst = np.concatenate([self.cls, other.cls])
        return Congruence(self.L, _components(n, src, dst))

    def meet(self, other):
        pairs = {}
        out = np.empty(self.L.n, dtype=np.int64)
        for i, key in enumerate(zip(self.cls, other.cls)):
            out[i] = pairs.setdefault(key, i)
        return Congruence(self.L, out)

    def is_congruence(self):
        return _violations(self.L, self.cls) is None

    def to_json(self):
        return {"blocks": self.blocks()}

    def __repr__(self):
        return f"Congruence({self.nontrivial_blocks()})"


def _violations(L, cls):
    """Pairs forced together but not yet merged, or None when closed."""
    n = L.n
    xs = np.nonzero(cls != np.arange(n))[0]
    if len(xs) == 0:
        return None
    reps = cls[xs]
    src, dst = [], []
    for table in (L.meet_t, L.join_t):
        a, b = table[xs], table[reps]
        bad = cls[a] != cls[b]
        if bad.any():
            src.append(a[bad])
            dst.append(b[bad])
    if not src:
        return None
    return np.concatenate(src), np.concatenate(dst)


def _close(L, cls):
    cls = np.asarray(cls, dtype=np.int64)
    n = L.n
    while True:
        v = _violations(L, cls)
        if v is None:
            return Congruence(L, cls)
        src = np.concatenate([np.arange(n), v[0]])
        dst = np.concatenate([cls, v[1]])
        cls = _components(n, src, dst)


def principal_congruence(L, a, b):
    """Least congruence collapsing a and b (fixpoint closure)."""
    try:
        i, j = L.index[a], L.index[b]
    except KeyError as exc:
        raise UnknownLabel(exc.args[0]) from None
    cls = np.arange(L.n)
    lo, hi = min(i, j), max(i, j)
    cls[hi] = lo
    return _close(L, cls)


def edge_congruences(L):
    """con(e) for every cover edge e."""
    return {e: principal_congruence(L, *e) for e in L.edge_list()}


def as_congruence(L, alpha):
    """Accept a Congruence, a block list, or a pair; reject non-congruences."""
    if isinstance(alpha, Congruence):
        cong = alpha
    elif isinstance(alpha, tuple) and len(alpha) == 2 and all(isinstance(v, str) for v in alpha):
        return principal_congruence(L, *alpha)
    else:
        cong = Congruence.from_blocks(L, alpha)
    if not cong.is_congruence():
        raise NotACongruence("partition is not compatible with meet and join")
    return cong


class ConLattice:
    """All congruences of a finite lattice, found as the join-closure of the con(e)."""

    def __init__(self, L, edge_cons=None):
        self.L = L
        self.edge_cons = edge_cons or edge_congruences(L)
        gens = []
        for c in self.edge_cons.values():
            if c not in gens:
                gens.append(c)
        self.jir = gens
        seen = {Congruence.identity(L)}
        frontier = list(seen)
        while frontier:
            nxt = []
            for c in frontier:
                for g in gens:
                    d = c.join(g)
                    if d not in seen:
                        seen.add(d)
                        nxt.append(d)
            frontier = nxt
        self.members = sorted(seen, key=lambda c: (len(np.unique(c.cls)) * -1, c._key))

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def jir_poset(self):
        names = [f"c{k}" for k in range(len(self.jir))]
        pairs = [(names[a], names[b]) for a, x in enumerate(self.jir)
                 for b, y in enumerate(self.jir) if a != b and x <= y]
        return Poset.from_relation(names, pairs)

    def order_matrix(self):
        """order[a, b] is True when members[a] <= members[b]."""
        C = np.array([c.cls for c in self.members])
        # a <= b iff every block of a sits inside one block of b
        return np.array([(C[:, C[a]] == C).all(axis=1) for a in range(len(C))])

    def is_distributive(self):
        from .order import AbstractLattice

        names = [f"a{k}" for k in range(len(self.members))]
        return AbstractLattice(Poset(names, self.order_matrix())).is_distributive()

    def join_irreducibles(self):
        """Join-irreducible members computed from the order alone."""
        ms = self.members
        out = []
        for x in ms:
            below = [y for y in ms if y < x]
            if not below:
                continue
            maximal = [y for y in below if not any(y < z for z in below)]
            if len(maximal) == 1:
                out.append(x)
        return out


def jir_con_poset(L):
    """Jir(Con L) from the principal congruences of edges, without the full Con L."""
    cons = []
    for c in edge_congruences(L).values():
        if c not in cons:
            cons.append(c)
    names = [f"j{k}" for k in range(len(cons))]
    return Poset.from_relation(names, [(names[a], names[b]) for a, x in enumerate(cons)
                                       for b, y in enumerate(cons) if a != b and x <= y])


def con_lattice(L):
    cl = ConLattice(L)
    return cl, cl.jir_poset()


def phi(L, lamp):
    return principal_congruence(L, lamp.foot, lamp.peak)


def phi_iso(L, lamp_list=None, poset=None, conlat=None):
    """Check that lamp -> con(foot, peak) is an order isomorphism onto Jir(Con L)."""
    from .lamps import lamp_poset, lamps

    lamp_list = lamp_list or lamps(L)
    poset = poset or lamp_poset(L, lamp_list)
    conlat = conlat or ConLattice(L)
    image = {lamp.key: phi(L, lamp) for lamp in lamp_list}
    targets = set(conlat.jir)
    if set(image.values()) != targets or len(set(image.values())) != len(image):
        raise IsoFailure("lamp map is not a bijection onto Jir(Con L)")
    for a in image:
        for b in image:
            if poset.leq(a, b) != (image[a] <= image[b]):
                raise IsoFailure(f"order mismatch on lamps {a}, {b}")
    return image
