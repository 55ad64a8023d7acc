"""Multiwebs: edge multiplicity assignments of constant vertex degree 2n.

A rank-n multiweb puts a multiplicity 0..2n on every edge so that the
multiplicities around each vertex sum to 2n.  Rank-1 multiwebs with all
multiplicities at most 1 are dimer covers (perfect matchings).

Splitting replaces each edge of multiplicity k by k parallel copies,
nested so the copies do not cross; the split graph is 2n-regular and the
statistical overcount is the product of the multiplicity factorials.
"""

import itertools
import json
from math import factorial

from .errors import MalformedWeb
from .planar import Edge, Loop, PlanarGraph, Structure


class Multiweb:
    __slots__ = ("n", "mult")

    def __init__(self, n, mult):
        self.n = n
        self.mult = {eid: k for eid, k in mult.items() if k != 0}

    def __getitem__(self, eid):
        return self.mult.get(eid, 0)

    def __eq__(self, other):
        return (isinstance(other, Multiweb) and self.n == other.n
                and self.mult == other.mult)

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.mult.items()))))

    def __repr__(self):
        inner = ", ".join("%d: %d" % it for it in sorted(self.mult.items()))
        return "Multiweb(n=%d, {%s})" % (self.n, inner)

    def support(self):
        return sorted(self.mult)

    def degree(self, g, vid):
        return sum(self.mult.get(eid, 0) for eid in g.incident_edges(vid))

    def weight(self, g):
        """Product of edge weights with multiplicity."""
        total = None
        for eid, k in sorted(self.mult.items()):
            w = g.edges[eid].weight ** k
            total = w if total is None else total * w
        return 1 if total is None else total

    def split_factor(self):
        out = 1
        for k in self.mult.values():
            out *= factorial(k)
        return out

    def is_simple(self):
        return all(k == 1 for k in self.mult.values())


def check_multiweb(g, m):
    for eid, k in m.mult.items():
        if eid not in g.edges:
            raise MalformedWeb("multiplicity on unknown edge %d" % eid)
        if not 0 <= k <= 2 * m.n:
            raise MalformedWeb("multiplicity %d out of range on edge %d"
                               % (k, eid))
    for vid in g.vertices:
        d = m.degree(g, vid)
        if d != 2 * m.n:
            raise MalformedWeb("vertex %d has degree %d, expected %d"
                               % (vid, d, 2 * m.n))
    return m


def _enumerate_regular(g, target, cap):
    """All maps edge -> 0..cap with every vertex degree equal to target."""
    eids = sorted(g.edges)
    need = {v: target for v in g.vertices}
    remaining = {v: len(g.incident_edges(v)) for v in g.vertices}
    out = []
    mult = {}

    def rec(i):
        if i == len(eids):
            out.append(dict(mult))
            return
        e = g.edges[eids[i]]
        u, v = e.u, e.v
        lo = max(0, need[u] - cap * (remaining[u] - 1),
                 need[v] - cap * (remaining[v] - 1))
        hi = min(cap, need[u], need[v])
        remaining[u] -= 1
        remaining[v] -= 1
        for k in range(lo, hi + 1):
            need[u] -= k
            need[v] -= k
            mult[eids[i]] = k
            rec(i + 1)
            del mult[eids[i]]
            need[u] += k
            need[v] += k
        remaining[u] += 1
        remaining[v] += 1

    rec(0)
    return out


def enumerate_multiwebs(g, n):
    return [Multiweb(n, m) for m in _enumerate_regular(g, 2 * n, 2 * n)]


def enumerate_dimers(g):
    """Perfect matchings, as rank-1/2 multiplicity maps edge -> 0/1."""
    return [{e: k for e, k in m.items() if k}
            for m in _enumerate_regular(g, 1, 1)]


def superpose(g, dimers):
    """Union of 2n dimer covers as a rank-n multiweb."""
    if len(dimers) % 2:
        raise MalformedWeb("need an even number of dimer covers")
    mult = {}
    for d in dimers:
        for eid, k in d.items():
            mult[eid] = mult.get(eid, 0) + k
    return check_multiweb(g, Multiweb(len(dimers) // 2, mult))


def superposition(g, d1, d2):
    """Union of two dimer covers: a 2-multiweb whose loops alternate
    between the covers and so have even length."""
    return superpose(g, [d1, d2])


class LoopDecomposition:
    """A 2-multiweb as disjoint simple loops plus doubled edges."""

    def __init__(self, loops, doubled):
        self.loops = loops
        self.doubled = list(doubled)

    @property
    def c1(self):
        return len(self.doubled)

    @property
    def c2(self):
        return len(self.loops)

    def loop_lengths(self):
        return [len(l.darts) for l in self.loops]


def decompose_2multiweb(g, m):
    """Split a rank-1 multiweb into its doubled edges and simple loops."""
    if m.n != 1:
        raise MalformedWeb("decomposition needs rank 1, got %d" % m.n)
    check_multiweb(g, m)
    doubled = sorted(e for e, k in m.mult.items() if k == 2)
    singles = {e for e, k in m.mult.items() if k == 1}
    loops = []
    unused = set(singles)
    while unused:
        e0 = g.edges[min(unused)]
        d = (e0.id, 0 if e0.u == min(e0.u, e0.v) else 1)
        darts = []
        while True:
            darts.append(d)
            unused.discard(d[0])
            h = g.dart_head(d)
            nxt = [e for e in g.incident_edges(h)
                   if e in singles and e != d[0]]
            if len(nxt) != 1:
                raise MalformedWeb("loop branches at vertex %d" % h)
            e2 = g.edges[nxt[0]]
            d = (e2.id, 0 if e2.u == h else 1)
            if d[0] == darts[0][0]:
                break
        loops.append(Loop(g, darts))
    return LoopDecomposition(loops, doubled)


def split_simple(g, m, structure=None):
    """Replace each edge by m_e nested parallel copies.

    Zero edges drop out of the graph but the cyclic order of the remaining
    darts is inherited from g, never re-derived from positions.  Copies
    keep the parent's id in Edge.parent.  Returns (graph, structure) where
    the structure is None when none was given.
    """
    check_multiweb(g, m)
    copies = {}
    new_edges = []
    counter = 0
    for eid in sorted(g.edges):
        k = m[eid]
        if k == 0:
            continue
        e = g.edges[eid]
        ids = []
        for _ in range(k):
            new_edges.append(Edge(counter, e.u, e.v, e.weight, parent=eid))
            ids.append(counter)
            counter += 1
        copies[eid] = ids

    if structure is not None:
        tail_of = {eid: structure.tail(g, eid) for eid in g.edges}
    else:
        tail_of = {eid: min(e.u, e.v) for eid, e in g.edges.items()}

    def expand(darts, vid):
        out = []
        for d in darts:
            ids = copies.get(d[0])
            if ids is None:
                continue
            block = [(cid, d[1]) for cid in ids]
            # copies fan out from the tail in list order and close up at
            # the head in reverse, so equal-index arcs nest
            if vid != tail_of[d[0]]:
                block.reverse()
            out.extend(block)
        return out

    rotation = {v: expand(g.rotation[v], v) for v in g.vertices}
    keep = {v for v in g.vertices}
    g2 = PlanarGraph([g.vertices[v] for v in sorted(keep)], new_edges,
                     rotation=rotation)

    s2 = None
    if structure is not None:
        order = {v: expand(structure.order[v], v) for v in g.vertices}
        orient = {}
        for eid, ids in copies.items():
            end = 0 if g.edges[eid].u == tail_of[eid] else 1
            for cid in ids:
                orient[cid] = (cid, end)
        s2 = Structure(order, orient)
    return g2, s2


def two_web_components(g):
    """Cycles of a 2-regular graph, each a closed dart walk.

    Walks start at the lowest unused edge id, leaving its canonical tail.
    A length-2 walk over two copies of one parent edge is a doubled edge;
    everything else is a loop.  Returns (loops, doubled) with doubled as
    (eid, eid) pairs.
    """
    for v in g.vertices:
        if g.degree(v) != 2:
            raise MalformedWeb("vertex %d has degree %d, expected 2"
                               % (v, g.degree(v)))
    unused = set(g.edges)
    loops = []
    doubled = []
    while unused:
        eid = min(unused)
        e = g.edges[eid]
        d = (eid, 0 if e.u == min(e.u, e.v) else 1)
        walk = []
        while True:
            walk.append(d)
            unused.discard(d[0])
            head = g.dart_head(d)
            nxt = [x for x in g.rotation[head] if x[0] != d[0]]
            if len(nxt) != 1:
                raise MalformedWeb("walk branched at vertex %d" % head)
            d = nxt[0]
            if d[0] == walk[0][0]:
                break
        if (len(walk) == 2
                and g.edges[walk[0][0]].parent == g.edges[walk[1][0]].parent
                and walk[0][0] != walk[1][0]):
            doubled.append((walk[0][0], walk[1][0]))
        else:
            loops.append(walk)
    return loops, doubled


def decompositions_into_2webs(g, m):
    """Ordered splittings of a rank-n multiweb into n 2-multiwebs.

    Each part takes multiplicity 0..2 per edge, degree 2 at every vertex,
    and the parts sum to m.  Swapping two distinct parts gives a different
    decomposition.
    """
    check_multiweb(g, m)
    n = m.n
    eids = sorted(g.edges)
    need = [{v: 2 for v in g.vertices} for _ in range(n)]
    vectors = {}
    for k in range(2 * n + 1):
        vectors[k] = [v for v in itertools.product(range(3), repeat=n)
                      if sum(v) == k]
    out = []
    parts = [{} for _ in range(n)]

    def rec(i):
        if i == len(eids):
            out.append(tuple(Multiweb(1, dict(p)) for p in parts))
            return
        e = g.edges[eids[i]]
        for vec in vectors[m[e.id]]:
            if any(vec[c] > need[c][e.u] or vec[c] > need[c][e.v]
                   for c in range(n)):
                continue
            for c in range(n):
                need[c][e.u] -= vec[c]
                need[c][e.v] -= vec[c]
                parts[c][e.id] = vec[c]
            rec(i + 1)
            for c in range(n):
                need[c][e.u] += vec[c]
                need[c][e.v] += vec[c]
                del parts[c][e.id]

    rec(0)
    return out


# -- serialization -------------------------------------------------------


def multiweb_to_dict(m):
    return {"n": m.n, "m": {str(eid): k for eid, k in sorted(m.mult.items())}}


def multiweb_from_dict(data):
    return Multiweb(data["n"], {int(e): int(k) for e, k in data["m"].items()})


def load_multiweb(path):
    with open(path) as fh:
        return multiweb_from_dict(json.load(fh))


def save_multiweb(m, path):
    with open(path, "w") as fh:
        json.dump(multiweb_to_dict(m), fh, indent=1)
