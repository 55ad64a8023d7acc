"""Trace evaluations for multiwebs under symplectic connections.

A simple 2n-web carries a codeterminant tensor at each vertex (legs in ccw
order from the cilium) and the tensors contract along each oriented edge
u -> v through J times the transport from v back to u, the tail color
indexing the row:

    factor(e) = (J phi_vu)[color at u][color at v]

Writing phi_vu (and not phi_uv) is what makes the row transform under the
gauge group at u and the column at v, so the contraction against the
vertex tensors is gauge invariant.  With J = [[0, I], [-I, 0]] and the
identity connection the factor gives +1 to a tail color i < n paired with
head color i+n, matching the signed-coloring definition of the trace.
Non-simple webs are split first and the result divided by the product of
multiplicity factorials.

The same index convention fills the blocks of the big antisymmetric matrix
H, so the Pfaffian pairing terms are exactly the per-edge factors here.
"""

import itertools
from fractions import Fraction

import numpy as np

from .connections import restrict_to_split
from .errors import DimensionMismatch, NotBipartite, WrongRank
from .linalg import all_pairings, det, perm_sign, symplectic_J
from .planar import Structure, standard_structure
from .rings import Poly
from .webs import check_multiweb, decompose_2multiweb, split_simple


def _div_factor(x, k):
    if k == 1:
        return x
    if isinstance(x, Poly):
        return x * Fraction(1, k)
    if isinstance(x, float):
        return x / k
    return Fraction(x) / k


def _edge_matrix(g, conn, eid, dart):
    """J times the transport from the head of dart back to its tail."""
    j = symplectic_J(conn.n)
    return j @ conn.phi(g, eid, g.dart_head(dart))


def _split(g, conn, m, structure):
    check_multiweb(g, m)
    s = structure if structure is not None else standard_structure(g)
    gs, ss = split_simple(g, m, s)
    return gs, ss, restrict_to_split(conn, gs)


def codeterminant(n):
    """Signed permutation tensor: entry at an index tuple is the signature
    when the tuple is a permutation of 0..2n-1, zero (absent) otherwise."""
    return {p: perm_sign(p) for p in itertools.permutations(range(2 * n))}


def trace_coloring(g, conn, m, structure=None):
    """Trace as the signed sum over half-edge colorings."""
    gs, ss, cs = _split(g, conn, m, structure)
    emat = {eid: _edge_matrix(gs, cs, eid, ss.orient[eid])
            for eid in gs.edges}
    return _div_factor(_trace_coloring_simple(gs, ss, cs.n, emat),
                       m.split_factor())


def _trace_coloring_simple(g, s, n, emat):
    """Signed coloring sum over a simple web.  emat maps edge id to the
    matrix contracted as emat[tail color][head color] along the structure
    orientation."""
    n2 = 2 * n
    vids = sorted(g.vertices)
    vpos = {v: i for i, v in enumerate(vids)}
    slot = {}
    for v in vids:
        if len(s.order[v]) != n2:
            raise WrongRank("vertex %d has degree %d, expected %d"
                            % (v, len(s.order[v]), n2))
        for i, d in enumerate(s.order[v]):
            slot[d] = i
    # per vertex: edges completed once this vertex gets its colors
    ready = {v: [] for v in vids}
    for eid in g.edges:
        d = s.orient[eid]
        t, h = g.dart_tail(d), g.dart_head(d)
        later = t if vpos[t] > vpos[h] else h
        ready[later].append((eid, t, h, slot[d], slot[g.dart_reverse(d)]))
    perms = list(itertools.permutations(range(n2)))
    signs = {p: perm_sign(p) for p in perms}
    color = {}
    total = 0

    def rec(i, acc):
        nonlocal total
        if i == len(vids):
            total = total + acc
            return
        v = vids[i]
        for p in perms:
            color[v] = p
            term = acc * signs[p]
            ok = True
            for eid, t, h, st, sh in ready[v]:
                f = emat[eid][color[t][st], color[h][sh]]
                if not f:
                    ok = False
                    break
                term = term * f
            if ok:
                rec(i + 1, term)
        del color[v]

    rec(0, 1)
    return total


def trace_contraction(g, conn, m, structure=None):
    """Trace by contracting vertex codeterminants along edges."""
    gs, ss, cs = _split(g, conn, m, structure)
    emat = {eid: _edge_matrix(gs, cs, eid, ss.orient[eid])
            for eid in gs.edges}
    return _div_factor(_trace_contraction_simple(gs, ss, cs.n, emat),
                       m.split_factor())


def _trace_contraction_simple(g, s, n, emat):
    n2 = 2 * n
    base = codeterminant(n)
    clusters = {}
    owner = {}
    for v in sorted(g.vertices):
        if len(s.order[v]) != n2:
            raise WrongRank("vertex %d has degree %d, expected %d"
                            % (v, len(s.order[v]), n2))
        legs = list(s.order[v])
        clusters[v] = (legs, dict(base))
        for d in legs:
            owner[d] = v
    scalar = 1

    def cost(eid):
        d = s.orient[eid]
        c1, c2 = owner[d], owner[g.dart_reverse(d)]
        if c1 == c2:
            return len(clusters[c1][0]) - 2
        return len(clusters[c1][0]) + len(clusters[c2][0]) - 2

    pending = sorted(g.edges)
    while pending:
        eid = min(pending, key=lambda e: (cost(e), e))
        pending.remove(eid)
        d = s.orient[eid]
        rd = g.dart_reverse(d)
        mat = emat[eid]
        c1, c2 = owner[d], owner[rd]
        legs1, t1 = clusters[c1]
        if c1 == c2:
            p, q = legs1.index(d), legs1.index(rd)
            legs = [x for k, x in enumerate(legs1) if k not in (p, q)]
            out = {}
            for idx, coef in t1.items():
                f = mat[idx[p], idx[q]]
                if not f:
                    continue
                key = tuple(x for k, x in enumerate(idx) if k not in (p, q))
                out[key] = out.get(key, 0) + coef * f
        else:
            legs2, t2 = clusters[c2]
            p, q = legs1.index(d), legs2.index(rd)
            legs = ([x for k, x in enumerate(legs1) if k != p]
                    + [x for k, x in enumerate(legs2) if k != q])
            byq = {}
            for idx, coef in t2.items():
                byq.setdefault(idx[q], []).append(
                    (tuple(x for k, x in enumerate(idx) if k != q), coef))
            out = {}
            for idx, coef in t1.items():
                rest1 = tuple(x for k, x in enumerate(idx) if k != p)
                for b in range(n2):
                    f = mat[idx[p], b]
                    if not f:
                        continue
                    for rest2, coef2 in byq.get(b, ()):
                        key = rest1 + rest2
                        out[key] = out.get(key, 0) + coef * coef2 * f
            del clusters[c2]
        if legs:
            clusters[c1] = (legs, out)
            for x in legs:
                owner[x] = c1
        else:
            scalar = scalar * out.get((), 0)
            del clusters[c1]
    assert not clusters, "legs left uncontracted"
    return scalar


def trace_sp2_loops(g, conn, m, structure=None):
    """Rank-1 trace from the loop decomposition: each doubled edge is a
    factor -1, each loop a factor (-1)^(L+d) tr(monodromy) where d counts
    the deviations of the structure from the position in which the loop
    contraction telescopes: edges oriented against the traversal, plus
    vertices whose two loop darts sit in (outgoing, incoming) cilium order.
    Monodromy traces do not depend on the traversal direction."""
    if conn.n != 1 or m.n != 1:
        raise WrongRank("loop-decomposition trace needs rank 1")
    s = structure if structure is not None else standard_structure(g)
    dec = decompose_2multiweb(g, m)
    total = 1 if dec.c1 % 2 == 0 else -1
    for loop in dec.loops:
        mono = _loop_monodromy(g, conn, loop)
        d = 0
        prev = loop.darts[-1]
        for dart in loop.darts:
            if s.orient[dart[0]] != dart:
                d += 1
            v = g.dart_tail(dart)
            inc = g.dart_reverse(prev)
            for x in s.order[v]:
                if x == dart:
                    d += 1
                    break
                if x == inc:
                    break
            prev = dart
        t = mono[0, 0] + mono[1, 1]
        total = total * (t if (len(loop.darts) + d) % 2 == 0 else -t)
    return total


def _loop_monodromy(g, conn, loop):
    out = np.asarray([[1, 0], [0, 1]], dtype=object)
    for d in loop.darts:
        out = conn.phi(g, d[0], g.dart_tail(d)) @ out
    return out


def trace_identity_colorings(g, m, structure=None):
    """Identity-connection trace as a signed count of colorings with
    complementary colors across each edge."""
    s = structure if structure is not None else standard_structure(g)
    gs, ss = split_simple(g, m, s)
    n = m.n
    n2 = 2 * n
    slot = {}
    for v in gs.vertices:
        if len(ss.order[v]) != n2:
            raise WrongRank("vertex %d has degree %d, expected %d"
                            % (v, len(ss.order[v]), n2))
        for i, d in enumerate(ss.order[v]):
            slot[d] = i
    eids = sorted(gs.edges)
    colors = {v: [None] * n2 for v in gs.vertices}
    used = {v: set() for v in gs.vertices}
    total = 0

    def rec(i, sign):
        nonlocal total
        if i == len(eids):
            vertex_sign = 1
            for v in gs.vertices:
                vertex_sign *= perm_sign(tuple(colors[v]))
            total += sign * vertex_sign
            return
        eid = eids[i]
        d = ss.orient[eid]
        t, h = gs.dart_tail(d), gs.dart_head(d)
        st, sh = slot[d], slot[gs.dart_reverse(d)]
        for a in range(n2):
            b = (a + n) % n2
            if a in used[t] or b in used[h]:
                continue
            used[t].add(a)
            used[h].add(b)
            colors[t][st] = a
            colors[h][sh] = b
            rec(i + 1, sign if a < n else -sign)
            used[t].discard(a)
            used[h].discard(b)

    rec(0, 1)
    return _div_factor(total, m.split_factor())


def bipartite_parts(g):
    """Two-color the vertices; black is the part with the lowest id."""
    color = {}
    for start in sorted(g.vertices):
        if start in color:
            continue
        color[start] = 0
        queue = [start]
        while queue:
            v = queue.pop(0)
            for eid in g.incident_edges(v):
                e = g.edges[eid]
                w = e.v if e.u == v else e.u
                if w in color:
                    if color[w] == color[v]:
                        raise NotBipartite("odd cycle through edge %d" % eid)
                else:
                    color[w] = 1 - color[v]
                    queue.append(w)
    black = {v for v, c in color.items() if c == 0}
    white = set(g.vertices) - black
    return black, white


def bipartite_structure(g):
    """Standard cilia, edges oriented black to white."""
    black, _ = bipartite_parts(g)
    s = standard_structure(g)
    orient = {}
    for eid, e in g.edges.items():
        d = s.orient[eid]
        if g.dart_tail(d) in black:
            orient[eid] = d
        else:
            orient[eid] = g.dart_reverse(d)
    return Structure(s.order, orient)


def trace_sl_bipartite(g, conn, m, structure=None):
    """SL(2n)-style trace: same contraction without the J on each edge.
    On a bipartite graph with black-to-white orientation this agrees with
    the symplectic trace up to one global sign for the whole graph."""
    bipartite_parts(g)
    s = structure if structure is not None else bipartite_structure(g)
    gs, ss, cs = _split(g, conn, m, s)
    emat = {eid: cs.phi(gs, eid, gs.dart_head(ss.orient[eid]))
            for eid in gs.edges}
    return _div_factor(_trace_coloring_simple(gs, ss, cs.n, emat),
                       m.split_factor())


# -- pointwise vertex evaluations ----------------------------------------


def crossing_count(pairing):
    k = 0
    pairs = list(pairing)
    for (i1, j1), (i2, j2) in itertools.combinations(pairs, 2):
        if i1 < i2 < j1 < j2 or i2 < i1 < j2 < j1:
            k += 1
    return k


def det_vertex(vectors):
    """Crossing-signed pairing sum: sum over pairings alpha of
    (-1)^(K_alpha + n(n+1)/2) prod_k v_{j_k} . (J v_{i_k})."""
    vs = [np.asarray(v, dtype=object).reshape(-1) for v in vectors]
    if len(vs) % 2:
        raise DimensionMismatch("need an even number of vectors")
    n = len(vs) // 2
    if any(v.shape[0] != 2 * n for v in vs):
        raise DimensionMismatch("vectors must have dimension 2n")
    j = symplectic_J(n)
    jv = [j @ v for v in vs]
    base = (n * (n + 1)) // 2
    total = 0
    for alpha in all_pairings(list(range(2 * n))):
        term = 1
        for i, jj in alpha:
            term = term * sum(vs[jj][k] * jv[i][k] for k in range(2 * n))
        if (crossing_count(alpha) + base) % 2:
            term = -term
        total = total + term
    return total


def wedge_norm(vectors):
    """Determinant of the matrix with the given columns."""
    vs = [np.asarray(v, dtype=object).reshape(-1) for v in vectors]
    d = len(vs)
    if any(v.shape[0] != d for v in vs):
        raise DimensionMismatch("need k vectors of dimension k")
    mat = np.empty((d, d), dtype=object)
    for c, v in enumerate(vs):
        for r in range(d):
            mat[r, c] = v[r]
    return det(mat)


def qdet(a, q):
    """Inversion-signed determinant: sum over permutations of
    (-q)^inv(sigma) prod a[i][sigma(i)]."""
    a = np.asarray(a, dtype=object)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch("matrix must be square")
    k = a.shape[0]
    total = 0
    for p in itertools.permutations(range(k)):
        inv = sum(1 for x in range(k) for y in range(x + 1, k)
                  if p[x] > p[y])
        term = (-q) ** inv
        for i in range(k):
            term = term * a[i, p[i]]
        total = total + term
    return total
