"""Symplectic connections on planar graphs.

A connection assigns to every edge a matrix in Sp(2n) for the edge's
canonical direction (low vertex id to high); the reverse direction is the
symplectic inverse -J M^T J.  Loop monodromy multiplies matrices right to
left along the traversal.

Included constructions: the identity connection, the Kasteleyn connection
(powers of J solved face by face over a dual spanning tree so every bounded
ccw face has monodromy J^(length-2)), flat annulus connections supported on
a ray cut, and +-1 spin connections flipping the monodromy sign around
selected faces.
"""

import json
from fractions import Fraction

import numpy as np

from .errors import (
    DegenerateGeometry,
    DimensionMismatch,
    InvalidCut,
    NonCommuting,
    NotOnCircle,
    NotSymplectic,
    NotUnitary,
)
from .linalg import (
    eye,
    is_symplectic,
    mat,
    mat_equal,
    symplectic_J,
    symplectic_inverse,
)
from .planar import Loop, cross
from .rings import format_scalar, parse_scalar


class Connection:
    def __init__(self, g, n, matrices, check=True, tol=1e-12):
        self.n = n
        self.matrices = {}
        for eid in g.edges:
            m = matrices[eid]
            m = np.asarray(m, dtype=object)
            if m.shape != (2 * n, 2 * n):
                raise DimensionMismatch(
                    "edge %d matrix has shape %r, expected %dx%d"
                    % (eid, m.shape, 2 * n, 2 * n))
            if check and not is_symplectic(m, tol=tol):
                raise NotSymplectic("edge %d matrix is not symplectic" % eid)
            self.matrices[eid] = m

    def canonical_tail(self, g, eid):
        e = g.edges[eid]
        return min(e.u, e.v)

    def phi(self, g, eid, tail):
        """Parallel transport along edge eid leaving the given vertex."""
        e = g.edges[eid]
        m = self.matrices[eid]
        if tail == min(e.u, e.v):
            return m
        if tail == max(e.u, e.v):
            return symplectic_inverse(m)
        raise DimensionMismatch("vertex %d is not an endpoint of edge %d"
                                % (tail, eid))

    def phi_dart(self, g, d):
        return self.phi(g, d[0], g.dart_tail(d))


def identity_connection(g, n=1):
    i = eye(2 * n)
    return Connection(g, n, {eid: i for eid in g.edges}, check=False)


def restrict_to_split(conn, g_split):
    """Connection on a split graph: copies inherit the parent matrix."""
    mats = {eid: conn.matrices[e.parent] for eid, e in g_split.edges.items()}
    return Connection(g_split, conn.n, mats, check=False)


def monodromy(g, conn, loop):
    m = eye(2 * conn.n)
    for d in loop.darts:
        m = conn.phi_dart(g, d) @ m
    return m


def gauge_transform(g, conn, gauges, tol=1e-12):
    """New connection with phi_uv replaced by g_v phi_uv g_u^-1."""
    for vid, gm in gauges.items():
        if not is_symplectic(np.asarray(gm, dtype=object), tol=tol):
            raise NotSymplectic("gauge at vertex %d is not symplectic" % vid)
    ident = eye(2 * conn.n)
    mats = {}
    for eid, e in g.edges.items():
        t, h = min(e.u, e.v), max(e.u, e.v)
        gt = np.asarray(gauges.get(t, ident), dtype=object)
        gh = np.asarray(gauges.get(h, ident), dtype=object)
        mats[eid] = gh @ conn.matrices[eid] @ symplectic_inverse(gt)
    return Connection(g, conn.n, mats, check=False)


def edgewise_product(g, c1, c2):
    """Edge by edge product of two connections; factors must commute."""
    if c1.n != c2.n:
        raise DimensionMismatch("connections have different ranks")
    mats = {}
    for eid in g.edges:
        a, b = c1.matrices[eid], c2.matrices[eid]
        ab, ba = a @ b, b @ a
        if not mat_equal(ab, ba, tol=1e-9):
            raise NonCommuting("matrices on edge %d do not commute" % eid)
        mats[eid] = ab
    return Connection(g, c1.n, mats, check=False)


def rotation_matrix(c, s):
    """2x2 rotation [[c, s], [-s, c]] for an exact point on the circle."""
    if isinstance(c, float) or isinstance(s, float):
        if abs(c * c + s * s - 1.0) > 1e-12:
            raise NotOnCircle("c^2 + s^2 != 1")
    elif Fraction(c) ** 2 + Fraction(s) ** 2 != 1:
        raise NotOnCircle("c^2 + s^2 != 1")
    return mat([[c, s], [-s, c]])


def unitary_embed(re_m, im_m, tol=1e-12):
    """Realify M = Re + i Im in U(n) as a 2n x 2n symplectic matrix."""
    re_m = np.asarray(re_m, dtype=object)
    im_m = np.asarray(im_m, dtype=object)
    if re_m.shape != im_m.shape or re_m.shape[0] != re_m.shape[1]:
        raise DimensionMismatch("real and imaginary parts must be square")
    n = re_m.shape[0]
    ident = eye(n)
    zero = ident - ident
    if not mat_equal(re_m.T @ re_m + im_m.T @ im_m, ident, tol=tol):
        raise NotUnitary("M*M != I")
    if not mat_equal(re_m.T @ im_m - im_m.T @ re_m, zero, tol=tol):
        raise NotUnitary("M*M != I")
    top = np.concatenate([re_m, im_m], axis=1)
    bot = np.concatenate([-im_m, re_m], axis=1)
    out = np.concatenate([top, bot], axis=0)
    j = symplectic_J(n)
    assert is_symplectic(out, tol=max(tol, 1e-9))
    assert mat_equal(out @ j, j @ out, tol=max(tol, 1e-9))
    return out


def j_power(n, k):
    j = symplectic_J(n)
    k %= 4
    if k == 0:
        return eye(2 * n)
    if k == 1:
        return j
    if k == 2:
        return -eye(2 * n)
    return -j


def face_loop(g, fidx):
    return Loop(g, g.faces[fidx])


def _dart_is_canonical(g, d):
    e = g.edges[d[0]]
    return g.dart_tail(d) == min(e.u, e.v)


def kasteleyn_connection(g, n=1):
    """Powers of J making every bounded ccw face have monodromy
    J^(length-2).  Exponents are solved leaf-to-root over a spanning tree
    of the dual graph rooted at the outer face; edges not crossed by the
    tree keep exponent zero."""
    outer = g.outer_face
    adj = {}
    for eid, (a, b) in g.dual_adjacency().items():
        if a != b:
            adj.setdefault(a, []).append((b, eid))
            adj.setdefault(b, []).append((a, eid))
    parent = {outer: None}
    order = [outer]
    queue = [outer]
    while queue:
        cur = queue.pop(0)
        for nxt, eid in sorted(adj.get(cur, ())):
            if nxt not in parent:
                parent[nxt] = (cur, eid)
                order.append(nxt)
                queue.append(nxt)
    expo = {eid: 0 for eid in g.edges}
    for f in reversed(order):
        if parent[f] is None:
            continue
        tree_eid = parent[f][1]
        total = 0
        coeff = 0
        for d in g.faces[f]:
            s = 1 if _dart_is_canonical(g, d) else -1
            if d[0] == tree_eid:
                coeff += s
            else:
                total += s * expo[d[0]]
        rhs = (len(g.faces[f]) - 2 - total) % 4
        expo[tree_eid] = (coeff * rhs) % 4
    conn = Connection(g, n, {eid: j_power(n, k) for eid, k in expo.items()},
                      check=False)
    conn.kasteleyn_exponents = expo
    for f in range(len(g.faces)):
        if f == outer:
            continue
        want = j_power(n, len(g.faces[f]) - 2)
        assert mat_equal(monodromy(g, conn, face_loop(g, f)), want), \
            "face %d monodromy is wrong" % f
    return conn


class AnnulusSpec:
    """A reference cut from the inner face to the outer face: the edges a
    straight ray crosses, each with the sign of the crossing."""

    def __init__(self, inner_face, cut):
        self.inner_face = inner_face
        self.cut = list(cut)

    def winding(self, g, loop):
        signs = dict(self.cut)
        total = 0
        for d in loop.darts:
            if d[0] in signs:
                total += signs[d[0]] if _dart_is_canonical(g, d) else -signs[d[0]]
        return total


def annulus_spec(g, inner_face):
    """Build the cut by shooting an exact ray from inside the inner face."""
    if inner_face == g.outer_face:
        raise InvalidCut("inner face must be a bounded face")
    p0 = g.face_interior_point(inner_face)
    x0, y0, x1, y1 = g.bounding_box()
    for k in range(40):
        p1 = (x1 + 3 + k * Fraction(5, 3),
              y1 + 2 + Fraction(1, 2) + k * Fraction(7, 11))
        try:
            cut = _ray_cut(g, p0, p1)
        except DegenerateGeometry:
            continue
        spec = AnnulusSpec(inner_face, cut)
        ok = True
        for f in range(len(g.faces)):
            w = spec.winding(g, face_loop(g, f))
            want = 1 if f == inner_face else (-1 if f == g.outer_face else 0)
            if w != want:
                ok = False
                break
        if ok:
            return spec
    raise InvalidCut("no valid reference ray found")


def _ray_cut(g, p0, p1):
    r = (p1[0] - p0[0], p1[1] - p0[1])
    cut = []
    for e in sorted(g.edges.values(), key=lambda e: e.id):
        lo, hi = min(e.u, e.v), max(e.u, e.v)
        a = g.vertices[lo].pos
        b = g.vertices[hi].pos
        o1 = cross(r, (a[0] - p0[0], a[1] - p0[1]))
        o2 = cross(r, (b[0] - p0[0], b[1] - p0[1]))
        w = (b[0] - a[0], b[1] - a[1])
        o3 = cross(w, (p0[0] - a[0], p0[1] - a[1]))
        o4 = cross(w, (p1[0] - a[0], p1[1] - a[1]))
        if 0 in (o1, o2, o3, o4):
            if (o1 * o2 <= 0 and o3 * o4 <= 0):
                raise DegenerateGeometry("ray touches edge %d" % e.id)
            continue
        if o1 * o2 < 0 and o3 * o4 < 0:
            cut.append((e.id, 1 if cross(r, w) > 0 else -1))
    return cut


def flat_annulus_connection(g, spec, m, n=1, tol=1e-12):
    """Identity off the cut; M^(crossing sign) on cut edges, so every loop
    has monodromy M^winding."""
    m = np.asarray(m, dtype=object)
    if m.shape != (2 * n, 2 * n):
        raise DimensionMismatch("monodromy matrix has the wrong size")
    if not is_symplectic(m, tol=tol):
        raise NotSymplectic("monodromy matrix is not symplectic")
    ident = eye(2 * n)
    minv = symplectic_inverse(m)
    mats = {eid: ident for eid in g.edges}
    for eid, s in spec.cut:
        mats[eid] = m if s == 1 else minv
    return Connection(g, n, mats, check=False)


def face_spin_connection(g, marked_faces, n=1):
    """A +-I connection whose monodromy is -I exactly around the marked
    faces.  An odd number of marks is completed by pairing the last one
    with the outer face."""
    marked = list(marked_faces)
    if len(marked) % 2:
        marked.append(g.outer_face)
    flip = {eid: 1 for eid in g.edges}
    for f1, f2 in zip(marked[::2], marked[1::2]):
        for eid in g.dual_path(f1, f2):
            flip[eid] = -flip[eid]
    ident = eye(2 * n)
    mats = {eid: (ident if s == 1 else -ident) for eid, s in flip.items()}
    conn = Connection(g, n, mats, check=False)
    conn.spin_flips = flip
    for f in range(len(g.faces)):
        if f == g.outer_face:
            continue
        mono = monodromy(g, conn, face_loop(g, f))
        want = -ident if marked.count(f) % 2 else ident
        assert mat_equal(mono, want), "spin monodromy wrong on face %d" % f
    return conn


# -- serialization -------------------------------------------------------


def connection_to_dict(g, conn):
    edges = []
    for eid in sorted(g.edges):
        m = conn.matrices[eid]
        edges.append({
            "id": eid,
            "matrix": [[format_scalar(x) for x in row] for row in m.tolist()],
        })
    return {"n": conn.n, "edges": edges}


def connection_from_dict(g, data, check=True):
    n = data["n"]
    mats = {}
    for entry in data["edges"]:
        rows = [[parse_scalar(x) for x in row] for row in entry["matrix"]]
        mats[entry["id"]] = mat(rows)
    return Connection(g, n, mats, check=check)


def load_connection(g, path, check=True):
    with open(path) as fh:
        return connection_from_dict(g, json.load(fh), check=check)


def save_connection(g, conn, path):
    with open(path, "w") as fh:
        json.dump(connection_to_dict(g, conn), fh, indent=1)
