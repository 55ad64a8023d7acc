"""Planar graphs with exact rational embeddings.

A graph is stored as a combinatorial map: each edge has two darts
(edge id, end) and every vertex carries a ccw cyclic list of outgoing
darts.  When positions are trusted the rotation is derived from them by
exact angular sort; graphs with parallel edges (e.g. produced by edge
splitting) are built from an explicit rotation instead.  Faces are the
orbits of the left-hand tracing rule, checked against Euler's formula.

All geometric predicates (angular order, point in polygon, areas) are
computed with Fractions; no floating point enters any decision.
"""

import functools
import json
from fractions import Fraction

from .errors import (
    DegenerateGeometry,
    HorizontalStep,
    NonGenericPosition,
    NonPlanarEmbedding,
    NotSimpleLoop,
)
from .rings import format_scalar, parse_scalar


class Vertex:
    __slots__ = ("id", "x", "y")

    def __init__(self, vid, x, y):
        self.id = vid
        self.x = Fraction(x)
        self.y = Fraction(y)

    @property
    def pos(self):
        return (self.x, self.y)

    def __repr__(self):
        return "Vertex(%d, %s, %s)" % (self.id, self.x, self.y)


class Edge:
    """parent tracks the original edge id for split copies."""

    __slots__ = ("id", "u", "v", "weight", "parent")

    def __init__(self, eid, u, v, weight=None, parent=None):
        self.id = eid
        self.u = u
        self.v = v
        self.weight = weight
        self.parent = eid if parent is None else parent

    def other(self, vid):
        return self.v if vid == self.u else self.u

    def __repr__(self):
        return "Edge(%d, %d-%d)" % (self.id, self.u, self.v)


def dart(eid, end):
    return (eid, end)


def cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def dot(a, b):
    return a[0] * b[0] + a[1] * b[1]


def _angular_class(d):
    """Cyclic class ccw from due west: west, south side, east, north side."""
    dx, dy = d
    if dy < 0:
        return 1
    if dy > 0:
        return 3
    return 0 if dx < 0 else 2


class PlanarGraph:
    def __init__(self, vertices, edges, rotation=None, outer_face=None):
        self.vertices = {v.id: v for v in vertices}
        self.edges = {e.id: e for e in edges}
        if len(self.vertices) != len(vertices) or len(self.edges) != len(edges):
            raise DegenerateGeometry("duplicate vertex or edge id")
        for e in edges:
            if e.u == e.v:
                raise DegenerateGeometry("self-loop on vertex %d" % e.u)
            if e.u not in self.vertices or e.v not in self.vertices:
                raise DegenerateGeometry("edge %d references unknown vertex" % e.id)
        if rotation is None:
            self.rotation = self._rotation_from_positions()
        else:
            self.rotation = {v: list(rotation.get(v, ())) for v in self.vertices}
            self._check_rotation()
        self.faces = self._trace_faces()
        self._check_euler()
        self.face_of_dart = {}
        for idx, cyc in enumerate(self.faces):
            for d in cyc:
                self.face_of_dart[d] = idx
        self._outer = outer_face
        if self._outer is None and rotation is None:
            self._outer = self._find_outer_face()

    # -- construction helpers -------------------------------------------

    def dart_tail(self, d):
        e = self.edges[d[0]]
        return e.u if d[1] == 0 else e.v

    def dart_head(self, d):
        e = self.edges[d[0]]
        return e.v if d[1] == 0 else e.u

    def dart_reverse(self, d):
        return (d[0], 1 - d[1])

    def dart_vector(self, d):
        t = self.vertices[self.dart_tail(d)]
        h = self.vertices[self.dart_head(d)]
        return (h.x - t.x, h.y - t.y)

    def _rotation_from_positions(self):
        pts = {}
        for v in self.vertices.values():
            if v.pos in pts:
                raise DegenerateGeometry(
                    "vertices %d and %d coincide" % (pts[v.pos], v.id))
            pts[v.pos] = v.id
        out = {v: [] for v in self.vertices}
        for e in self.edges.values():
            out[e.u].append((e.id, 0))
            out[e.v].append((e.id, 1))

        def cmp(d1, d2):
            a = self.dart_vector(d1)
            b = self.dart_vector(d2)
            ca, cb = _angular_class(a), _angular_class(b)
            if ca != cb:
                return -1 if ca < cb else 1
            c = cross(a, b)
            if c == 0:
                raise DegenerateGeometry(
                    "incident edges %d and %d share a direction" % (d1[0], d2[0]))
            return -1 if c > 0 else 1

        for v in out:
            out[v].sort(key=functools.cmp_to_key(cmp))
        return out

    def _check_rotation(self):
        seen = set()
        for v, darts in self.rotation.items():
            for d in darts:
                if d in seen:
                    raise DegenerateGeometry("dart %r listed twice" % (d,))
                seen.add(d)
                if self.dart_tail(d) != v:
                    raise DegenerateGeometry("dart %r not rooted at %d" % (d, v))
        if len(seen) != 2 * len(self.edges):
            raise DegenerateGeometry("rotation does not cover all darts")

    def rotation_next(self, d):
        """Next dart ccw around the tail of d."""
        lst = self.rotation[self.dart_tail(d)]
        i = lst.index(d)
        return lst[(i + 1) % len(lst)]

    def rotation_prev(self, d):
        """Next dart cw around the tail of d."""
        lst = self.rotation[self.dart_tail(d)]
        i = lst.index(d)
        return lst[(i - 1) % len(lst)]

    def _trace_faces(self):
        unused = set()
        for lst in self.rotation.values():
            unused.update(lst)
        faces = []
        while unused:
            start = min(unused)
            cyc = []
            d = start
            while True:
                cyc.append(d)
                unused.discard(d)
                # the face keeps its interior on the left: continue with the
                # dart one notch clockwise from the reversal
                d = self.rotation_prev(self.dart_reverse(d))
                if d == start:
                    break
            faces.append(cyc)
        # canonical order: rotate each cycle to start at its minimal dart
        canon = []
        for cyc in faces:
            i = cyc.index(min(cyc))
            canon.append(cyc[i:] + cyc[:i])
        canon.sort()
        return canon

    def _check_euler(self):
        """Each connected component must be a sphere embedding on its own.
        Disconnected graphs arise as supports of sub-webs."""
        root = {v: v for v in self.vertices}

        def find(a):
            while root[a] != a:
                root[a] = root[root[a]]
                a = root[a]
            return a

        for e in self.edges.values():
            root[find(e.u)] = find(e.v)
        nv = {}
        ne = {}
        nf = {}
        for v in self.vertices:
            nv[find(v)] = nv.get(find(v), 0) + 1
        for e in self.edges.values():
            ne[find(e.u)] = ne.get(find(e.u), 0) + 1
        for cyc in self.faces:
            c = find(self.dart_tail(cyc[0]))
            nf[c] = nf.get(c, 0) + 1
        for c, k in ne.items():
            if nv[c] - k + nf[c] != 2:
                raise NonPlanarEmbedding(
                    "Euler check failed on a component: V-E+F = %d-%d+%d != 2"
                    % (nv[c], k, nf[c]))

    def face_signed_area(self, idx):
        total = Fraction(0)
        for d in self.faces[idx]:
            t = self.vertices[self.dart_tail(d)]
            h = self.vertices[self.dart_head(d)]
            total += t.x * h.y - t.y * h.x
        return total / 2

    def _find_outer_face(self):
        if len(self.faces) == 1:
            return 0
        areas = [self.face_signed_area(i) for i in range(len(self.faces))]
        neg = [i for i, a in enumerate(areas) if a < 0]
        if len(neg) != 1:
            return None
        return neg[0]

    @property
    def outer_face(self):
        if self._outer is None:
            raise NonPlanarEmbedding("outer face is not known for this graph")
        return self._outer

    def bounded_faces(self):
        return [i for i in range(len(self.faces)) if i != self.outer_face]

    def face_length(self, idx):
        return len(self.faces[idx])

    def face_vertices(self, idx):
        return [self.dart_tail(d) for d in self.faces[idx]]

    def dual_adjacency(self):
        """edge id -> (face on side of dart (e,0), face on side of (e,1))."""
        out = {}
        for e in self.edges.values():
            out[e.id] = (self.face_of_dart[(e.id, 0)], self.face_of_dart[(e.id, 1)])
        return out

    def dual_path(self, f1, f2):
        """Primal edges crossed by a shortest dual path from face f1 to f2;
        dual self-loops (bridges) are never useful and are skipped."""
        if f1 == f2:
            return []
        adj = {}
        for eid, (a, b) in self.dual_adjacency().items():
            if a != b:
                adj.setdefault(a, []).append((b, eid))
                adj.setdefault(b, []).append((a, eid))
        prev = {f1: None}
        queue = [f1]
        while queue:
            cur = queue.pop(0)
            if cur == f2:
                break
            for nxt, eid in sorted(adj.get(cur, ())):
                if nxt not in prev:
                    prev[nxt] = (cur, eid)
                    queue.append(nxt)
        if f2 not in prev:
            raise NonPlanarEmbedding("dual graph is disconnected")
        path = []
        cur = f2
        while prev[cur] is not None:
            cur, eid = prev[cur]
            path.append(eid)
        return path[::-1]

    def incident_edges(self, vid):
        return [d[0] for d in self.rotation[vid]]

    def degree(self, vid):
        return len(self.rotation[vid])

    def bounding_box(self):
        xs = [v.x for v in self.vertices.values()]
        ys = [v.y for v in self.vertices.values()]
        return min(xs), min(ys), max(xs), max(ys)

    def outside_point(self):
        x0, y0, _, _ = self.bounding_box()
        return (x0 - Fraction(7, 3), y0 - Fraction(11, 5))

    def face_interior_point(self, idx):
        if idx == self.outer_face:
            return self.outside_point()
        walk = [self.vertices[v].pos for v in self.face_vertices(idx)]
        poly = _strip_spurs(walk)
        if len(poly) < 3:
            raise DegenerateGeometry("face %d has no interior" % idx)
        c = _centroid(poly)
        if _point_in_polygon_strict(c, poly):
            return c
        return _interior_point(poly)

    def __repr__(self):
        return "PlanarGraph(V=%d, E=%d, F=%d)" % (
            len(self.vertices), len(self.edges), len(self.faces))


def _strip_spurs(walk):
    """Remove backtracking spurs (u, v, u) from a closed walk."""
    pts = list(walk)
    changed = True
    while changed and len(pts) >= 3:
        changed = False
        n = len(pts)
        for i in range(n):
            if pts[(i - 1) % n] == pts[(i + 1) % n]:
                j = (i + 1) % n
                for k in sorted({i, j}, reverse=True):
                    pts.pop(k)
                changed = True
                break
    return pts


def _centroid(poly):
    n = len(poly)
    sx = sum(p[0] for p in poly)
    sy = sum(p[1] for p in poly)
    return (Fraction(sx, n), Fraction(sy, n))


def _on_segment(q, a, b):
    if cross((b[0] - a[0], b[1] - a[1]), (q[0] - a[0], q[1] - a[1])) != 0:
        return False
    return (min(a[0], b[0]) <= q[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= q[1] <= max(a[1], b[1]))


def _point_in_polygon_strict(q, poly):
    n = len(poly)
    for i in range(n):
        if _on_segment(q, poly[i], poly[(i + 1) % n]):
            return False
    inside = False
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        if (a[1] > q[1]) != (b[1] > q[1]):
            xint = a[0] + (q[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1])
            if q[0] < xint:
                inside = not inside
    return inside


def point_in_polygon(q, poly):
    """Strict interior test; raises if q lies on the boundary."""
    n = len(poly)
    for i in range(n):
        if _on_segment(q, poly[i], poly[(i + 1) % n]):
            raise DegenerateGeometry("query point on the polygon boundary")
    return _point_in_polygon_strict(q, poly)


def _interior_point(poly):
    """A point strictly inside a simple polygon (convex-corner method)."""
    n = len(poly)
    bi = min(range(n), key=lambda i: (poly[i][1], poly[i][0]))
    a, b, c = poly[(bi - 1) % n], poly[bi], poly[(bi + 1) % n]
    best = None
    best_d = None
    for i, p in enumerate(poly):
        if i in ((bi - 1) % n, bi, (bi + 1) % n):
            continue
        if _in_triangle(p, a, b, c):
            d = abs(cross((c[0] - a[0], c[1] - a[1]), (p[0] - a[0], p[1] - a[1])))
            if best_d is None or d > best_d:
                best, best_d = p, d
    if best is None:
        q = (Fraction(a[0] + b[0] + c[0], 3), Fraction(a[1] + b[1] + c[1], 3))
    else:
        q = (Fraction(b[0] + best[0], 2), Fraction(b[1] + best[1], 2))
    if not _point_in_polygon_strict(q, poly):
        raise DegenerateGeometry("failed to find an interior point")
    return q


def _in_triangle(p, a, b, c):
    d1 = cross((b[0] - a[0], b[1] - a[1]), (p[0] - a[0], p[1] - a[1]))
    d2 = cross((c[0] - b[0], c[1] - b[1]), (p[0] - b[0], p[1] - b[1]))
    d3 = cross((a[0] - c[0], a[1] - c[1]), (p[0] - c[0], p[1] - c[1]))
    neg = d1 < 0 or d2 < 0 or d3 < 0
    pos = d1 > 0 or d2 > 0 or d3 > 0
    return not (neg and pos)


class Structure:
    """Orientation plus cilia: per vertex a linear ccw dart order starting
    just after the cilium, per edge the dart pointing along the edge."""

    def __init__(self, order, orient):
        self.order = {v: list(ds) for v, ds in order.items()}
        self.orient = dict(orient)

    def tail(self, g, eid):
        return g.dart_tail(self.orient[eid])

    def head(self, g, eid):
        return g.dart_head(self.orient[eid])

    def copy(self):
        return Structure(self.order, self.orient)

    def __repr__(self):
        order = {v: tuple(ds) for v, ds in sorted(self.order.items())}
        orient = {e: d for e, d in sorted(self.orient.items())}
        return "Structure(order=%r, orient=%r)" % (order, orient)


def standard_structure(g):
    """Edges oriented upward by y, cilium due west at every vertex."""
    orient = {}
    for e in g.edges.values():
        yu, yv = g.vertices[e.u].y, g.vertices[e.v].y
        if yu == yv:
            raise NonGenericPosition("edge %d is horizontal" % e.id)
        orient[e.id] = (e.id, 0) if yu < yv else (e.id, 1)
    order = {}
    for v, darts in g.rotation.items():
        for d in darts:
            vec = g.dart_vector(d)
            if vec[1] == 0 and vec[0] < 0:
                raise NonGenericPosition(
                    "edge %d points due west from vertex %d" % (d[0], v))
        # rotation lists are sorted ccw starting from due west already,
        # so the cilium gap is before the first entry
        order[v] = list(darts)
    return Structure(order, orient)


def advance_cilium(s, v):
    """Move the cilium at v one notch ccw; returns (structure, crossed edge)."""
    out = s.copy()
    lst = out.order[v]
    crossed = lst[0][0]
    out.order[v] = lst[1:] + lst[:1]
    return out, crossed


def flip_edge_orientation(s, g, eid):
    out = s.copy()
    out.orient[eid] = g.dart_reverse(out.orient[eid])
    return out


class Loop:
    """A closed walk given by its darts; vertices are the dart tails."""

    def __init__(self, g, darts):
        if not darts:
            raise NotSimpleLoop("empty loop")
        for d1, d2 in zip(darts, darts[1:] + darts[:1]):
            if g.dart_head(d1) != g.dart_tail(d2):
                raise NotSimpleLoop("darts do not chain into a loop")
        self.darts = list(darts)
        self.vertices = [g.dart_tail(d) for d in darts]

    def __len__(self):
        return len(self.darts)

    def edge_ids(self):
        return [d[0] for d in self.darts]

    def is_simple(self):
        return len(set(self.vertices)) == len(self.vertices)

    def polygon(self, g):
        return [g.vertices[v].pos for v in self.vertices]

    def reversed(self, g):
        return Loop(g, [g.dart_reverse(d) for d in self.darts[::-1]])

    def rotated(self, g, k):
        return Loop(g, self.darts[k:] + self.darts[:k])


def loop_encloses_face(g, loop, fidx):
    """Exact point-in-polygon test of the face sample point."""
    if not loop.is_simple():
        raise NotSimpleLoop("area defined for simple loops only")
    return point_in_polygon(g.face_interior_point(fidx), loop.polygon(g))


def loop_area(g, loop):
    """Total area in triangles: each enclosed face counts length - 2."""
    total = 0
    for f in g.bounded_faces():
        if loop_encloses_face(g, loop, f):
            total += g.face_length(f) - 2
    return total


def vertices_enclosed(g, loop):
    """Vertices strictly inside the loop (loop vertices excluded)."""
    on_loop = set(loop.vertices)
    poly = loop.polygon(g)
    count = 0
    for v in g.vertices.values():
        if v.id in on_loop:
            continue
        if point_in_polygon(v.pos, poly):
            count += 1
    return count


def euler_area_check(g, loop):
    """Returns (area, length, enclosed vertices); area = L + 2V - 2 holds
    for simple loops in a planar embedding."""
    a = loop_area(g, loop)
    return a, len(loop), vertices_enclosed(g, loop)


def _wedge_contains(a, b, w):
    """Is w strictly inside the ccw wedge from a to b?"""
    c_ab = cross(a, b)
    if c_ab > 0:
        return cross(a, w) > 0 and cross(w, b) > 0
    if c_ab < 0:
        return cross(a, w) > 0 or cross(w, b) > 0
    if dot(a, b) < 0:
        return cross(a, w) > 0
    return cross(a, w) != 0 or dot(a, w) < 0


def cilia_parity(points):
    """For a closed polygonal path with no horizontal steps and a west
    cilium at every vertex, return (downward steps, cilia passed on the
    left, length).  These satisfy d = s + n + 1 (mod 2)."""
    n = len(points)
    if n < 2:
        raise NotSimpleLoop("need at least two points")
    steps = []
    for i in range(n):
        p, q = points[i], points[(i + 1) % n]
        v = (q[0] - p[0], q[1] - p[1])
        if v[1] == 0:
            raise HorizontalStep("step %d is horizontal" % i)
        steps.append(v)
    d = sum(1 for v in steps if v[1] < 0)
    west = (Fraction(-1), Fraction(0))
    s = 0
    for i in range(n):
        vin = steps[(i - 1) % n]
        vout = steps[i]
        if _wedge_contains(vout, (-vin[0], -vin[1]), west):
            s += 1
    return d, s, n


# -- serialization -------------------------------------------------------


def graph_to_dict(g):
    return {
        "vertices": [
            {"id": v.id, "x": format_scalar(v.x), "y": format_scalar(v.y)}
            for v in sorted(g.vertices.values(), key=lambda v: v.id)
        ],
        "edges": [
            {"id": e.id, "u": e.u, "v": e.v,
             **({"weight": format_scalar(e.weight)} if e.weight is not None else {})}
            for e in sorted(g.edges.values(), key=lambda e: e.id)
        ],
    }


def graph_from_dict(data):
    vertices = [Vertex(v["id"], Fraction(v["x"]), Fraction(v["y"]))
                for v in data["vertices"]]
    edges = []
    for e in data["edges"]:
        w = parse_scalar(e["weight"]) if "weight" in e else None
        edges.append(Edge(e["id"], e["u"], e["v"], weight=w))
    return PlanarGraph(vertices, edges)


def load_graph(path):
    with open(path) as fh:
        return graph_from_dict(json.load(fh))


def save_graph(g, path):
    with open(path, "w") as fh:
        json.dump(graph_to_dict(g), fh, indent=1)
