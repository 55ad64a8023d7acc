"""Shared graph builders for the test suite.

Coordinates are in generic position: no horizontal edges, no three
collinear vertices along a face boundary.
"""

from fractions import Fraction

from spwebs import Edge, Loop, PlanarGraph, Vertex


def k4_2by3():
    return PlanarGraph(
        [Vertex(0, 0, 0), Vertex(1, 4, 1), Vertex(2, 2, 5), Vertex(3, 2, 2)],
        [Edge(0, 0, 1), Edge(1, 1, 2), Edge(2, 0, 2),
         Edge(3, 2, 3), Edge(4, 0, 3), Edge(5, 1, 3)])


def c4_ring():
    return PlanarGraph(
        [Vertex(0, 0, 0), Vertex(1, 10, 1), Vertex(2, 9, 11),
         Vertex(3, -1, 10)],
        [Edge(0, 0, 1), Edge(1, 1, 2), Edge(2, 2, 3), Edge(3, 3, 0)])


def cube_ring():
    return PlanarGraph(
        [Vertex(0, 0, 0), Vertex(1, 10, 1), Vertex(2, 9, 11),
         Vertex(3, -1, 10), Vertex(4, 3, 3), Vertex(5, 7, Fraction(7, 2)),
         Vertex(6, Fraction(13, 2), 8),
         Vertex(7, Fraction(5, 2), Fraction(15, 2))],
        [Edge(0, 0, 1), Edge(1, 1, 2), Edge(2, 2, 3), Edge(3, 3, 0),
         Edge(4, 4, 5), Edge(5, 5, 6), Edge(6, 6, 7), Edge(7, 7, 4),
         Edge(8, 0, 4), Edge(9, 1, 5), Edge(10, 2, 6), Edge(11, 3, 7)])


def pendant_square():
    return PlanarGraph(
        [Vertex(0, 0, 0), Vertex(1, 10, 1), Vertex(2, 9, 11),
         Vertex(3, -1, 10), Vertex(4, -3, -2), Vertex(5, 14, -1),
         Vertex(6, 13, 14), Vertex(7, -4, 13)],
        [Edge(0, 0, 1), Edge(1, 1, 2), Edge(2, 2, 3), Edge(3, 3, 0),
         Edge(4, 0, 4), Edge(5, 1, 5), Edge(6, 2, 6), Edge(7, 3, 7)])


def grid(rows, cols):
    vs = [Vertex(j * cols + i, 3 * i + j, 3 * j + i)
          for j in range(rows) for i in range(cols)]
    es, eid = [], 0
    for j in range(rows):
        for i in range(cols - 1):
            es.append(Edge(eid, j * cols + i, j * cols + i + 1))
            eid += 1
    for j in range(rows - 1):
        for i in range(cols):
            es.append(Edge(eid, j * cols + i, (j + 1) * cols + i))
            eid += 1
    return PlanarGraph(vs, es)


def cycle_graph(points):
    n = len(points)
    return PlanarGraph(
        [Vertex(i, x, y) for i, (x, y) in enumerate(points)],
        [Edge(i, i, (i + 1) % n) for i in range(n)])


def triangle():
    return cycle_graph([(0, 0), (7, 2), (3, 9)])


def inner_face(g, vids):
    for f in g.bounded_faces():
        if sorted(g.face_vertices(f)) == sorted(vids):
            return f
    raise LookupError(vids)


def simple_loops(g):
    adj = {}
    for e in g.edges.values():
        adj.setdefault(e.u, []).append((e.v, e.id))
        adj.setdefault(e.v, []).append((e.u, e.id))
    found = []

    def extend(path, eids):
        start, cur = path[0], path[-1]
        for nxt, eid in sorted(adj[cur]):
            if nxt == start and len(path) >= 3:
                if path[1] < path[-1]:
                    found.append((path[:], eids + [eid]))
            elif nxt > start and nxt not in path:
                extend(path + [nxt], eids + [eid])

    for v in sorted(g.vertices):
        extend([v], [])
    loops = []
    for vs, eids in found:
        darts = []
        for i, eid in enumerate(eids):
            e = g.edges[eid]
            darts.append((eid, 0) if e.u == vs[i] else (eid, 1))
        loops.append(Loop(g, darts))
    return loops
