import math
import random
from fractions import Fraction

import numpy as np
import pytest

from helpers import c4_ring, cube_ring, inner_face, k4_2by3, pendant_square, simple_loops
from spwebs.connections import (Connection, annulus_spec, edgewise_product,
                                face_loop, face_spin_connection,
                                flat_annulus_connection, gauge_transform,
                                identity_connection, j_power,
                                kasteleyn_connection, load_connection,
                                monodromy, rotation_matrix, save_connection,
                                unitary_embed)
from spwebs.errors import NonCommuting, NotOnCircle, NotSymplectic, NotUnitary
from spwebs.linalg import eye, is_symplectic, mat, mat_equal, symplectic_J
from spwebs.rand import random_connection, random_gauges


def test_identity_monodromy():
    g = k4_2by3()
    conn = identity_connection(g, 1)
    for loop in simple_loops(g):
        assert mat_equal(monodromy(g, conn, loop), eye(2))


def test_kasteleyn_matrices_are_j_powers():
    g = c4_ring()
    conn = kasteleyn_connection(g, 1)
    j = symplectic_J(1)
    for eid in g.edges:
        m = conn.phi(g, eid, g.edges[eid].u)
        assert any(mat_equal(m, np.linalg.matrix_power(np.array(
            j.tolist(), dtype=object), k)) for k in range(4))


def test_j_power():
    assert mat_equal(j_power(1, 2), -eye(2))
    assert mat_equal(j_power(2, 4), eye(4))


def test_connection_rejects_non_symplectic():
    g = c4_ring()
    mats = {eid: eye(2) for eid in g.edges}
    mats[0] = mat([[Fraction(1), Fraction(1)], [Fraction(1), Fraction(1)]])
    with pytest.raises(NotSymplectic):
        Connection(g, 1, mats)


def test_phi_inverse_in_reverse_direction():
    rnd = random.Random(21)
    g = k4_2by3()
    conn = random_connection(g, rnd, 1)
    for eid, e in g.edges.items():
        forth = conn.phi(g, eid, e.u)
        back = conn.phi(g, eid, e.v)
        assert mat_equal(forth @ back, eye(2))


def test_gauge_trace_invariance():
    rnd = random.Random(22)
    g = k4_2by3()
    conn = random_connection(g, rnd, 1)
    conn2 = gauge_transform(g, conn, random_gauges(g, rnd, 1))
    for loop in simple_loops(g):
        assert np.trace(monodromy(g, conn, loop)) == \
            np.trace(monodromy(g, conn2, loop))


def test_connection_round_trip(tmp_path):
    rnd = random.Random(23)
    g = k4_2by3()
    conn = random_connection(g, rnd, 2)
    path = tmp_path / "conn.json"
    save_connection(g, conn, path)
    conn2 = load_connection(g, path)
    for eid, e in g.edges.items():
        assert mat_equal(conn2.phi(g, eid, e.u), conn.phi(g, eid, e.u))


def test_edgewise_product():
    g = cube_ring()
    c1 = kasteleyn_connection(g, 1)
    c2 = face_spin_connection(g, list(g.bounded_faces()[:2]))
    prod = edgewise_product(g, c1, c2)
    for eid, e in g.edges.items():
        assert mat_equal(prod.phi(g, eid, e.u),
                         c1.phi(g, eid, e.u) @ c2.phi(g, eid, e.u))


def test_edgewise_product_requires_commuting_factors():
    rnd = random.Random(24)
    g = c4_ring()
    with pytest.raises(NonCommuting):
        edgewise_product(g, random_connection(g, rnd, 1),
                         random_connection(g, rnd, 1))


def test_face_spin_connection_flips_dual_path():
    g = cube_ring()
    f1, f2 = g.bounded_faces()[0], g.bounded_faces()[2]
    conn = face_spin_connection(g, [f1, f2])
    flipped = set(g.dual_path(f1, f2))
    for eid, e in g.edges.items():
        want = -eye(2) if eid in flipped else eye(2)
        assert mat_equal(conn.phi(g, eid, e.u), want)


def test_annulus_spec_windings():
    g = cube_ring()
    f_in = inner_face(g, [4, 5, 6, 7])
    spec = annulus_spec(g, f_in)
    assert len(spec.cut) == 2
    for f in range(len(g.faces)):
        w = spec.winding(g, face_loop(g, f))
        if f == f_in:
            assert w == 1
        elif f == g.outer_face:
            assert w == -1
        else:
            assert w == 0


def test_flat_annulus_connection():
    g = pendant_square()
    spec = annulus_spec(g, inner_face(g, [0, 1, 2, 3]))
    twist = mat([[Fraction(-1), Fraction(0)], [Fraction(0), Fraction(-1)]])
    conn = flat_annulus_connection(g, spec, twist)
    for f in g.bounded_faces():
        loop = face_loop(g, f)
        want = twist if spec.winding(g, loop) == 1 else eye(2)
        assert mat_equal(monodromy(g, conn, loop), want)


def test_rotation_matrix_checks_circle():
    m = rotation_matrix(Fraction(3, 5), Fraction(4, 5))
    assert is_symplectic(m)
    with pytest.raises(NotOnCircle):
        rotation_matrix(Fraction(1), Fraction(1))


def test_unitary_embed():
    re = mat([[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]])
    im = mat([[Fraction(0), Fraction(0)], [Fraction(0), Fraction(0)]])
    assert mat_equal(unitary_embed(re, im), eye(4))
    th = 0.73
    re = np.array([[math.cos(th), 0.0], [0.0, math.cos(th)]], dtype=object)
    im = np.array([[math.sin(th), 0.0], [0.0, -math.sin(th)]], dtype=object)
    assert is_symplectic(unitary_embed(re, im), tol=1e-12)
    with pytest.raises(NotUnitary):
        unitary_embed(mat([[Fraction(2), Fraction(0)],
                           [Fraction(0), Fraction(2)]]), im * 0)
