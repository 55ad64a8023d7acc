import pytest

from helpers import c4_ring, grid, k4_2by3, triangle
from spwebs.errors import MalformedWeb
from spwebs.webs import (Multiweb, check_multiweb, decompose_2multiweb,
                         decompositions_into_2webs, enumerate_dimers,
                         enumerate_multiwebs, load_multiweb,
                         multiweb_from_dict, multiweb_to_dict, save_multiweb,
                         superposition)

GOLDEN = Multiweb(2, {0: 2, 1: 1, 2: 1, 3: 2, 4: 1, 5: 1})


def test_dimers_k4():
    assert sorted(sorted(d) for d in enumerate_dimers(k4_2by3())) == \
        [[0, 3], [1, 4], [2, 5]]


def test_dimers_odd_graph():
    assert enumerate_dimers(triangle()) == []


def test_multiwebs_counts():
    assert len(enumerate_multiwebs(c4_ring(), 1)) == 3
    assert len(enumerate_multiwebs(triangle(), 1)) == 1
    webs = enumerate_multiwebs(k4_2by3(), 2)
    assert any(m.mult == GOLDEN.mult for m in webs)


def test_multiweb_degree_rule():
    g = k4_2by3()
    for m in enumerate_multiwebs(g, 2):
        deg = {v: 0 for v in g.vertices}
        for eid, k in m.mult.items():
            deg[g.edges[eid].u] += k
            deg[g.edges[eid].v] += k
        assert all(d == 4 for d in deg.values())


def test_check_multiweb_rejects_bad_degree():
    g = c4_ring()
    with pytest.raises(MalformedWeb):
        check_multiweb(g, Multiweb(1, {0: 1}))


def test_superposition_is_rank_one():
    g = k4_2by3()
    d1, d2 = enumerate_dimers(g)[:2]
    m = superposition(g, d1, d2)
    assert m.n == 1
    check_multiweb(g, m)


def test_decompose_2multiweb():
    g = k4_2by3()
    dec = decompose_2multiweb(g, superposition(g, {0: 1, 3: 1}, {1: 1, 4: 1}))
    used = set(dec.doubled)
    for loop in dec.loops:
        used |= set(loop.edge_ids())
    assert used == {0, 1, 3, 4}
    assert set(dec.doubled) == set()
    assert len(dec.loops) == 1


def test_decompose_doubled_edges():
    g = c4_ring()
    dec = decompose_2multiweb(g, Multiweb(1, {0: 2, 2: 2}))
    assert sorted(dec.doubled) == [0, 2]
    assert dec.loops == []


def test_golden_web_has_four_decompositions():
    assert len(decompositions_into_2webs(k4_2by3(), GOLDEN)) == 4


def test_multiweb_round_trip(tmp_path):
    path = tmp_path / "web.json"
    save_multiweb(GOLDEN, path)
    m = load_multiweb(path)
    assert m.n == 2 and m.mult == GOLDEN.mult
    assert multiweb_from_dict(multiweb_to_dict(GOLDEN)).mult == GOLDEN.mult


def test_multiweb_getitem_default():
    assert GOLDEN[0] == 2 and GOLDEN[1] == 1
    m = Multiweb(1, {0: 1, 2: 1})
    assert m[1] == 0


def test_grid_dimers():
    assert len(enumerate_dimers(grid(2, 3))) == 3
