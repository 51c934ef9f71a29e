import json

import networkx as nx
import pytest

from corpus import K4_DOC, random_specs
from dualgrid import build_quad, check_three_connected, parse_graph, platonic, random_graph, select_outer_quad
from dualgrid.errors import MalformedDocument, NotThreeConnected
from dualgrid.quad import indexed

from test_graph import two_triangles


def k4():
    return parse_graph(K4_DOC)


def test_k4_radial_is_cube():
    q = build_quad(k4())
    assert (q.n, q.graph.n_edges, len(q.graph.faces)) == (8, 12, 6)
    assert nx.is_isomorphic(nx.Graph(q.graph.edges()), nx.hypercube_graph(3))


@pytest.mark.parametrize("name,n", [("cube", 14), ("dodecahedron", 32), ("icosahedron", 32), ("octahedron", 14)])
def test_radial_sizes(name, n):
    q = build_quad(platonic(name))
    assert q.n == n
    assert q.graph.n_edges == 2 * n - 4
    assert len(q.graph.faces) == n - 2


def test_radial_invariants_on_random_graphs():
    for spec in random_specs(25, hi=30):
        g = random_graph(spec)
        q = build_quad(g)
        assert all(len(f.boundary) == 4 for f in q.graph.faces)
        assert q.n == g.n_vertices + len(g.faces)
        for a, b in q.graph.edges():
            assert q.is_primal(a) != q.is_primal(b)
        for f in g.faces:
            assert len(q.graph.rotation[f"f:{f.id}"]) == len(f.boundary)
        for pe in q.primal_edges:
            de = q.dual_edge_of[frozenset(pe)]
            assert set(q.primal_edge_of[frozenset(de)]) == set(pe)
        if g.n_vertices <= 15:
            assert check_three_connected(q.graph)


def test_radial_faces_are_edge_quads():
    g = platonic("cube")
    q = build_quad(g)
    for f in q.graph.faces:
        a, fa, b, fb = f.boundary
        if not q.is_primal(a):
            fa, b, fb, a = f.boundary
        assert (a[2:], b[2:]) in set(g.edges()) | {(y, x) for x, y in g.edges()}
        assert q.dual_edge_of[frozenset((a, b))] in {(fa, fb), (fb, fa)}


def test_k4_outer_quad():
    q = build_quad(k4())
    g = q.primal
    face_124 = next(f.id for f in g.faces if set(f.boundary) == {"1", "2", "4"})
    assert q.outer_quad == ("p:1", f"f:{g.outer_face_id}", "p:2", f"f:{face_124}")
    assert q.bent_edge == ("p:1", "p:2")


def test_dual_bend_same_quad():
    q = build_quad(k4())
    d = select_outer_quad(q, bend_on="dual")
    assert d.outer_quad == q.outer_quad
    assert set(d.bent_edge) == {q.outer_quad[1], q.outer_quad[3]}


def test_outer_quad_roles():
    for name in ("cube", "dodecahedron"):
        q = build_quad(platonic(name))
        u, v, w, w2 = q.outer_quad
        assert q.is_primal(u) and q.is_primal(w) and not q.is_primal(v) and not q.is_primal(w2)
        assert v == f"f:{q.primal.outer_face_id}"


def test_outer_edge_override():
    q = build_quad(platonic("cube"), outer_edge=("5", "3"))
    assert {q.outer_quad[0], q.outer_quad[2]} == {"p:3", "p:5"}
    with pytest.raises(MalformedDocument):
        build_quad(platonic("cube"), outer_edge=("0", "6"))


def test_rejects_two_connected():
    with pytest.raises(NotThreeConnected):
        build_quad(two_triangles())


def test_serialises_tags():
    doc = json.loads(build_quad(k4()).dumps())
    assert doc["tags"]["p:1"] == ["primal", "1"]
    assert len(doc["outer_quad"]) == 4


def test_indexed_view_tracks_roles():
    q = build_quad(k4())
    a = indexed(q)
    d = select_outer_quad(q, bend_on="dual")
    b = indexed(d)
    assert a.roles != b.roles
    assert [a.ids[i] for i in a.roles] == list(q.roles())
