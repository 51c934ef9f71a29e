import json

import networkx as nx
import pytest

from corpus import K4_DOC, random_specs
from dualgrid import check_three_connected, parse_graph, platonic, random_graph
from dualgrid.errors import (
    AsymmetricRotation,
    EulerViolation,
    MalformedDocument,
    TooSmall,
    UnknownOuterFace,
)
from dualgrid.graph import PlanarGraph, faces_meet_properly, from_faces, trace_faces


def to_nx(g):
    return nx.Graph(g.edges())


def test_k4_counts():
    g = parse_graph(K4_DOC)
    assert (g.n_vertices, g.n_edges, len(g.faces)) == (4, 6, 4)
    assert all(len(f.boundary) == 3 for f in g.faces)


def test_parse_accepts_text_and_reversed_outer():
    doc = dict(K4_DOC, outer_face=["3", "2", "1"])
    g = parse_graph(json.dumps(doc))
    assert g.faces[g.outer_face_id].boundary in {("1", "2", "3"), ("2", "3", "1"), ("3", "1", "2")}


@pytest.mark.parametrize(
    "name,counts",
    [
        ("tetrahedron", (4, 6, 4)),
        ("cube", (8, 12, 6)),
        ("octahedron", (6, 12, 8)),
        ("dodecahedron", (20, 30, 12)),
        ("icosahedron", (12, 30, 20)),
    ],
)
def test_solid_counts(name, counts):
    g = platonic(name)
    assert (g.n_vertices, g.n_edges, len(g.faces)) == counts
    assert len({len(f.boundary) for f in g.faces}) == 1


def test_cube_faces_are_quads():
    assert [len(f.boundary) for f in platonic("cube").faces] == [4] * 6


def test_dodecahedron_faces_are_pentagons():
    assert [len(f.boundary) for f in platonic("dodecahedron").faces] == [5] * 12


def test_asymmetric_rotation():
    doc = json.loads(json.dumps(K4_DOC))
    doc["rotation"]["1"] = ["3", "4"]
    with pytest.raises(AsymmetricRotation):
        parse_graph(doc)


def test_euler_violation():
    # K4 with one rotation flipped is still symmetric but not planar as given
    doc = json.loads(json.dumps(K4_DOC))
    doc["rotation"]["4"] = ["1", "2", "3"]
    with pytest.raises(EulerViolation):
        parse_graph(doc)


def test_unknown_outer_face():
    with pytest.raises(UnknownOuterFace):
        parse_graph(dict(K4_DOC, outer_face=["1", "2", "5"]))


@pytest.mark.parametrize("doc", ["not json", "[]", "{}", '{"format": 2, "vertices": [], "rotation": {}, "outer_face": []}'])
def test_malformed(doc):
    with pytest.raises(MalformedDocument):
        parse_graph(doc)


def test_every_directed_edge_on_one_face():
    for spec in random_specs(20):
        g = random_graph(spec)
        seen = [e for f in g.faces for e in f.directed_edges()]
        assert len(seen) == len(set(seen)) == 2 * g.n_edges
        assert sum(len(f.boundary) for f in g.faces) == 2 * g.n_edges
        assert g.n_vertices - g.n_edges + len(g.faces) == 2


def test_trace_faces_deterministic():
    a = trace_faces(parse_graph(K4_DOC))
    b = trace_faces(parse_graph(json.dumps(K4_DOC)))
    assert a == b


def test_json_round_trip():
    g = platonic("icosahedron")
    h = parse_graph(json.dumps(g.to_json()))
    assert h.rotation == g.rotation and h.outer_face == g.outer_face


def test_three_connected_basics():
    assert check_three_connected(parse_graph(K4_DOC))
    assert check_three_connected(platonic("cube"))


def two_triangles() -> PlanarGraph:
    return from_faces([("a", "b", "c"), ("b", "a", "d"), ("a", "c", "b", "d")], ("a", "c", "b", "d"))


def test_two_triangles_not_three_connected():
    g = two_triangles()
    assert (g.n_vertices, g.n_edges) == (4, 5)
    assert not check_three_connected(g)
    assert not faces_meet_properly(g)


def test_too_small():
    g = from_faces([("a", "b", "c"), ("a", "c", "b")], ("a", "c", "b"))
    with pytest.raises(TooSmall):
        check_three_connected(g)


def test_three_connected_matches_networkx():
    # positive cases from the generator, negative ones by deleting edges freely
    checked = 0
    for spec in random_specs(40, hi=30):
        g = random_graph(spec)
        assert check_three_connected(g) == (nx.node_connectivity(to_nx(g)) >= 3)
        checked += 1
    for g in _weakened(12):
        assert check_three_connected(g) == (nx.node_connectivity(to_nx(g)) >= 3)
    assert checked == 40


def _weakened(count):
    from dualgrid import GenSpec

    out = []
    for seed in range(count):
        g = random_graph(GenSpec("triangulation", n=8 + seed, seed=seed))
        rot = {v: list(r) for v, r in g.rotation.items()}
        # strip edges at one vertex down to degree two (keeps an embedding)
        v = g.vertex_ids[seed % g.n_vertices]
        while len(rot[v]) > 2:
            w = rot[v].pop()
            rot[w].remove(v)
        out.append(PlanarGraph(g.vertex_ids, {k: tuple(x) for k, x in rot.items()}))
    return out


def test_weakened_graphs_are_rejected():
    assert not any(check_three_connected(g) for g in _weakened(6))
