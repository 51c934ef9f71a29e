"""Radial (vertex-face incidence) graph of a primal embedding.

The radial graph has one vertex per primal vertex (``p:<id>``) and one per
primal face (``f:<face index>``); an edge joins a vertex to every face it lies
on.  Its faces are quadrilaterals ``(a, f_left, b, f_right)``, one per primal
edge ``ab``, and the diagonals of each quadrilateral are a primal edge and the
dual edge crossing it.

Rotations: around a primal vertex the face-vertices follow the cyclic order of
the faces around it; around a face-vertex the primal vertices follow the face
boundary.  That is the only choice keeping the radial graph planar.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Literal, Mapping

from .errors import MalformedDocument, NotThreeConnected
from .graph import FORMAT_VERSION, Face, PlanarGraph, check_three_connected

BendOn = Literal["primal", "dual"]

PRIMAL = "primal"
DUAL = "dual"


def primal_id(v: str) -> str:
    return f"p:{v}"


def dual_id(face_id: int) -> str:
    return f"f:{face_id}"


@dataclass(frozen=True, eq=False)
class QuadGraph:
    """Radial graph plus everything needed to read the two drawings back.

    ``outer_quad`` is ``(u, v, w, w')`` in drawing (counterclockwise) order:
    ``u, w`` primal, ``v`` the dual of the primal outer face and ``w'`` the dual
    of the face across the primal edge ``uw``.
    """

    graph: PlanarGraph
    primal: PlanarGraph
    tags: Mapping[str, tuple[str, str]]
    dual_edge_of: Mapping[frozenset, tuple[str, str]]
    primal_edge_of: Mapping[frozenset, tuple[str, str]]
    outer_quad: tuple[str, str, str, str]
    bend_on: BendOn = PRIMAL

    @property
    def n(self) -> int:
        return self.graph.n_vertices

    def is_primal(self, x: str) -> bool:
        return self.tags[x][0] == PRIMAL

    def roles(self) -> tuple[str, str, str, str]:
        """Outer quad rotated so the edge to bend is ``(roles[0], roles[2])``.

        Placement always puts ``roles[0]`` at the origin, ``roles[1]`` on the
        x axis and ``roles[3]`` last.  For a dual bend the other labeling
        assignment rotates the quad by one position.
        """
        u, v, w, w2 = self.outer_quad
        if self.bend_on == PRIMAL:
            return (u, v, w, w2)
        return (v, w, w2, u)

    @property
    def bent_edge(self) -> tuple[str, str]:
        r = self.roles()
        return (r[0], r[2])

    @cached_property
    def primal_edges(self) -> list[tuple[str, str]]:
        return [(primal_id(a), primal_id(b)) for a, b in self.primal.edges()]

    @cached_property
    def dual_edges(self) -> list[tuple[str, str]]:
        return [self.dual_edge_of[frozenset(e)] for e in self.primal_edges]

    @cached_property
    def primal_face_of_dual(self) -> dict[str, Face]:
        return {dual_id(f.id): f for f in self.primal.faces}

    @property
    def outer_dual(self) -> str:
        return self.outer_quad[1]

    def to_json(self) -> dict:
        doc = self.graph.to_json()
        doc["tags"] = {k: list(v) for k, v in self.tags.items()}
        doc["outer_quad"] = list(self.outer_quad)
        doc["bend_on"] = self.bend_on
        return doc

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def build_quad(
    g1: PlanarGraph,
    *,
    check: bool = True,
    bend_on: BendOn = PRIMAL,
    outer_edge: tuple[str, str] | None = None,
) -> QuadGraph:
    """Radial graph of ``g1`` with the default outer quad selected.

    ``check=False`` skips the brute-force 3-connectivity test, which is only
    affordable for small inputs.
    """
    if check and not check_three_connected(g1):
        raise NotThreeConnected("primal graph is not 3-connected")
    faces = g1.faces
    face_left = g1.face_of_edge
    rotation: dict[str, tuple[str, ...]] = {}
    tags: dict[str, tuple[str, str]] = {}
    order: list[str] = []
    for v in g1.vertex_ids:
        pv = primal_id(v)
        rotation[pv] = tuple(dual_id(face_left[(v, w)]) for w in g1.rotation[v])
        tags[pv] = (PRIMAL, v)
        order.append(pv)
    for f in faces:
        fv = dual_id(f.id)
        rotation[fv] = tuple(primal_id(x) for x in f.boundary)
        tags[fv] = (DUAL, str(f.id))
        order.append(fv)

    dual_edge_of: dict[frozenset, tuple[str, str]] = {}
    primal_edge_of: dict[frozenset, tuple[str, str]] = {}
    for a, b in g1.edges():
        fa, fb = dual_id(face_left[(a, b)]), dual_id(face_left[(b, a)])
        pe = (primal_id(a), primal_id(b))
        dual_edge_of[frozenset(pe)] = (fa, fb)
        primal_edge_of[frozenset((fa, fb))] = pe

    quad = _select(g1, outer_edge)
    graph = PlanarGraph(tuple(order), rotation, _traced_outer(quad))
    return QuadGraph(graph, g1, tags, dual_edge_of, primal_edge_of, quad, bend_on)


def _select(g1: PlanarGraph, outer_edge: tuple[str, str] | None) -> tuple[str, str, str, str]:
    outer = g1.outer_face
    k = len(outer)
    along = [(outer[i], outer[(i + 1) % k]) for i in range(k)]
    if outer_edge is None:
        u, w = min(along, key=lambda e: tuple(sorted(e)))
    else:
        a, b = outer_edge
        if (a, b) in along:
            u, w = a, b
        elif (b, a) in along:
            u, w = b, a
        else:
            raise MalformedDocument(
                f"({a!r}, {b!r}) is not an edge of the outer face", edge=[a, b]
            )
    face_left = g1.face_of_edge
    # u -> w follows the traced outer face, which lies on its left
    outer_id = face_left[(u, w)]
    inner_id = face_left[(w, u)]
    return (primal_id(u), dual_id(outer_id), primal_id(w), dual_id(inner_id))


def _traced_outer(quad: tuple[str, str, str, str]) -> tuple[str, str, str, str]:
    u, v, w, w2 = quad
    return (u, w2, w, v)


def select_outer_quad(
    q: QuadGraph,
    g1_outer: Face | None = None,
    bend_on: BendOn = PRIMAL,
    outer_edge: tuple[str, str] | None = None,
) -> QuadGraph:
    """Re-pick the primal edge ``uw`` on the outer face and which edge bends.

    The default edge is the lexicographically least endpoint pair of the
    outer face.  ``g1_outer`` must be the primal outer face if given.
    """
    if bend_on not in (PRIMAL, DUAL):
        raise ValueError(f"bend_on must be 'primal' or 'dual', got {bend_on!r}")
    if g1_outer is not None and g1_outer.id != q.primal.outer_face_id:
        raise ValueError("g1_outer is not the outer face of the primal graph")
    quad = _select(q.primal, outer_edge)
    graph = q.graph
    if quad != q.outer_quad:
        graph = PlanarGraph(graph.vertex_ids, graph.rotation, _traced_outer(quad))
    return replace(q, graph=graph, outer_quad=quad, bend_on=bend_on)



@dataclass(frozen=True, eq=False)
class Indexed:
    """Integer view of a QuadGraph used by the linear-time passes.

    Vertices are numbered in sorted identifier order, so comparing indices
    compares identifiers.  ``face_at[v][i]`` is the inner face lying in the
    wedge from ``adj[v][i]`` counterclockwise to ``adj[v][i + 1]`` (``-1`` for
    the outer face).
    """

    ids: list[str]
    index: dict[str, int]
    adj: list[list[int]]
    pos: list[dict[int, int]]
    faces: list[tuple[int, int, int, int]]
    faces_of: list[list[int]]
    face_at: list[list[int]]
    roles: tuple[int, int, int, int]


def indexed(q: QuadGraph) -> Indexed:
    cached = q.__dict__.get("_indexed")
    if cached is not None and cached.roles == tuple(cached.index[r] for r in q.roles()):
        return cached
    g = q.graph
    ids = sorted(g.vertex_ids)
    index = {v: i for i, v in enumerate(ids)}
    adj = [[index[w] for w in g.rotation[v]] for v in ids]
    pos = [{w: i for i, w in enumerate(nbrs)} for nbrs in adj]
    outer = g.outer_face_id
    faces: list[tuple[int, int, int, int]] = []
    face_num: dict[int, int] = {}
    for f in g.faces:
        if f.id == outer:
            continue
        face_num[f.id] = len(faces)
        faces.append(tuple(index[x] for x in f.boundary))  # type: ignore[arg-type]
    faces_of: list[list[int]] = [[] for _ in ids]
    for fid, vs in enumerate(faces):
        for x in vs:
            faces_of[x].append(fid)
    face_left = g.face_of_edge
    face_at = [
        [face_num.get(face_left[(v, w)], -1) for w in g.rotation[v]] for v in ids
    ]
    roles = tuple(index[r] for r in q.roles())
    ix = Indexed(ids, index, adj, pos, faces, faces_of, face_at, roles)  # type: ignore[arg-type]
    q.__dict__["_indexed"] = ix
    return ix
