"""Combinatorially embedded planar graphs.

A :class:`PlanarGraph` is a rotation system: for every vertex the cyclic,
counterclockwise order of its neighbours.  Faces are recovered by the usual
traversal: after arriving at ``v`` along ``u -> v`` the walk continues to the
neighbour that precedes ``u`` in the rotation of ``v`` (the next edge
clockwise).  With counterclockwise rotations this keeps the face on the left
of every traversed edge, so bounded faces come out counterclockwise and the
unbounded face comes out clockwise.

``outer_face`` is stored the way the traversal produces it, with the
unbounded face on the left of each edge (clockwise around the drawing).
Parsing also accepts the reversed cycle and normalises it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import (
    AsymmetricRotation,
    EulerViolation,
    MalformedDocument,
    TooSmall,
    UnknownOuterFace,
)

FORMAT_VERSION = 1


@dataclass(frozen=True)
class Face:
    id: int
    boundary: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.boundary)

    def directed_edges(self) -> list[tuple[str, str]]:
        b = self.boundary
        return [(b[i], b[(i + 1) % len(b)]) for i in range(len(b))]


@dataclass(frozen=True, eq=False)
class PlanarGraph:
    """Immutable rotation system with a designated outer face.

    Construction validates rotation symmetry, simplicity, Euler's formula
    and the outer face, so every instance in circulation is consistent.
    """

    vertex_ids: tuple[str, ...]
    rotation: Mapping[str, tuple[str, ...]]
    outer_face: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertex_ids", tuple(self.vertex_ids))
        object.__setattr__(
            self, "rotation", {v: tuple(self.rotation.get(v, ())) for v in self.vertex_ids}
        )
        _check_rotation(self.vertex_ids, self.rotation)
        faces = self.faces
        n_edges = self.n_edges
        euler = len(self.vertex_ids) - n_edges + len(faces)
        if euler != 2:
            raise EulerViolation(
                f"V - E + F = {euler}, expected 2",
                V=len(self.vertex_ids),
                E=n_edges,
                F=len(faces),
            )
        if self.outer_face:
            object.__setattr__(self, "outer_face", self._normalise_outer(tuple(self.outer_face)))

    # ------------------------------------------------------------------ faces

    @cached_property
    def faces(self) -> tuple[Face, ...]:
        return tuple(trace_faces(self))

    @cached_property
    def face_of_edge(self) -> dict[tuple[str, str], int]:
        """Directed edge -> id of the face lying to its left."""
        out = {}
        for f in self.faces:
            for e in f.directed_edges():
                out[e] = f.id
        return out

    @cached_property
    def outer_face_id(self) -> int:
        if not self.outer_face:
            raise UnknownOuterFace("graph has no designated outer face")
        return self.face_of_edge[(self.outer_face[0], self.outer_face[1])]

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_ids)

    @cached_property
    def n_edges(self) -> int:
        return sum(len(r) for r in self.rotation.values()) // 2

    def edges(self) -> list[tuple[str, str]]:
        """Undirected edges, each once, in vertex order."""
        order = {v: i for i, v in enumerate(self.vertex_ids)}
        return [
            (v, w)
            for v in self.vertex_ids
            for w in self.rotation[v]
            if order[v] < order[w]
        ]

    def neighbors(self, v: str) -> tuple[str, ...]:
        return self.rotation[v]

    def _normalise_outer(self, cycle: tuple[str, ...]) -> tuple[str, ...]:
        traced = {frozenset(f.boundary): f for f in self.faces}
        face = traced.get(frozenset(cycle))
        if face is not None and len(face.boundary) == len(cycle):
            if _same_cycle(cycle, face.boundary):
                return cycle
            if _same_cycle(cycle, tuple(reversed(face.boundary))):
                return _rotate_to(tuple(reversed(cycle)), cycle[0])
        raise UnknownOuterFace(
            "outer_face is not a face of the embedding", outer_face=list(cycle)
        )

    # ------------------------------------------------------------------- JSON

    def to_json(self) -> dict:
        return {
            "format": FORMAT_VERSION,
            "vertices": list(self.vertex_ids),
            "rotation": {v: list(self.rotation[v]) for v in self.vertex_ids},
            "outer_face": list(self.outer_face),
        }


def _same_cycle(a: Sequence[str], b: Sequence[str]) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    try:
        i = list(b).index(a[0])
    except ValueError:
        return False
    return all(a[k] == b[(i + k) % len(b)] for k in range(len(a)))


def _rotate_to(cycle: tuple[str, ...], start: str) -> tuple[str, ...]:
    i = cycle.index(start)
    return cycle[i:] + cycle[:i]


def _check_rotation(vertex_ids: tuple[str, ...], rotation: Mapping[str, tuple[str, ...]]) -> None:
    known = set(vertex_ids)
    if len(known) != len(vertex_ids):
        raise MalformedDocument("duplicate vertex identifiers")
    for v in vertex_ids:
        nbrs = rotation[v]
        if len(set(nbrs)) != len(nbrs):
            raise MalformedDocument(f"vertex {v!r} lists a neighbour twice", vertex=v)
        for w in nbrs:
            if w == v:
                raise MalformedDocument(f"loop at {v!r}", vertex=v)
            if w not in known:
                raise MalformedDocument(f"unknown neighbour {w!r} of {v!r}", vertex=v)
            if v not in rotation[w]:
                raise AsymmetricRotation(
                    f"{v!r} lists {w!r} but not vice versa", edge=[v, w]
                )


def trace_faces(g: PlanarGraph) -> list[Face]:
    """Walk every face of the rotation system once.

    Faces are numbered in the order their lowest directed edge is met when
    scanning vertices in ``vertex_ids`` order and each rotation from its start.
    """
    rotation = g.rotation
    pos = {v: {w: i for i, w in enumerate(nbrs)} for v, nbrs in rotation.items()}
    seen: set[tuple[str, str]] = set()
    faces: list[Face] = []
    for v0 in g.vertex_ids:
        for w0 in rotation[v0]:
            if (v0, w0) in seen:
                continue
            boundary = []
            a, b = v0, w0
            while (a, b) not in seen:
                seen.add((a, b))
                boundary.append(a)
                rb = rotation[b]
                a, b = b, rb[pos[b][a] - 1]
            faces.append(Face(len(faces), tuple(boundary)))
    return faces


# --------------------------------------------------------------- parsing

def parse_graph(document: str | bytes | Mapping) -> PlanarGraph:
    """Build a validated :class:`PlanarGraph` from the JSON graph format."""
    if isinstance(document, (str, bytes)):
        try:
            data = json.loads(document)
        except json.JSONDecodeError as exc:
            raise MalformedDocument(f"invalid JSON: {exc}") from exc
    else:
        data = document
    if not isinstance(data, Mapping):
        raise MalformedDocument("graph document must be a JSON object")
    fmt = data.get("format", FORMAT_VERSION)
    if fmt != FORMAT_VERSION:
        raise MalformedDocument(f"unsupported format version {fmt!r}")
    try:
        vertices = [str(v) for v in data["vertices"]]
        rotation = {str(k): tuple(str(x) for x in nbrs) for k, nbrs in data["rotation"].items()}
        outer = tuple(str(v) for v in data["outer_face"])
    except (KeyError, TypeError, AttributeError) as exc:
        raise MalformedDocument(f"missing or malformed field: {exc}") from exc
    extra = set(rotation) - set(vertices)
    if extra:
        raise MalformedDocument(f"rotation lists unknown vertices {sorted(extra)}")
    if len(outer) < 3:
        raise MalformedDocument("outer_face must have at least three vertices")
    return PlanarGraph(tuple(vertices), rotation, outer)


def from_faces(faces: Iterable[Sequence[str]], outer_face: Sequence[str]) -> PlanarGraph:
    """Build a rotation system from consistently oriented faces.

    Each face is given with the face on the left of its edges, i.e. bounded
    faces counterclockwise; ``outer_face`` follows the same rule.
    """
    succ: dict[str, dict[str, str]] = {}
    order: list[str] = []
    for face in faces:
        k = len(face)
        for i in range(k):
            x, v, y = face[i - 1], face[i], face[(i + 1) % k]
            # face (x -> v -> y): y precedes x in the rotation at v
            succ.setdefault(v, {})[y] = x
            if v not in order:
                order.append(v)
    rotation = {}
    for v, nxt in succ.items():
        start = next(iter(nxt))
        cyc = [start]
        while nxt[cyc[-1]] != start:
            cyc.append(nxt[cyc[-1]])
        if len(cyc) != len(nxt):
            raise MalformedDocument(f"faces around {v!r} do not close into one wheel")
        rotation[v] = tuple(cyc)
    return PlanarGraph(tuple(order), rotation, tuple(outer_face))


# --------------------------------------------------------------- connectivity

def _adjacency_indices(g: PlanarGraph) -> list[list[int]]:
    idx = {v: i for i, v in enumerate(g.vertex_ids)}
    return [[idx[w] for w in g.rotation[v]] for v in g.vertex_ids]


def articulation_points(adj: Sequence[Sequence[int]], removed: int = -1) -> tuple[set[int], bool]:
    """Cut vertices of the graph with vertex ``removed`` deleted.

    Returns ``(cut_vertices, connected)``.  Iterative Hopcroft-Tarjan lowpoint
    search so deep graphs do not hit the recursion limit.
    """
    n = len(adj)
    disc = [-1] * n
    low = [0] * n
    cuts: set[int] = set()
    root = 0 if removed != 0 else 1
    if root >= n:
        return cuts, True
    timer = 0
    disc[root] = low[root] = timer
    timer += 1
    root_children = 0
    stack = [(root, -1, iter(adj[root]))]
    while stack:
        v, parent, it = stack[-1]
        advanced = False
        for w in it:
            if w == removed:
                continue
            if disc[w] == -1:
                disc[w] = low[w] = timer
                timer += 1
                stack.append((w, v, iter(adj[w])))
                advanced = True
                break
            if w != parent:
                low[v] = min(low[v], disc[w])
        if advanced:
            continue
        stack.pop()
        if parent == -1:
            continue
        low[parent] = min(low[parent], low[v])
        if parent == root:
            root_children += 1
        elif low[v] >= disc[parent]:
            cuts.add(parent)
    if root_children > 1:
        cuts.add(root)
    expected = n - (1 if 0 <= removed < n else 0)
    return cuts, timer == expected


def check_three_connected(g: PlanarGraph) -> bool:
    """True iff deleting any two vertices leaves the graph connected.

    Every pair is covered: for each vertex ``x`` the cut vertices of
    ``G - x`` are exactly the partners ``y`` for which ``{x, y}`` separates.
    One lowpoint search per ``x`` answers all its pairs at once, so the cost is
    O(V * (V + E)), well inside the O(V^2 * (V + E)) of removing pairs one by
    one.  Meant for desk-scale inputs.
    """
    if g.n_vertices < 4:
        raise TooSmall(f"need at least 4 vertices, got {g.n_vertices}", V=g.n_vertices)
    adj = _adjacency_indices(g)
    cuts, connected = articulation_points(adj)
    if not connected or cuts:
        return False
    for x in range(len(adj)):
        cuts, connected = articulation_points(adj, removed=x)
        if not connected or cuts:
            return False
    return True


def faces_meet_properly(g: PlanarGraph, face_ids: Iterable[int] | None = None) -> bool:
    """Face-intersection test for 3-connectivity of a 2-connected embedding.

    A 2-connected plane graph other than a cycle is 3-connected iff any two
    face boundaries share nothing, one vertex, or one edge.  ``face_ids``
    restricts the test to pairs involving those faces.
    """
    faces = g.faces
    by_vertex: dict[str, list[int]] = {}
    for f in faces:
        if len(set(f.boundary)) != len(f.boundary):
            return False
        for v in f.boundary:
            by_vertex.setdefault(v, []).append(f.id)
    edge_sets = [
        {frozenset(e) for e in f.directed_edges()} for f in faces
    ]
    targets = range(len(faces)) if face_ids is None else face_ids
    for fid in targets:
        shared: dict[int, list[str]] = {}
        for v in faces[fid].boundary:
            for other in by_vertex[v]:
                if other != fid:
                    shared.setdefault(other, []).append(v)
        for other, common in shared.items():
            if len(common) > 2:
                return False
            if len(common) == 2:
                e = frozenset(common)
                if e not in edge_sets[fid] or e not in edge_sets[other]:
                    return False
    return True
