"""Test inputs: the five platonic solids and seeded random 3-connected graphs.

Random triangulations grow from K4 by dropping a vertex into a uniformly
chosen face and joining it to the three corners.  This does not sample
triangulations uniformly; it only has to exercise the drawing algorithm.
Sparsified graphs then delete random edges while the graph stays
3-connected, which produces faces longer than three and dual vertices of
higher degree.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Literal

from .errors import NotThreeConnected, UnknownSolid
from .graph import PlanarGraph, check_three_connected, faces_meet_properly

Kind = Literal["platonic", "triangulation", "sparsified"]

# Rotations are counterclockwise; outer faces are in traced orientation.
_SOLIDS: dict[str, tuple[dict[str, tuple[str, ...]], tuple[str, ...]]] = {
    "tetrahedron": (
        {"1": ("3", "4", "2"), "2": ("1", "4", "3"), "3": ("2", "4", "1"), "4": ("2", "1", "3")},
        ("1", "2", "3"),
    ),
    "cube": (
        {
            "0": ("3", "4", "1"), "1": ("7", "2", "0"), "2": ("6", "3", "1"),
            "3": ("5", "0", "2"), "4": ("7", "0", "5"), "5": ("6", "4", "3"),
            "6": ("5", "2", "7"), "7": ("6", "1", "4"),
        },
        ("0", "3", "5", "4"),
    ),
    "octahedron": (
        {
            "0": ("2", "4", "3", "1"), "1": ("3", "5", "2", "0"), "2": ("5", "4", "0", "1"),
            "3": ("5", "1", "0", "4"), "4": ("5", "3", "0", "2"), "5": ("4", "2", "1", "3"),
        },
        ("0", "2", "4"),
    ),
    "dodecahedron": (
        {
            "0": ("19", "10", "1"), "1": ("8", "2", "0"), "2": ("6", "3", "1"),
            "3": ("4", "19", "2"), "4": ("5", "17", "3"), "5": ("6", "15", "4"),
            "6": ("2", "7", "5"), "7": ("8", "14", "6"), "8": ("1", "9", "7"),
            "9": ("10", "13", "8"), "10": ("0", "11", "9"), "11": ("18", "12", "10"),
            "12": ("16", "13", "11"), "13": ("14", "9", "12"), "14": ("15", "7", "13"),
            "15": ("16", "5", "14"), "16": ("12", "17", "15"), "17": ("18", "4", "16"),
            "18": ("11", "19", "17"), "19": ("0", "3", "18"),
        },
        ("0", "19", "18", "11", "10"),
    ),
    "icosahedron": (
        {
            "0": ("8", "7", "11", "5", "1"), "1": ("5", "6", "2", "8", "0"),
            "2": ("6", "3", "9", "8", "1"), "3": ("6", "4", "10", "9", "2"),
            "4": ("6", "5", "11", "10", "3"), "5": ("6", "1", "0", "11", "4"),
            "6": ("4", "3", "2", "1", "5"), "7": ("0", "8", "9", "10", "11"),
            "8": ("0", "1", "2", "9", "7"), "9": ("2", "3", "10", "7", "8"),
            "10": ("3", "4", "11", "7", "9"), "11": ("0", "7", "10", "4", "5"),
        },
        ("0", "8", "7"),
    ),
}

SOLIDS = tuple(_SOLIDS)

# sparsified graphs up to this size are re-checked with the brute-force test
POSTCHECK_LIMIT = 200


@dataclass(frozen=True)
class GenSpec:
    kind: Kind
    n: int = 4
    seed: int = 0
    deletion_rate: float = 0.3
    name: str = ""

    def __post_init__(self) -> None:
        if self.kind not in ("platonic", "triangulation", "sparsified"):
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.kind != "platonic" and self.n < 4:
            raise ValueError("n must be at least 4")
        if not 0 <= self.deletion_rate < 1:
            raise ValueError("deletion_rate must lie in [0, 1)")


def platonic(name: str) -> PlanarGraph:
    try:
        rotation, outer = _SOLIDS[name]
    except KeyError:
        raise UnknownSolid(f"unknown solid {name!r}; choose from {', '.join(SOLIDS)}") from None
    vertices = tuple(sorted(rotation, key=int))
    return PlanarGraph(vertices, rotation, outer)


def random_graph(spec: GenSpec) -> PlanarGraph:
    if spec.kind == "platonic":
        return platonic(spec.name)
    rng = random.Random(spec.seed)
    rotation, outer = _triangulation(spec.n, rng)
    if spec.kind == "sparsified":
        rotation, outer = _sparsify(rotation, outer, spec.deletion_rate, rng)
    vertices = tuple(str(i) for i in range(spec.n))
    g = PlanarGraph(vertices, {str(k): tuple(map(str, v)) for k, v in rotation.items()},
                    tuple(map(str, outer)))
    if spec.kind == "sparsified" and spec.n <= POSTCHECK_LIMIT:
        ensure_three_connected(g)
    return g


def _triangulation(n: int, rng: random.Random) -> tuple[dict[int, list[int]], tuple[int, ...]]:
    base = platonic("tetrahedron")
    rotation = {int(v) - 1: [int(w) - 1 for w in base.rotation[v]] for v in base.vertex_ids}
    faces = [tuple(int(v) - 1 for v in f.boundary) for f in base.faces]
    outer_index = base.outer_face_id
    for x in range(4, n):
        i = rng.randrange(len(faces))
        a, b, c = faces[i]
        # face (a, b, c) sits in the wedge b -> c at a, c -> a at b, a -> b at c
        for p, nxt in ((a, c), (b, a), (c, b)):
            rot = rotation[p]
            rot.insert(rot.index(nxt), x)
        rotation[x] = [a, b, c]
        new = [(a, b, x), (b, c, x), (c, a, x)]
        faces[i] = new[0]
        faces.extend(new[1:])
        if i == outer_index:
            pick = rng.randrange(3)
            outer_index = i if pick == 0 else len(faces) - 3 + pick
    return rotation, faces[outer_index]


def _sparsify(
    rotation: dict[int, list[int]],
    outer: tuple[int, ...],
    rate: float,
    rng: random.Random,
) -> tuple[dict[int, list[int]], tuple[int, ...]]:
    edges = sorted((a, b) for a, nbrs in rotation.items() for b in nbrs if a < b)
    rng.shuffle(edges)
    budget = int(rate * len(edges))
    for a, b in edges:
        if budget <= 0:
            break
        if len(rotation[a]) <= 3 or len(rotation[b]) <= 3:
            continue
        trial = {k: list(v) for k, v in rotation.items()}
        trial[a].remove(b)
        trial[b].remove(a)
        g = _as_graph(trial)
        merged = _merged_face(g, a, b, rotation)
        if faces_meet_properly(g, [merged]):
            rotation = trial
            outer = _follow_outer(g, outer, a, b)
            budget -= 1
    return rotation, outer


def _as_graph(rotation: dict[int, list[int]]) -> PlanarGraph:
    return PlanarGraph(
        tuple(str(i) for i in sorted(rotation)),
        {str(k): tuple(map(str, v)) for k, v in rotation.items()},
    )


def _merged_face(g: PlanarGraph, a: int, b: int, old: dict[int, list[int]]) -> int:
    # the wedge at a from b's predecessor round to b's successor is now one face
    ra = old[a]
    pb = ra[ra.index(b) - 1]
    return g.face_of_edge[(str(a), str(pb))]


def _follow_outer(g: PlanarGraph, outer: tuple[int, ...], a: int, b: int) -> tuple[int, ...]:
    k = len(outer)
    for i in range(k):
        e = (outer[i], outer[(i + 1) % k])
        if {e[0], e[1]} != {a, b}:
            fid = g.face_of_edge[(str(e[0]), str(e[1]))]
            return tuple(int(x) for x in g.faces[fid].boundary)
    raise AssertionError("outer face vanished")


def ensure_three_connected(g: PlanarGraph) -> PlanarGraph:
    if not check_three_connected(g):
        raise NotThreeConnected("generated graph is not 3-connected")
    return g
