"""Grid placement of a labeled quadrangulation.

Groups are placed one at a time on top of the current outer path
``c_1 = u, ..., c_r = v``.  Each frontier vertex carries an under-set, the
placed vertices that must travel with it whenever it is shifted right.
Under-sets are kept as a forest: a vertex's set is itself plus the sets of its
children, so absorbing ``U(c_i)`` into ``U(g)`` makes ``c_i`` a child of ``g``
while ``U(c_i)`` itself stays addressable.

This module holds the reference engine, which moves every affected vertex
explicitly (quadratic worst case), plus the shared finalisation step.  The
linear-time engine lives in :mod:`dualgrid.offset`; both must yield the same
coordinates.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Callable, Literal, Mapping

from .errors import (
    BadGroupShape,
    CoordinateOverflow,
    InvariantViolation,
    MalformedDocument,
    OuterShapeViolation,
    RepairDivergence,
)
from .labeling import CanonicalLabeling
from .quad import QuadGraph

Engine = Literal["reference", "offset"]
DEGENERACY_TYPES = ("d1", "d2", "d3", "d4")
_COORD_LIMIT = 2**63 - 1


@dataclass
class GridDrawing:
    """Integer coordinates for every radial-graph vertex plus the bend."""

    coords: dict[str, tuple[int, int]]
    n: int
    bend_edge: tuple[str, str] | None = None
    bend_point: tuple[int, int] | None = None
    degeneracies: dict[str, int] = field(default_factory=lambda: dict.fromkeys(DEGENERACY_TYPES, 0))
    outer_quad: tuple[str, str, str, str] | None = None
    bend_on: str = "primal"

    @property
    def total_degeneracies(self) -> int:
        return sum(self.degeneracies.values())

    def roles(self) -> tuple[str, str, str, str]:
        assert self.outer_quad is not None
        u, v, w, w2 = self.outer_quad
        return (u, v, w, w2) if self.bend_on == "primal" else (v, w, w2, u)

    @property
    def width_before_finalize(self) -> int:
        # finalisation moves v one unit right and the whole drawing one unit right
        return self.coords[self.roles()[1]][0] - 2

    def to_json(self) -> dict:
        doc: dict[str, Any] = {
            "format": 1,
            "n": self.n,
            "coords": {k: list(self.coords[k]) for k in sorted(self.coords)},
            "degeneracies": {k: self.degeneracies.get(k, 0) for k in DEGENERACY_TYPES},
        }
        if self.bend_edge is not None and self.bend_point is not None:
            doc["bend"] = {"edge": list(self.bend_edge), "point": list(self.bend_point)}
        if self.outer_quad is not None:
            doc["outer_quad"] = list(self.outer_quad)
            doc["bend_on"] = self.bend_on
        return doc

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, doc: str | Mapping) -> "GridDrawing":
        data = json.loads(doc) if isinstance(doc, str) else doc
        try:
            coords = {str(k): (int(p[0]), int(p[1])) for k, p in data["coords"].items()}
            bend = data.get("bend")
            return cls(
                coords=coords,
                n=int(data["n"]),
                bend_edge=tuple(bend["edge"]) if bend else None,  # type: ignore[arg-type]
                bend_point=tuple(bend["point"]) if bend else None,  # type: ignore[arg-type]
                degeneracies={k: int(data.get("degeneracies", {}).get(k, 0)) for k in DEGENERACY_TYPES},
                outer_quad=tuple(data["outer_quad"]) if data.get("outer_quad") else None,  # type: ignore[arg-type]
                bend_on=data.get("bend_on", "primal"),
            )
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise MalformedDocument(f"bad drawing document: {exc}") from exc


@dataclass
class Frontier:
    """Outer path of the placed part and the under-set forest."""

    cycle: list[str]
    children: dict[str, list[str]]
    pending: dict[str, int]
    delta: Mapping[str, int]

    def under(self, g: str) -> list[str]:
        out = []
        stack = [g]
        while stack:
            x = stack.pop()
            out.append(x)
            stack.extend(self.children.get(x, ()))
        return out

    def snapshot(self, coords: Mapping[str, tuple[int, int]] | Mapping[str, list[int]], k: int, m: int) -> dict:
        return {
            "k": k,
            "m": m,
            "frontier": [
                [c, coords[c][0], coords[c][1], self.delta[c], self.pending[c]]
                for c in self.cycle
            ],
        }


# ----------------------------------------------------------------- the steps

def init_first_quad(
    q: QuadGraph, labeling: CanonicalLabeling
) -> tuple[Frontier, dict[str, list[int]]]:
    """Place groups 1 and 2: ``u=(0,0)``, ``v=(3,0)``, then ``(1,1)``, ``(2,1)``."""
    groups = labeling.groups
    if len(groups) < 3 or len(groups[0]) != 2 or len(groups[1]) != 2:
        raise BadGroupShape("groups 1 and 2 must each hold two vertices")
    u, v, _, _ = q.roles()
    if set(groups[0]) != {u, v}:
        raise BadGroupShape("group 1 must be the base edge of the outer quad", group=list(groups[0]))
    rotation = q.graph.rotation
    a, b = groups[1]
    if a not in rotation[u]:
        a, b = b, a
    if a not in rotation[u] or b not in rotation[v]:
        raise BadGroupShape("group 2 does not close the first quadrilateral", group=list(groups[1]))
    coords = {u: [0, 0], v: [3, 0], a: [1, 1], b: [2, 1]}
    pending = {x: len(rotation[x]) for x in rotation}
    for z in (u, v, a, b):
        for y in rotation[z]:
            pending[y] -= 1
    frontier = Frontier([u, a, b, v], {}, pending, labeling.delta)
    return frontier, coords


def low(frontier: Frontier, coords: Mapping[str, Any], i: int, j: int) -> int:
    """Index of whichever of ``c_i, c_j`` was labeled first; ties go left."""
    ci, cj = frontier.cycle[i], frontier.cycle[j]
    di, dj = frontier.delta[ci], frontier.delta[cj]
    if di != dj:
        return i if di < dj else j
    return i if coords[ci][0] < coords[cj][0] else j


def update_under(
    frontier: Frontier, coords: Mapping[str, Any], p: int, q: int, group: tuple[str, ...]
) -> None:
    """Absorb the under-sets of the vertices about to be covered.

    Pairs leave every set unchanged.
    """
    if len(group) != 1:
        return
    cyc = frontier.cycle
    ch = frontier.children
    left = low(frontier, coords, p, p + 1)
    right = low(frontier, coords, q - 2, q - 1)
    if left == p + 1:
        ch.setdefault(cyc[p], []).append(cyc[p + 1])
    if right == q - 2:
        ch.setdefault(cyc[q], []).append(cyc[q - 1])
    ch.setdefault(group[0], []).extend(cyc[left + 1 : right + 1])


def shift_right(frontier: Frontier, coords: Mapping[str, list[int]], j: int, s: int) -> None:
    """Move every vertex of ``U(c_j) | ... | U(c_r)`` right by ``s``."""
    if s == 0:
        return
    moved: set[str] = set()
    for c in frontier.cycle[j:]:
        for x in frontier.under(c):
            if x not in moved:
                moved.add(x)
                coords[x][0] += s


def locate_group(
    frontier: Frontier, coords: Mapping[str, list[int]], group: tuple[str, ...], p: int, q: int
) -> list[list[int]]:
    """Positions of the new vertices from their first and last contact."""
    cp, cq = frontier.cycle[p], frontier.cycle[q]
    xp, yp = coords[cp]
    xq, yq = coords[cq]
    size = len(group)
    if frontier.pending[cp] == 0:
        x0, y0 = xp, yq + xq - xp - size + 1
    else:
        x0, y0 = xp + 1, yq + xq - xp - size
    out = [[x0, y0]]
    if size == 2:
        out.append([x0 + 1, y0])
    return out


def _collinear(a, b, c) -> bool:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]) == 0


def repair_degeneracies(
    frontier: Frontier,
    coords: dict[str, list[int]],
    group: tuple[str, ...],
    p: int,
    q: int,
    k: int,
    m: int,
    counts: dict[str, int],
    limit: int,
) -> None:
    """Apply the four unit-shift repairs until none of them fires."""
    cyc = frontier.cycle
    r = len(cyc) - 1
    for _ in range(limit):
        fired = False
        if len(group) == 1:
            z0 = group[0]
            if p + 2 <= r and coords[z0][0] == coords[cyc[p + 1]][0] == coords[cyc[p + 2]][0]:
                shift_right(frontier, coords, p + 1, 1)
                coords[z0] = locate_group(frontier, coords, group, p, q)[0]
                counts["d1"] += 1
                fired = True
            if (
                k < m
                and q < r
                and frontier.pending[cyc[q]] == 0
                and _collinear(coords[z0], coords[cyc[q]], coords[cyc[q + 1]])
            ):
                shift_right(frontier, coords, q + 1, 1)
                counts["d2"] += 1
                fired = True
        else:
            z0, z1 = group
            if coords[z0][1] == coords[z1][1] == coords[cyc[p]][1]:
                shift_right(frontier, coords, q, 1)
                coords[z0], coords[z1] = locate_group(frontier, coords, group, p, q)
                counts["d3"] += 1
                fired = True
            if (
                k < m
                and q < r
                and frontier.pending[cyc[q]] == 0
                and _collinear(coords[z1], coords[cyc[q]], coords[cyc[q + 1]])
            ):
                shift_right(frontier, coords, q + 1, 1)
                counts["d4"] += 1
                fired = True
        if not fired:
            return
    raise RepairDivergence(f"degeneracy repairs did not settle at step {k}", k=k)


def _contacts(frontier: Frontier, rotation: Mapping[str, tuple[str, ...]], group: tuple[str, ...]) -> tuple[tuple[str, ...], int, int]:
    where = {c: i for i, c in enumerate(frontier.cycle)}
    if len(group) == 1:
        hits = sorted(where[y] for y in rotation[group[0]] if y in where)
        if len(hits) < 2:
            raise BadGroupShape("singleton needs two placed neighbours", group=list(group))
        return group, hits[0], hits[-1]
    a, b = group
    ha = [where[y] for y in rotation[a] if y in where]
    hb = [where[y] for y in rotation[b] if y in where]
    if len(ha) != 1 or len(hb) != 1 or abs(ha[0] - hb[0]) != 1:
        raise BadGroupShape("pair must sit on one frontier edge", group=list(group))
    if ha[0] > hb[0]:
        a, b, ha, hb = b, a, hb, ha
    return (a, b), ha[0], hb[0]


def place_reference(
    q: QuadGraph,
    labeling: CanonicalLabeling,
    trace: list | None = None,
    on_step: Callable[[int, dict[str, list[int]], dict], None] | None = None,
) -> tuple[dict[str, list[int]], dict[str, int]]:
    """Run the placement loop with explicit shifting; returns raw coordinates.

    ``on_step(k, coords, snapshot)`` runs after every step, before finalisation.
    """
    frontier, coords = init_first_quad(q, labeling)
    rotation = q.graph.rotation
    m = labeling.m
    counts = dict.fromkeys(DEGENERACY_TYPES, 0)
    if trace is not None:
        trace.append(frontier.snapshot(coords, 2, m))
    for k in range(3, m + 1):
        group, p, qq = _contacts(frontier, rotation, labeling.groups[k - 1])
        for z in group:
            for y in rotation[z]:
                frontier.pending[y] -= 1
        update_under(frontier, coords, p, qq, group)
        shift_right(frontier, coords, qq, len(group))
        for z, xy in zip(group, locate_group(frontier, coords, group, p, qq)):
            coords[z] = xy
        repair_degeneracies(frontier, coords, group, p, qq, k, m, counts, q.n)
        frontier.cycle[p + 1 : qq] = list(group)
        if trace is not None or on_step is not None:
            snap = frontier.snapshot(coords, k, m)
            if trace is not None:
                trace.append(snap)
            if on_step is not None:
                on_step(k, coords, snap)
    return coords, counts


# ------------------------------------------------------------- finalisation

def finalize(
    q: QuadGraph,
    coords: Mapping[str, Any],
    counts: Mapping[str, int],
) -> GridDrawing:
    """Make the outer quad strictly concave and route the bent edge.

    Before this step the outer face is the right isosceles triangle
    ``u, v, w'`` with ``w`` inside the hypotenuse.  ``v`` moves one unit right
    and the bend goes to ``(x(w') - 1, y(w') + 2)``.  That point has x = -1, so
    the whole drawing is then translated one unit right to keep every
    coordinate, the bend included, in ``[0, 2n - 2]``.
    """
    u, v, w, w2 = q.roles()
    xy = {k: [int(c[0]), int(c[1])] for k, c in coords.items()}
    width = xy[v][0]
    if not (
        xy[u] == [0, 0]
        and xy[v][1] == 0
        and xy[w2] == [0, width]
        and xy[w][0] + xy[w][1] == width
        and 0 < xy[w][0] < width
    ):
        raise OuterShapeViolation(
            "outer face is not the expected right triangle",
            u=xy[u], v=xy[v], w=xy[w], w_prime=xy[w2],
        )
    xy[v][0] += 1
    for c in xy.values():
        c[0] += 1
    bend = (xy[w2][0] - 1, xy[w2][1] + 2)
    top = max(max(max(c) for c in xy.values()), max(bend))
    if top > _COORD_LIMIT:
        raise CoordinateOverflow("coordinates exceed the signed 64-bit range", max=top)
    return GridDrawing(
        coords={k: (c[0], c[1]) for k, c in xy.items()},
        n=q.n,
        bend_edge=(u, w),
        bend_point=bend,
        degeneracies=dict(counts),
        outer_quad=q.outer_quad,
        bend_on=q.bend_on,
    )


def embed(
    q: QuadGraph,
    labeling: CanonicalLabeling,
    engine: Engine = "offset",
    trace: list | None = None,
    debug: bool = False,
) -> GridDrawing:
    """Full placement: first quad, every later group, then finalisation.

    ``trace``, when given, receives one frontier snapshot per step.  ``debug``
    runs the reference engine and checks planarity, strict convexity of the
    closed faces and the frontier slope rules after every step.
    """
    if debug:
        coords, counts = place_reference(q, labeling, trace, _debug_hook(q))
    elif engine == "reference":
        coords, counts = place_reference(q, labeling, trace)
    elif engine == "offset":
        from .offset import place_offset

        coords, counts = place_offset(q, labeling, trace)
    else:
        raise ValueError(f"unknown engine {engine!r}")
    return finalize(q, coords, counts)


def _debug_hook(q: QuadGraph) -> Callable[[int, dict[str, list[int]], dict], None]:
    from .verify import check_angles, check_partial

    def hook(k: int, coords: dict[str, list[int]], snap: dict) -> None:
        report = check_partial(q, coords, coords.keys())
        if k < snap["m"]:
            report.extend(check_angles(snap))
        if not report.ok:
            raise InvariantViolation(
                f"step {k} broke a drawing invariant",
                k=k,
                failures=[c.to_json() for c in report.failures()],
            )

    return hook
